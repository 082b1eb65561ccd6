#include "ism/linalg.hpp"

#include <Eigen/Eigenvalues>

namespace ism {

SymmetricMatrix centering_matrix(Index n) {
  if (n < 1) throw std::invalid_argument("centering_matrix: n must be >= 1");
  Matrix h = Matrix::Identity(n, n);
  h.array() -= 1.0 / static_cast<double>(n);
  return SymmetricMatrix(h);
}

Vector degree_vector(const SymmetricMatrix& m) { return m.values.rowwise().sum(); }

Matrix degree_matrix(const SymmetricMatrix& m) {
  return degree_vector(m).asDiagonal();
}

EigResult sorted_symmetric_eig(const SymmetricMatrix& m) {
  if (!m.values.allFinite())
    throw numeric_error("sorted_symmetric_eig: non-finite entries");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m.values);
  if (solver.info() != Eigen::Success)
    throw numeric_error("sorted_symmetric_eig: eigendecomposition failed");

  EigResult out{solver.eigenvalues(), solver.eigenvectors()};
  // Fix each eigenvector's sign: largest-magnitude entry positive, first
  // index winning ties, so repeated calls are bit-identical.
  for (Index j = 0; j < out.eigenvectors.cols(); ++j) {
    Index arg = 0;
    double best = 0.0;
    for (Index i = 0; i < out.eigenvectors.rows(); ++i) {
      const double a = std::abs(out.eigenvectors(i, j));
      if (a > best) {
        best = a;
        arg = i;
      }
    }
    if (out.eigenvectors(arg, j) < 0.0) out.eigenvectors.col(j) = -out.eigenvectors.col(j);
  }
  return out;
}

Matrix orthonormal_columns(const Matrix& m) {
  Eigen::HouseholderQR<Matrix> qr(m);
  Matrix q = qr.householderQ() * Matrix::Identity(m.rows(), m.cols());
  const Matrix r = qr.matrixQR().topRows(m.cols());
  for (Index j = 0; j < m.cols(); ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

Matrix double_center(const Matrix& m) {
  const Vector row_mean = m.rowwise().mean();
  const Vector col_mean = m.colwise().mean();
  const double total = m.mean();
  Matrix out = m;
  out.colwise() -= row_mean;
  out.rowwise() -= col_mean.transpose();
  out.array() += total;
  return out;
}

}  // namespace ism
