#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace ism {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Thrown when a numeric computation produces non-finite values or
/// otherwise cannot continue (carries context such as the iteration index).
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown for degenerate inputs: identical points where a bandwidth is
/// needed, zero-degree rows in an affinity graph, and the like.
class degenerate_data_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown by the CSV reader; message carries the 1-based line number.
class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sample matrix, one row per sample.
struct DataMatrix {
  Matrix values;  // n x d

  DataMatrix() = default;
  explicit DataMatrix(Matrix m) : values(std::move(m)) {
    if (values.rows() < 2) throw std::invalid_argument("DataMatrix: need at least 2 samples");
    if (values.cols() < 1) throw std::invalid_argument("DataMatrix: need at least 1 feature");
    if (!values.allFinite()) throw std::invalid_argument("DataMatrix: non-finite entries");
  }

  Index n() const { return values.rows(); }
  Index d() const { return values.cols(); }
};

/// Square symmetric matrix. Construction symmetrizes (M + M^T)/2 and rejects
/// inputs whose asymmetry exceeds the repair gate.
struct SymmetricMatrix {
  Matrix values;

  SymmetricMatrix() = default;
  explicit SymmetricMatrix(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("SymmetricMatrix: not square");
    if (!m.allFinite()) throw std::invalid_argument("SymmetricMatrix: non-finite entries");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * scale)
      throw std::invalid_argument("SymmetricMatrix: asymmetry " + std::to_string(asym) +
                                  " exceeds repair tolerance");
    values = 0.5 * (m + m.transpose());
  }

  Index size() const { return values.rows(); }
};

/// d x d update matrix whose minimizing eigenvectors drive the solver.
using PhiMatrix = SymmetricMatrix;

/// Orthonormal basis of the learned subspace together with the eigenvalues
/// (ascending) it was selected from.
struct Projection {
  Matrix basis;        // d x q, orthonormal columns
  Vector eigenvalues;  // length q, ascending
  bool degenerate_gap = false;  // lambda_q == lambda_{q+1} at selection time

  Projection() = default;
  Projection(Matrix w, Vector evals, bool degenerate = false)
      : basis(std::move(w)), eigenvalues(std::move(evals)), degenerate_gap(degenerate) {
    if (basis.cols() > basis.rows()) throw std::invalid_argument("Projection: q > d");
    if (eigenvalues.size() != basis.cols())
      throw std::invalid_argument("Projection: eigenvalue count mismatch");
    const Matrix gram = basis.transpose() * basis;
    const double err =
        (gram - Matrix::Identity(basis.cols(), basis.cols())).cwiseAbs().maxCoeff();
    if (err > 1e-10)
      throw std::invalid_argument("Projection: columns not orthonormal (err " +
                                  std::to_string(err) + ")");
    for (Index i = 0; i + 1 < eigenvalues.size(); ++i)
      if (eigenvalues[i] > eigenvalues[i + 1])
        throw std::invalid_argument("Projection: eigenvalues not ascending");
  }

  Index d() const { return basis.rows(); }
  Index q() const { return basis.cols(); }
};

}  // namespace ism
