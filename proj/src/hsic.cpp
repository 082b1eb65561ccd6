#include "ism/hsic.hpp"

#include "ism/linalg.hpp"

namespace ism {

double empirical_hsic(const SymmetricMatrix& k_x, const SymmetricMatrix& k_y) {
  const Index n = k_x.size();
  if (k_y.size() != n) throw std::invalid_argument("empirical_hsic: size mismatch");
  if (n < 2) throw std::invalid_argument("empirical_hsic: need n >= 2");
  const Matrix centered = double_center(k_y.values);
  const double trace = k_x.values.cwiseProduct(centered).sum();
  const double nm1 = static_cast<double>(n - 1);
  return trace / (nm1 * nm1);
}

double objective_cost(const SymmetricMatrix& gamma, const SymmetricMatrix& k_xw) {
  if (gamma.size() != k_xw.size()) throw std::invalid_argument("objective_cost: size mismatch");
  return -gamma.values.cwiseProduct(k_xw.values).sum();
}

namespace {

// beta_ij = a^T W W^T b for every pair, as a matrix.
Matrix beta_matrix(const KernelSpec& spec, const DataMatrix& x, const Matrix& w) {
  const Matrix xw = x.values * w;
  if (uses_pair_difference(spec.kind)) {
    const Vector sq = xw.rowwise().squaredNorm();
    Matrix d2 = sq.replicate(1, xw.rows());
    d2 += sq.transpose().replicate(xw.rows(), 1);
    d2.noalias() -= 2.0 * xw * xw.transpose();
    return d2.cwiseMax(0.0);
  }
  return xw * xw.transpose();
}

Matrix fprime_matrix(const KernelSpec& spec, const Matrix& beta) {
  const Index n = beta.rows();
  Matrix fp(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) fp(i, j) = kernel_fprime(spec, beta(i, j), i, j);
  return fp;
}

}  // namespace

Matrix lagrangian_gradient(const KernelSpec& spec, const DataMatrix& x,
                           const SymmetricMatrix& gamma, const Matrix& w,
                           const Vector& lambda) {
  if (gamma.size() != x.n())
    throw std::invalid_argument("lagrangian_gradient: gamma size must match sample count");
  if (w.rows() != x.d())
    throw std::invalid_argument("lagrangian_gradient: projection rows must match feature count");
  if (lambda.size() != w.cols())
    throw std::invalid_argument("lagrangian_gradient: lambda length must match q");
  validate_kernel(spec, x.n());

  // -sum_ij F_ij A_ij W collapses to -2 X^T F X W for (x_i, x_j) pairs and
  // -4 X^T (D_F - F) X W for difference pairs, with F = Gamma o f'(beta).
  const Matrix f = gamma.values.cwiseProduct(fprime_matrix(spec, beta_matrix(spec, x, w)));
  Matrix core;
  if (uses_pair_difference(spec.kind)) {
    const Vector deg = f.rowwise().sum();
    Matrix lap = (-f).eval();
    lap.diagonal() += deg;
    core.noalias() = -4.0 * (x.values.transpose() * (lap * x.values));
  } else {
    core.noalias() = -2.0 * (x.values.transpose() * (f * x.values));
  }
  return core * w - 2.0 * w * lambda.asDiagonal().toDenseMatrix();
}

double lagrangian_value(const KernelSpec& spec, const DataMatrix& x,
                        const SymmetricMatrix& gamma, const Matrix& w, const Vector& lambda) {
  validate_kernel(spec, x.n());
  const Matrix beta = beta_matrix(spec, x, w);
  double obj = 0.0;
  for (Index i = 0; i < x.n(); ++i)
    for (Index j = 0; j < x.n(); ++j)
      obj -= gamma.values(i, j) * kernel_f(spec, beta(i, j), i, j);
  const Matrix constraint = w.transpose() * w - Matrix::Identity(w.cols(), w.cols());
  return obj - (lambda.asDiagonal().toDenseMatrix() * constraint).trace();
}

}  // namespace ism
