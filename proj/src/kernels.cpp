#include "ism/kernels.hpp"

#include "ism/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace ism {

std::string to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::linear: return "linear";
    case KernelKind::squared: return "squared";
    case KernelKind::polynomial: return "polynomial";
    case KernelKind::gaussian: return "gaussian";
    case KernelKind::multiquadratic: return "multiquadratic";
    case KernelKind::rbf_relative: return "rbf-relative";
  }
  return "unknown";
}

KernelKind kernel_kind_from_string(const std::string& name) {
  if (name == "linear") return KernelKind::linear;
  if (name == "squared") return KernelKind::squared;
  if (name == "polynomial" || name == "poly") return KernelKind::polynomial;
  if (name == "gaussian") return KernelKind::gaussian;
  if (name == "multiquadratic") return KernelKind::multiquadratic;
  if (name == "rbf-relative" || name == "rbf_relative") return KernelKind::rbf_relative;
  throw std::invalid_argument("unknown kernel: " + name);
}

void validate_kernel(const KernelSpec& spec, Index n) {
  switch (spec.kind) {
    case KernelKind::gaussian:
      if (!(spec.sigma > 0.0)) throw std::invalid_argument("gaussian kernel: sigma must be > 0");
      break;
    case KernelKind::polynomial:
      if (spec.degree < 1) throw std::invalid_argument("polynomial kernel: degree must be >= 1");
      break;
    case KernelKind::multiquadratic:
      if (spec.mq_offset == 0.0)
        throw std::invalid_argument("multiquadratic kernel: offset c must be nonzero");
      break;
    case KernelKind::rbf_relative:
      if (spec.per_sample_sigma.size() != n)
        throw std::invalid_argument("rbf-relative kernel: need one sigma per sample");
      if ((spec.per_sample_sigma.array() <= 0.0).any())
        throw std::invalid_argument("rbf-relative kernel: sigmas must be > 0");
      break;
    default:
      break;
  }
}

bool uses_pair_difference(KernelKind kind) {
  switch (kind) {
    case KernelKind::linear:
    case KernelKind::polynomial:
      return false;
    default:
      return true;
  }
}

double kernel_f(const KernelSpec& spec, double beta, Index i, Index j) {
  switch (spec.kind) {
    case KernelKind::linear:
    case KernelKind::squared:
      return beta;
    case KernelKind::polynomial:
      return std::pow(beta + spec.offset, spec.degree);
    case KernelKind::gaussian:
      return std::exp(-beta / (2.0 * spec.sigma * spec.sigma));
    case KernelKind::multiquadratic:
      return std::sqrt(beta + spec.mq_offset * spec.mq_offset);
    case KernelKind::rbf_relative:
      return std::exp(-beta / (2.0 * spec.per_sample_sigma[i] * spec.per_sample_sigma[j]));
  }
  return 0.0;
}

double kernel_fprime(const KernelSpec& spec, double beta, Index i, Index j) {
  switch (spec.kind) {
    case KernelKind::linear:
    case KernelKind::squared:
      return 1.0;
    case KernelKind::polynomial:
      return spec.degree * std::pow(beta + spec.offset, spec.degree - 1);
    case KernelKind::gaussian: {
      const double two_s2 = 2.0 * spec.sigma * spec.sigma;
      return -std::exp(-beta / two_s2) / two_s2;
    }
    case KernelKind::multiquadratic:
      return 0.5 / std::sqrt(beta + spec.mq_offset * spec.mq_offset);
    case KernelKind::rbf_relative: {
      const double two_ss = 2.0 * spec.per_sample_sigma[i] * spec.per_sample_sigma[j];
      return -std::exp(-beta / two_ss) / two_ss;
    }
  }
  return 0.0;
}

namespace {

// Squared Euclidean distances of the rows of P, floored at zero.
Matrix squared_distances(const Matrix& p) {
  const Vector sq = p.rowwise().squaredNorm();
  Matrix d2 = sq.replicate(1, p.rows());
  d2 += sq.transpose().replicate(p.rows(), 1);
  d2.noalias() -= 2.0 * p * p.transpose();
  return d2.cwiseMax(0.0);
}

}  // namespace

SymmetricMatrix kernel_matrix(const KernelSpec& spec, const DataMatrix& x, const Matrix& w) {
  if (w.rows() != x.d())
    throw std::invalid_argument("kernel_matrix: projection rows must match feature count");
  validate_kernel(spec, x.n());
  const Matrix xw = x.values * w;
  const Index n = x.n();

  Matrix k;
  switch (spec.kind) {
    case KernelKind::linear:
      k.noalias() = xw * xw.transpose();
      break;
    case KernelKind::polynomial:
      k = ((xw * xw.transpose()).array() + spec.offset).pow(spec.degree);
      break;
    case KernelKind::squared:
      k = squared_distances(xw);
      break;
    case KernelKind::gaussian:
      k = (-squared_distances(xw) / (2.0 * spec.sigma * spec.sigma)).array().exp();
      break;
    case KernelKind::multiquadratic:
      k = (squared_distances(xw).array() + spec.mq_offset * spec.mq_offset).sqrt();
      break;
    case KernelKind::rbf_relative: {
      const Matrix d2 = squared_distances(xw);
      k.resize(n, n);
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j)
          k(i, j) = std::exp(-d2(i, j) /
                             (2.0 * spec.per_sample_sigma[i] * spec.per_sample_sigma[j]));
      break;
    }
  }
  return SymmetricMatrix(0.5 * (k + k.transpose()));
}

double median_sigma(const DataMatrix& x) {
  const Index n = x.n();
  std::vector<double> dists;
  dists.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      dists.push_back((x.values.row(i) - x.values.row(j)).norm());

  const std::size_t m = dists.size();
  auto mid = dists.begin() + m / 2;
  std::nth_element(dists.begin(), mid, dists.end());
  double med = *mid;
  if (m % 2 == 0) {
    // lower middle is the max of the first half
    const double lo = *std::max_element(dists.begin(), mid);
    med = 0.5 * (med + lo);
  }
  if (med <= 0.0) throw degenerate_data_error("median_sigma: median pairwise distance is zero");
  return med;
}

Vector relative_sigmas(const DataMatrix& x, int k) {
  const Index n = x.n();
  if (k < 1 || k >= n)
    throw std::invalid_argument("relative_sigmas: need 1 <= k < n");
  Vector sigmas(n);
  std::vector<double> row(static_cast<std::size_t>(n) - 1);
  for (Index i = 0; i < n; ++i) {
    std::size_t m = 0;
    for (Index j = 0; j < n; ++j)
      if (j != i) row[m++] = (x.values.row(i) - x.values.row(j)).norm();
    std::nth_element(row.begin(), row.begin() + (k - 1), row.end());
    const double s = row[static_cast<std::size_t>(k) - 1];
    if (s <= 0.0)
      throw degenerate_data_error("relative_sigmas: duplicate point gives zero bandwidth at row " +
                                  std::to_string(i));
    sigmas[i] = s;
  }
  return sigmas;
}

namespace {

Matrix gram_form(const DataMatrix& x, const Matrix& psi) {
  return x.values.transpose() * psi * x.values;  // X^T Psi X
}

Matrix laplacian_form(const DataMatrix& x, const Matrix& psi) {
  const Vector deg = psi.rowwise().sum();
  Matrix dpsi = (-psi).eval();
  dpsi.diagonal() += deg;
  return x.values.transpose() * dpsi * x.values;  // X^T (D_Psi - Psi) X
}

Matrix relative_weights(const KernelSpec& spec) {
  const Index n = spec.per_sample_sigma.size();
  Matrix sigma_inv(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      sigma_inv(i, j) = 1.0 / (spec.per_sample_sigma[i] * spec.per_sample_sigma[j]);
  return sigma_inv;
}

}  // namespace

PhiMatrix compute_phi0(const KernelSpec& spec, const DataMatrix& x, const SymmetricMatrix& gamma) {
  if (gamma.size() != x.n())
    throw std::invalid_argument("compute_phi0: gamma size must match sample count");
  validate_kernel(spec, x.n());
  switch (spec.kind) {
    case KernelKind::linear:
    case KernelKind::polynomial:
      return PhiMatrix(-gram_form(x, gamma.values));
    case KernelKind::squared:
    case KernelKind::multiquadratic:
      return PhiMatrix(-laplacian_form(x, gamma.values));
    case KernelKind::gaussian:
      return PhiMatrix(laplacian_form(x, gamma.values));
    case KernelKind::rbf_relative: {
      const Matrix psi = relative_weights(spec).cwiseProduct(gamma.values);
      return PhiMatrix(laplacian_form(x, psi));
    }
  }
  throw std::invalid_argument("compute_phi0: unknown kernel");
}

PhiMatrix compute_phi(const KernelSpec& spec, const DataMatrix& x, const SymmetricMatrix& gamma,
                      const Matrix& w) {
  if (gamma.size() != x.n())
    throw std::invalid_argument("compute_phi: gamma size must match sample count");
  if (w.rows() != x.d())
    throw std::invalid_argument("compute_phi: projection rows must match feature count");
  validate_kernel(spec, x.n());
  switch (spec.kind) {
    case KernelKind::linear:
      return PhiMatrix(-gram_form(x, gamma.values));
    case KernelKind::squared:
      return PhiMatrix(-laplacian_form(x, gamma.values));
    case KernelKind::polynomial: {
      KernelSpec lower = spec;
      lower.degree = spec.degree - 1;
      Matrix k_lower;
      if (lower.degree == 0)
        k_lower = Matrix::Ones(x.n(), x.n());
      else
        k_lower = kernel_matrix(lower, x, w).values;
      return PhiMatrix(-gram_form(x, gamma.values.cwiseProduct(k_lower)));
    }
    case KernelKind::gaussian: {
      const Matrix psi = gamma.values.cwiseProduct(kernel_matrix(spec, x, w).values);
      return PhiMatrix(laplacian_form(x, psi));
    }
    case KernelKind::multiquadratic: {
      const Matrix recip = kernel_matrix(spec, x, w).values.cwiseInverse();
      return PhiMatrix(-laplacian_form(x, gamma.values.cwiseProduct(recip)));
    }
    case KernelKind::rbf_relative: {
      const Matrix psi = relative_weights(spec)
                             .cwiseProduct(gamma.values)
                             .cwiseProduct(kernel_matrix(spec, x, w).values);
      return PhiMatrix(laplacian_form(x, psi));
    }
  }
  throw std::invalid_argument("compute_phi: unknown kernel");
}

PhiMatrix compute_phi_naive(const KernelSpec& spec, const DataMatrix& x,
                            const SymmetricMatrix& gamma, const Matrix& w) {
  if (gamma.size() != x.n())
    throw std::invalid_argument("compute_phi_naive: gamma size must match sample count");
  validate_kernel(spec, x.n());
  const Index n = x.n();
  const Index d = x.d();
  const bool diff = uses_pair_difference(spec.kind);
  Matrix phi = Matrix::Zero(d, d);
  const Matrix wwt = w * w.transpose();
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      Vector a, b;
      if (diff) {
        a = (x.values.row(i) - x.values.row(j)).transpose();
        b = a;
      } else {
        a = x.values.row(i).transpose();
        b = x.values.row(j).transpose();
      }
      const double beta = a.dot(wwt * b);
      const double coeff = -0.5 * gamma.values(i, j) * kernel_fprime(spec, beta, i, j);
      phi.noalias() += coeff * (b * a.transpose() + a * b.transpose());
    }
  }
  return PhiMatrix(phi);
}

}  // namespace ism
