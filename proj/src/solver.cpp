#include "ism/solver.hpp"

#include "ism/hsic.hpp"
#include "ism/linalg.hpp"

#include <Eigen/SVD>

#include <cmath>

namespace ism {

std::string to_string(ConvergenceReason reason) {
  switch (reason) {
    case ConvergenceReason::eigenvalue: return "eigenvalue";
    case ConvergenceReason::principal_angle: return "principal_angle";
    case ConvergenceReason::gradient: return "gradient";
    case ConvergenceReason::max_iter: return "max_iter";
  }
  return "unknown";
}

Projection select_minimizing_eigenvectors(const PhiMatrix& phi, Index q) {
  if (q < 1 || q > phi.size())
    throw std::invalid_argument("select_minimizing_eigenvectors: need 1 <= q <= d");
  const EigResult eig = sorted_symmetric_eig(phi);
  bool degenerate = false;
  if (q < phi.size()) {
    const double scale = std::max(1.0, eig.eigenvalues.cwiseAbs().maxCoeff());
    degenerate = std::abs(eig.eigenvalues[q] - eig.eigenvalues[q - 1]) <= 1e-10 * scale;
  }
  return Projection(eig.eigenvectors.leftCols(q), eig.eigenvalues.head(q), degenerate);
}

Index auto_select_q(const Vector& vals) {
  if (vals.size() < 2) throw std::invalid_argument("auto_select_q: need at least 2 eigenvalues");
  Index best_q = 1;
  double best_gap = vals[1] - vals[0];
  for (Index q = 2; q < vals.size(); ++q) {
    const double gap = vals[q] - vals[q - 1];
    if (gap > best_gap) {
      best_gap = gap;
      best_q = q;
    }
  }
  return best_q;
}

double principal_angle(const Matrix& w_a, const Matrix& w_b) {
  if (w_a.rows() != w_b.rows() || w_a.cols() != w_b.cols())
    throw std::invalid_argument("principal_angle: shape mismatch");
  const Matrix product = w_a.transpose() * w_b;
  Eigen::JacobiSVD<Matrix> svd(product);
  const double sigma_min = svd.singularValues().minCoeff();
  return std::acos(std::clamp(sigma_min, 0.0, 1.0));
}

double principal_angle(const Projection& a, const Projection& b) {
  return principal_angle(a.basis, b.basis);
}

double check_stationarity(const PhiMatrix& phi, const Matrix& w) {
  const Matrix phi_w = phi.values * w;
  const Vector rayleigh = (w.transpose() * phi_w).diagonal();
  const double num = (phi_w - w * rayleigh.asDiagonal()).norm();
  return num / std::max(phi.values.norm(), 1.0);
}

double check_stationarity(const PhiMatrix& phi, const Projection& w) {
  return check_stationarity(phi, w.basis);
}

SecondOrderReport second_order_report(const Vector& vals, Index q) {
  if (q < 1 || q >= vals.size())
    throw std::invalid_argument("second_order_report: need 1 <= q < d");
  const double gap = vals[q] - vals[q - 1];
  return {gap, gap > 0.0};
}

namespace {

double eigenvalue_change(const Vector& prev, const Vector& cur) {
  double worst = 0.0;
  for (Index i = 0; i < prev.size(); ++i) {
    const double delta = std::abs(cur[i] - prev[i]);
    const double change = std::abs(prev[i]) > 1e-9 ? delta / std::abs(prev[i]) : delta;
    worst = std::max(worst, change);
  }
  return worst;
}

Index rank_estimate(const Vector& vals) {
  const double cut = 1e-10 * vals.cwiseAbs().maxCoeff();
  return (vals.cwiseAbs().array() > cut).count();
}

PhiMatrix phi_at(const KernelSpec& spec, const DataMatrix& x, const SymmetricMatrix& gamma,
                 const Matrix& w, int iteration) {
  try {
    return compute_phi(spec, x, gamma, w);
  } catch (const std::invalid_argument& e) {
    // Arguments were validated up front; a failure here means the kernel
    // produced non-finite values.
    throw numeric_error("ism_solve: non-finite update matrix at iteration " +
                        std::to_string(iteration) + " (" + e.what() + ")");
  }
}

}  // namespace

SolveResult ism_solve(const KernelSpec& spec, const DataMatrix& x, const SymmetricMatrix& gamma,
                      const SolveOptions& opts) {
  if (gamma.size() != x.n())
    throw std::invalid_argument("ism_solve: gamma size must match sample count");
  if (opts.max_iterations < 1) throw std::invalid_argument("ism_solve: max_iterations >= 1");
  if (opts.eig_tolerance <= 0.0 || opts.principal_angle_tolerance <= 0.0 ||
      opts.stationarity_tolerance <= 0.0)
    throw std::invalid_argument("ism_solve: tolerances must be > 0");
  if (opts.q != kAutoQ && (opts.q < 1 || opts.q > x.d()))
    throw std::invalid_argument("ism_solve: q out of range");
  validate_kernel(spec, x.n());

  const PhiMatrix phi0 = compute_phi0(spec, x, gamma);
  const EigResult init = sorted_symmetric_eig(phi0);
  const Index q = opts.q == kAutoQ
                      ? (x.d() == 1 ? 1 : auto_select_q(init.eigenvalues))
                      : opts.q;

  SolveResult result;
  Matrix w = init.eigenvectors.leftCols(q);
  Vector lambda = init.eigenvalues.head(q);
  result.cost_trace.push_back(objective_cost(gamma, kernel_matrix(spec, x, w)));

  double last_change = std::numeric_limits<double>::infinity();
  double last_angle = std::numeric_limits<double>::infinity();
  PhiMatrix phi_current;

  for (int k = 1; k <= opts.max_iterations; ++k) {
    phi_current = phi_at(spec, x, gamma, w, k);
    const double residual = check_stationarity(phi_current, w);

    const bool eig_settled = last_change <= opts.eig_tolerance;
    const bool angle_settled =
        !opts.confirm_with_principal_angle || last_angle <= opts.principal_angle_tolerance;
    if (eig_settled && angle_settled && residual <= opts.stationarity_tolerance) {
      result.converged = true;
      result.reason = opts.confirm_with_principal_angle ? ConvergenceReason::principal_angle
                                                        : ConvergenceReason::eigenvalue;
      result.stationarity_residual = residual;
      break;
    }

    const Projection next = select_minimizing_eigenvectors(phi_current, q);
    result.degenerate_gap = result.degenerate_gap || next.degenerate_gap;
    result.cost_trace.push_back(objective_cost(gamma, kernel_matrix(spec, x, next.basis)));
    last_change = eigenvalue_change(lambda, next.eigenvalues);
    last_angle = principal_angle(w, next.basis);
    w = next.basis;
    lambda = next.eigenvalues;
    result.iterations = k;
  }

  if (!result.converged) {
    phi_current = phi_at(spec, x, gamma, w, result.iterations);
    result.stationarity_residual = check_stationarity(phi_current, w);
    result.reason = ConvergenceReason::max_iter;
  }

  result.projection = Projection(w, lambda);
  result.spectrum = sorted_symmetric_eig(phi_current).eigenvalues;
  result.rank_estimate = rank_estimate(result.spectrum);
  if (q < x.d()) {
    const SecondOrderReport report = second_order_report(result.spectrum, q);
    result.eigengap = report.gap;
    result.second_order_gap = report.gap;
    result.second_order_hint = report.satisfied_hint;
  }
  result.non_improving =
      result.cost_trace.back() >
      result.cost_trace.front() + 1e-12 * std::max(1.0, std::abs(result.cost_trace.front()));
  return result;
}

}  // namespace ism
