#include "ism/baseline.hpp"

#include "ism/hsic.hpp"
#include "ism/linalg.hpp"
#include "ism/rng.hpp"

#include <cmath>
#include <limits>

namespace ism {

namespace {

struct RestartOutcome {
  Matrix w;
  std::vector<double> cost_trace;
  int iterations = 0;
  bool gradient_converged = false;
  double exit_gradient_norm = 0.0;
};

Matrix random_orthonormal(Rng& rng, Index d, Index q) {
  Matrix m(d, q);
  for (Index j = 0; j < q; ++j)
    for (Index i = 0; i < d; ++i) m(i, j) = rng.normal();
  return orthonormal_columns(m);
}

// Tangent component of the Euclidean gradient at a feasible point.
double tangent_norm(const Matrix& w, const Matrix& grad) {
  const Matrix wg = w.transpose() * grad;
  return (grad - w * (0.5 * (wg + wg.transpose()))).norm();
}

RestartOutcome run_restart(const KernelSpec& spec, const DataMatrix& x,
                           const SymmetricMatrix& gamma, Index q, const BaselineOptions& opts,
                           int restart_index) {
  Rng rng(opts.seed + static_cast<std::uint64_t>(restart_index) * 0x9E3779B97F4A7C15ull);
  RestartOutcome out;
  out.w = random_orthonormal(rng, x.d(), q);

  const Vector zero_lambda = Vector::Zero(q);
  auto cost_at = [&](const Matrix& w) {
    const double c = objective_cost(gamma, kernel_matrix(spec, x, w));
    if (!std::isfinite(c))
      throw numeric_error("projected_gradient_solve: non-finite cost in restart " +
                          std::to_string(restart_index));
    return c;
  };

  double cost = cost_at(out.w);
  out.cost_trace.push_back(cost);

  for (int t = 1; t <= opts.max_iterations; ++t) {
    const Matrix grad = lagrangian_gradient(spec, x, gamma, out.w, zero_lambda);
    out.exit_gradient_norm = tangent_norm(out.w, grad);
    if (out.exit_gradient_norm <= opts.gradient_tolerance) {
      out.gradient_converged = true;
      break;
    }

    // Halve the step until the projected point decreases the cost.
    double step = opts.step_size;
    bool accepted = false;
    while (step > 1e-12) {
      const Matrix candidate = orthonormal_columns(out.w - step * grad);
      const double candidate_cost = cost_at(candidate);
      if (candidate_cost < cost) {
        out.w = candidate;
        cost = candidate_cost;
        out.cost_trace.push_back(cost);
        out.iterations = t;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // no descent direction at line-search resolution
  }
  return out;
}

}  // namespace

SolveResult projected_gradient_solve(const KernelSpec& spec, const DataMatrix& x,
                                     const SymmetricMatrix& gamma, Index q,
                                     const BaselineOptions& opts) {
  if (!(opts.step_size > 0.0))
    throw std::invalid_argument("projected_gradient_solve: step_size must be > 0");
  if (opts.restarts < 1)
    throw std::invalid_argument("projected_gradient_solve: restarts must be >= 1");
  if (q < 1 || q > x.d()) throw std::invalid_argument("projected_gradient_solve: q out of range");
  if (gamma.size() != x.n())
    throw std::invalid_argument("projected_gradient_solve: gamma size must match sample count");
  validate_kernel(spec, x.n());

  RestartOutcome best;
  double best_cost = std::numeric_limits<double>::infinity();
  for (int r = 0; r < opts.restarts; ++r) {
    RestartOutcome outcome = run_restart(spec, x, gamma, q, opts, r);
    const double cost = outcome.cost_trace.back();
    if (cost < best_cost) {
      best_cost = cost;
      best = std::move(outcome);
    }
  }

  // Canonical basis for the solution span: rotate so W^T Phi W is diagonal
  // with ascending entries, matching the spectral solver's reporting.
  const PhiMatrix phi = compute_phi(spec, x, gamma, best.w);
  const Matrix small = best.w.transpose() * phi.values * best.w;
  const EigResult rotation = sorted_symmetric_eig(SymmetricMatrix(small));
  const Matrix w = best.w * rotation.eigenvectors;

  SolveResult result;
  result.projection = Projection(orthonormal_columns(w), rotation.eigenvalues);
  result.cost_trace = std::move(best.cost_trace);
  result.iterations = best.iterations;
  result.converged = best.gradient_converged;
  result.reason =
      best.gradient_converged ? ConvergenceReason::gradient : ConvergenceReason::max_iter;
  result.exit_gradient_norm = best.exit_gradient_norm;
  result.stationarity_residual = check_stationarity(phi, result.projection.basis);
  result.spectrum = sorted_symmetric_eig(phi).eigenvalues;
  if (q < x.d()) {
    const SecondOrderReport report = second_order_report(result.spectrum, q);
    result.eigengap = report.gap;
    result.second_order_gap = report.gap;
    result.second_order_hint = report.satisfied_hint;
  }
  result.non_improving = false;  // line search only accepts descent steps
  return result;
}

}  // namespace ism
