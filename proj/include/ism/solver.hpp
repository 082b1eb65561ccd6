#pragma once

#include "ism/kernels.hpp"
#include "ism/types.hpp"

#include <optional>
#include <vector>

namespace ism {

inline constexpr Index kAutoQ = 0;

struct SolveOptions {
  int max_iterations = 50;
  double eig_tolerance = 1e-6;              // relative change of the stored eigenvalues
  double principal_angle_tolerance = 1e-4;  // radians
  double stationarity_tolerance = 1e-8;     // KKT residual a converged result certifies
  Index q = kAutoQ;                         // kAutoQ selects q at the maximum eigengap
  bool confirm_with_principal_angle = true;
};

enum class ConvergenceReason { eigenvalue, principal_angle, gradient, max_iter };

std::string to_string(ConvergenceReason reason);

struct SolveResult {
  Projection projection;
  std::vector<double> cost_trace;  // objective after initialization and each update
  int iterations = 0;
  bool converged = false;
  ConvergenceReason reason = ConvergenceReason::max_iter;
  double stationarity_residual = 0.0;   // ||Phi W - W Lambda||_F / max(||Phi||_F, 1) at solution
  Vector spectrum;                      // full spectrum of Phi at the solution
  double eigengap = 0.0;                // lambda_{q+1} - lambda_q (0 when q = d)
  double second_order_gap = 0.0;        // min of unchosen eigenvalues minus max of chosen
  bool second_order_hint = false;       // gap > 0
  Index rank_estimate = 0;              // |lambda| > 1e-10 * max|lambda|
  bool degenerate_gap = false;          // tie at the selection boundary seen during iteration
  bool non_improving = false;           // final cost above initial cost
  std::optional<double> exit_gradient_norm;  // tangent gradient norm (baseline optimizer)
};

/// Columns = q eigenvectors of ascending eigenvalues; flags a degenerate
/// eigengap when lambda_q and lambda_{q+1} tie within tolerance.
Projection select_minimizing_eigenvectors(const PhiMatrix& phi, Index q);

/// q at the maximum eigengap, ties broken toward smaller q.
Index auto_select_q(const Vector& ascending_eigenvalues);

/// Largest principal angle between the two column spans,
/// arccos of the smallest singular value of Wa^T Wb clamped to [0, 1].
double principal_angle(const Matrix& w_a, const Matrix& w_b);
double principal_angle(const Projection& a, const Projection& b);

/// ||Phi W - W diag(W^T Phi W)||_F / max(||Phi||_F, 1); zero iff the columns
/// of W are eigenvectors of Phi.
double check_stationarity(const PhiMatrix& phi, const Matrix& w);
double check_stationarity(const PhiMatrix& phi, const Projection& w);

struct SecondOrderReport {
  double gap = 0.0;
  bool satisfied_hint = false;
};

/// Eigengap at q and whether it is positive. A positive gap is the cheap
/// surrogate for the curvature condition, not a certificate.
SecondOrderReport second_order_report(const Vector& ascending_eigenvalues, Index q);

/// Fixed-point iteration on the update matrix: initialize from the
/// second-order expansion, then alternate eigendecomposition and update until
/// the eigenvalues settle, the subspace stops rotating, and the first-order
/// residual is certified.
SolveResult ism_solve(const KernelSpec& spec, const DataMatrix& x, const SymmetricMatrix& gamma,
                      const SolveOptions& opts = {});

}  // namespace ism
