#pragma once

#include "ism/kernels.hpp"
#include "ism/types.hpp"

namespace ism {

/// Empirical dependence between two precomputed kernel matrices:
/// Tr(K_X H K_Y H) / (n-1)^2.
double empirical_hsic(const SymmetricMatrix& k_x, const SymmetricMatrix& k_y);

/// Master objective value -Tr(Gamma K) = -sum_ij Gamma_ij K_ij.
/// Raw trace, no normalization: the scale the solver reports.
double objective_cost(const SymmetricMatrix& gamma, const SymmetricMatrix& k_xw);

/// Gradient of the Lagrangian
///   L(W, Lambda) = -sum_ij Gamma_ij f(a^T W W^T b) - Tr(Lambda (W^T W - I))
/// with respect to W, true scalars throughout (nothing scale-dropped):
///   -sum_ij Gamma_ij f'(beta_ij) (b a^T + a b^T) W - 2 W Lambda.
Matrix lagrangian_gradient(const KernelSpec& spec, const DataMatrix& x,
                           const SymmetricMatrix& gamma, const Matrix& w,
                           const Vector& lambda);

/// Lagrangian value itself; the finite-difference surface the gradient is
/// tested against.
double lagrangian_value(const KernelSpec& spec, const DataMatrix& x,
                        const SymmetricMatrix& gamma, const Matrix& w, const Vector& lambda);

}  // namespace ism
