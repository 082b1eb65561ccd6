#pragma once

#include "ism/solver.hpp"

#include <cstdint>

namespace ism {

struct BaselineOptions {
  double step_size = 1e-3;
  int max_iterations = 2000;
  double gradient_tolerance = 1e-6;  // tangent gradient norm at which a restart stops
  int restarts = 5;
  std::uint64_t seed = 0;
};

/// Projected gradient descent on the same objective: Euclidean gradient,
/// backtracking line search, feasibility restored by QR after every step.
/// Independent of the spectral solver; used as a correctness oracle and cost
/// baseline, not a performance contender. Returns the best of the restarts.
SolveResult projected_gradient_solve(const KernelSpec& spec, const DataMatrix& x,
                                     const SymmetricMatrix& gamma, Index q,
                                     const BaselineOptions& opts = {});

}  // namespace ism
