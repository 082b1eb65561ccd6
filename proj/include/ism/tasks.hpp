#pragma once

#include "ism/clustering.hpp"
#include "ism/kernels.hpp"
#include "ism/solver.hpp"
#include "ism/types.hpp"

#include <vector>

namespace ism {

enum class Paradigm { supervised, unsupervised, semi_supervised, alternative_clustering };

std::string to_string(Paradigm p);

struct TaskSpec {
  Paradigm paradigm = Paradigm::supervised;
  int k_clusters = 2;
  double mu = 1.0;                // balance for the semi-supervised / alternative penalty
  int max_outer_iterations = 10;
  std::uint64_t seed = 0;         // clustering seed for the alternating drivers
};

/// Delta kernel on categorical labels: K_ij = 1 iff labels match. Identical
/// to the linear kernel on one-hot encodings.
SymmetricMatrix delta_kernel(const std::vector<int>& labels);

/// Gamma = H K_Y H for a precomputed label kernel.
SymmetricMatrix supervised_gamma_from_kernel(const SymmetricMatrix& k_y);

/// Gamma for supervised reduction from categorical labels (delta kernel).
/// degenerate is set when a single class makes Gamma vanish.
SymmetricMatrix supervised_gamma(const std::vector<int>& labels, bool* degenerate = nullptr);

/// Gamma = Omega + mu * Psi where Omega = D^{-1/2} Y Y^T D^{-1/2} with the
/// degrees D of the kernel frozen at the current projection, and
/// Psi = H K_Yhat H from the expert-score kernel.
SymmetricMatrix semisupervised_gamma(const KernelSpec& spec, const DataMatrix& x,
                                     const Matrix& w_current, const Matrix& y_spectral,
                                     const SymmetricMatrix& k_yhat, double mu);

/// Sign-flipped penalty: Gamma = Omega - mu * Psi. Same inputs as the
/// semi-supervised constructor.
SymmetricMatrix alternative_gamma(const KernelSpec& spec, const DataMatrix& x,
                                  const Matrix& w_current, const Matrix& y_spectral,
                                  const SymmetricMatrix& k_yhat, double mu);

struct AlternatingResult {
  Projection projection;
  Labeling labels;
  SolveResult last_solve;
  std::vector<double> outer_objective_trace;  // one entry per completed (Y, W) round
  int outer_iterations = 0;
  bool label_fixpoint = false;
  bool non_improving = false;  // an outer round increased the objective beyond tolerance
};

/// Alternate spectral clustering of the projected kernel with the spectral
/// solve, Gamma = H Y Y^T H on the orthonormal embedding. Starts from the
/// first q columns of the identity; stops at a label fixpoint or after
/// max_outer_iterations rounds.
AlternatingResult unsupervised_solve(const DataMatrix& x, const KernelSpec& spec,
                                     const TaskSpec& task, const SolveOptions& solver_opts = {});

/// Alternating driver for the guided paradigms: spectral Y at the current
/// projection, Gamma = Omega +/- mu * Psi, then the spectral solve. The first
/// embedding is computed at the full identity.
AlternatingResult semisupervised_solve(const DataMatrix& x, const KernelSpec& spec,
                                       const SymmetricMatrix& k_yhat, const TaskSpec& task,
                                       const SolveOptions& solver_opts = {});
AlternatingResult alternative_solve(const DataMatrix& x, const KernelSpec& spec,
                                    const SymmetricMatrix& k_yhat, const TaskSpec& task,
                                    const SolveOptions& solver_opts = {});

}  // namespace ism
