#include "ism/tasks.hpp"

#include "ism/hsic.hpp"
#include "ism/linalg.hpp"

#include <cmath>

namespace ism {

std::string to_string(Paradigm p) {
  switch (p) {
    case Paradigm::supervised: return "supervised";
    case Paradigm::unsupervised: return "unsupervised";
    case Paradigm::semi_supervised: return "semi_supervised";
    case Paradigm::alternative_clustering: return "alternative_clustering";
  }
  return "unknown";
}

SymmetricMatrix delta_kernel(const std::vector<int>& labels) {
  const Index n = static_cast<Index>(labels.size());
  Matrix k(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      k(i, j) = labels[static_cast<std::size_t>(i)] == labels[static_cast<std::size_t>(j)]
                    ? 1.0
                    : 0.0;
  return SymmetricMatrix(k);
}

SymmetricMatrix supervised_gamma_from_kernel(const SymmetricMatrix& k_y) {
  return SymmetricMatrix(double_center(k_y.values));
}

SymmetricMatrix supervised_gamma(const std::vector<int>& labels, bool* degenerate) {
  if (labels.empty()) throw std::invalid_argument("supervised_gamma: no labels");
  SymmetricMatrix gamma = supervised_gamma_from_kernel(delta_kernel(labels));
  if (degenerate) {
    const double scale = gamma.values.cwiseAbs().maxCoeff();
    *degenerate = scale < 1e-12;  // single class: centering cancels everything
  }
  return gamma;
}

namespace {

// Omega = D^{-1/2} Y Y^T D^{-1/2} with D the degrees of the kernel at the
// current projection, treated as constant during the W update.
Matrix omega_matrix(const KernelSpec& spec, const DataMatrix& x, const Matrix& w_current,
                    const Matrix& y_spectral) {
  const SymmetricMatrix k = kernel_matrix(spec, x, w_current);
  const Vector degrees = k.values.rowwise().sum();
  if (degrees.minCoeff() <= 0.0)
    throw degenerate_data_error("semisupervised gamma: zero-degree row (isolated point)");
  const Vector d_inv_sqrt = degrees.cwiseSqrt().cwiseInverse();
  const Matrix scaled = d_inv_sqrt.asDiagonal() * y_spectral;
  return scaled * scaled.transpose();
}

SymmetricMatrix guided_gamma(const KernelSpec& spec, const DataMatrix& x, const Matrix& w_current,
                             const Matrix& y_spectral, const SymmetricMatrix& k_yhat, double mu,
                             double penalty_sign) {
  if (mu < 0.0) throw std::invalid_argument("gamma: mu must be >= 0");
  if (k_yhat.size() != x.n())
    throw std::invalid_argument("gamma: expert-score kernel size must match sample count");
  if (y_spectral.rows() != x.n())
    throw std::invalid_argument("gamma: embedding rows must match sample count");
  const Matrix omega = omega_matrix(spec, x, w_current, y_spectral);
  const Matrix psi = double_center(k_yhat.values);
  return SymmetricMatrix(omega + penalty_sign * mu * psi);
}

}  // namespace

SymmetricMatrix semisupervised_gamma(const KernelSpec& spec, const DataMatrix& x,
                                     const Matrix& w_current, const Matrix& y_spectral,
                                     const SymmetricMatrix& k_yhat, double mu) {
  return guided_gamma(spec, x, w_current, y_spectral, k_yhat, mu, +1.0);
}

SymmetricMatrix alternative_gamma(const KernelSpec& spec, const DataMatrix& x,
                                  const Matrix& w_current, const Matrix& y_spectral,
                                  const SymmetricMatrix& k_yhat, double mu) {
  return guided_gamma(spec, x, w_current, y_spectral, k_yhat, mu, -1.0);
}

namespace {

bool same_labels(const Labeling& a, const Labeling& b) {
  return a.k == b.k && a.labels == b.labels;
}

void record_round(AlternatingResult& result, double objective) {
  if (!result.outer_objective_trace.empty()) {
    const double prev = result.outer_objective_trace.back();
    if (objective > prev + 1e-6 * std::max(1.0, std::abs(prev))) result.non_improving = true;
  }
  result.outer_objective_trace.push_back(objective);
}

}  // namespace

AlternatingResult unsupervised_solve(const DataMatrix& x, const KernelSpec& spec,
                                     const TaskSpec& task, const SolveOptions& solver_opts) {
  if (task.k_clusters < 2) throw std::invalid_argument("unsupervised_solve: k_clusters >= 2");
  validate_kernel(spec, x.n());

  SolveOptions opts = solver_opts;
  const Index d = x.d();
  // Identity initialization, truncated to q columns once q is known.
  Matrix w = opts.q == kAutoQ ? Matrix::Identity(d, d)
                              : Matrix(Matrix::Identity(d, d).leftCols(opts.q));

  AlternatingResult result;
  Labeling previous;
  for (int outer = 1; outer <= task.max_outer_iterations; ++outer) {
    const SymmetricMatrix k = kernel_matrix(spec, x, w);
    SpectralResult clustered = spectral_clustering(k, task.k_clusters, task.seed);
    const SymmetricMatrix gamma(
        double_center(clustered.embedding * clustered.embedding.transpose()));

    result.last_solve = ism_solve(spec, x, gamma, opts);
    w = result.last_solve.projection.basis;
    opts.q = result.last_solve.projection.q();  // pin q after the first round
    result.outer_iterations = outer;

    record_round(result,
                 objective_cost(gamma, kernel_matrix(spec, x, w)));

    const bool fixpoint = outer > 1 && same_labels(clustered.labeling, previous);
    previous = std::move(clustered.labeling);
    if (fixpoint) {
      result.label_fixpoint = true;
      break;
    }
  }

  result.projection = result.last_solve.projection;
  result.labels =
      spectral_clustering(kernel_matrix(spec, x, w), task.k_clusters, task.seed).labeling;
  return result;
}

namespace {

AlternatingResult guided_solve(const DataMatrix& x, const KernelSpec& spec,
                               const SymmetricMatrix& k_yhat, const TaskSpec& task,
                               const SolveOptions& solver_opts, double penalty_sign) {
  if (task.k_clusters < 2) throw std::invalid_argument("guided solve: k_clusters >= 2");
  if (task.mu < 0.0) throw std::invalid_argument("guided solve: mu must be >= 0");
  validate_kernel(spec, x.n());

  SolveOptions opts = solver_opts;
  const SymmetricMatrix psi(double_center(k_yhat.values));
  Matrix w = Matrix::Identity(x.d(), x.d());  // first embedding sees the full space

  AlternatingResult result;
  Labeling previous;
  for (int outer = 1; outer <= task.max_outer_iterations; ++outer) {
    const SymmetricMatrix k = kernel_matrix(spec, x, w);
    SpectralResult clustered = spectral_clustering(k, task.k_clusters, task.seed);

    const Matrix omega = omega_matrix(spec, x, w, clustered.embedding);
    const SymmetricMatrix gamma(omega + penalty_sign * task.mu * psi.values);

    result.last_solve = ism_solve(spec, x, gamma, opts);
    w = result.last_solve.projection.basis;
    opts.q = result.last_solve.projection.q();
    result.outer_iterations = outer;

    // Objective of the round at (Y, W_new): spectral-cluster quality of the
    // new kernel plus the signed dependence penalty.
    const SymmetricMatrix k_new = kernel_matrix(spec, x, w);
    const Vector deg = k_new.values.rowwise().sum();
    if (deg.minCoeff() <= 0.0)
      throw degenerate_data_error("guided solve: zero-degree row after update");
    const Vector dis = deg.cwiseSqrt().cwiseInverse();
    const Matrix l_w = dis.asDiagonal() * k_new.values * dis.asDiagonal();
    const double cluster_term =
        -(clustered.embedding.transpose() * l_w * clustered.embedding).trace();
    const double penalty_term = k_new.values.cwiseProduct(psi.values).sum();
    record_round(result, cluster_term - penalty_sign * task.mu * penalty_term);

    const bool fixpoint = outer > 1 && same_labels(clustered.labeling, previous);
    previous = std::move(clustered.labeling);
    if (fixpoint) {
      result.label_fixpoint = true;
      break;
    }
  }

  result.projection = result.last_solve.projection;
  result.labels =
      spectral_clustering(kernel_matrix(spec, x, w), task.k_clusters, task.seed).labeling;
  return result;
}

}  // namespace

AlternatingResult semisupervised_solve(const DataMatrix& x, const KernelSpec& spec,
                                       const SymmetricMatrix& k_yhat, const TaskSpec& task,
                                       const SolveOptions& solver_opts) {
  return guided_solve(x, spec, k_yhat, task, solver_opts, +1.0);
}

AlternatingResult alternative_solve(const DataMatrix& x, const KernelSpec& spec,
                                    const SymmetricMatrix& k_yhat, const TaskSpec& task,
                                    const SolveOptions& solver_opts) {
  return guided_solve(x, spec, k_yhat, task, solver_opts, -1.0);
}

}  // namespace ism
