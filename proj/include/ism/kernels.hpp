#pragma once

#include "ism/types.hpp"

#include <string>

namespace ism {

enum class KernelKind { linear, squared, polynomial, gaussian, multiquadratic, rbf_relative };

std::string to_string(KernelKind kind);
KernelKind kernel_kind_from_string(const std::string& name);

/// Kernel identity plus hyperparameters. Every member of the family is a
/// scalar function f(beta) of beta = a^T W W^T b, where (a, b) is either
/// (x_i, x_j) or (x_i - x_j, x_i - x_j) depending on the kernel.
struct KernelSpec {
  KernelKind kind = KernelKind::gaussian;
  double sigma = 1.0;            // gaussian bandwidth
  int degree = 3;                // polynomial order p
  double offset = 1.0;           // polynomial constant c
  double mq_offset = 1.0;        // multiquadratic constant c, must be nonzero
  Vector per_sample_sigma;       // rbf_relative bandwidths, length n, all > 0

  static KernelSpec linear() {
    KernelSpec s;
    s.kind = KernelKind::linear;
    return s;
  }
  static KernelSpec squared() {
    KernelSpec s;
    s.kind = KernelKind::squared;
    return s;
  }
  static KernelSpec polynomial(int p = 3, double c = 1.0) {
    KernelSpec s;
    s.kind = KernelKind::polynomial;
    s.degree = p;
    s.offset = c;
    return s;
  }
  static KernelSpec gaussian(double sigma) {
    KernelSpec s;
    s.kind = KernelKind::gaussian;
    s.sigma = sigma;
    return s;
  }
  static KernelSpec multiquadratic(double c = 1.0) {
    KernelSpec s;
    s.kind = KernelKind::multiquadratic;
    s.mq_offset = c;
    return s;
  }
  static KernelSpec rbf_relative(Vector sigmas) {
    KernelSpec s;
    s.kind = KernelKind::rbf_relative;
    s.per_sample_sigma = std::move(sigmas);
    return s;
  }
};

/// Throws invalid_argument unless the spec is usable with n samples.
void validate_kernel(const KernelSpec& spec, Index n);

/// True when the kernel's (a, b) pair is (x_i - x_j, x_i - x_j).
bool uses_pair_difference(KernelKind kind);

/// Scalar kernel value f(beta); i, j identify the pair for rbf_relative.
double kernel_f(const KernelSpec& spec, double beta, Index i = 0, Index j = 0);
/// Scalar derivative f'(beta).
double kernel_fprime(const KernelSpec& spec, double beta, Index i = 0, Index j = 0);

/// n x n kernel matrix of the projected data XW.
SymmetricMatrix kernel_matrix(const KernelSpec& spec, const DataMatrix& x, const Matrix& w);

/// Median of the pairwise Euclidean distances; the usual bandwidth heuristic.
double median_sigma(const DataMatrix& x);

/// Per-sample bandwidths: distance from x_i to its k-th nearest neighbour.
Vector relative_sigmas(const DataMatrix& x, int k);

/// Initial update matrix from the second-order expansion of the kernel around
/// zero. Scale-free: positive constants are dropped, signs kept.
PhiMatrix compute_phi0(const KernelSpec& spec, const DataMatrix& x, const SymmetricMatrix& gamma);

/// Update matrix at the current projection. Scale-free like compute_phi0.
PhiMatrix compute_phi(const KernelSpec& spec, const DataMatrix& x, const SymmetricMatrix& gamma,
                      const Matrix& w);

/// Literal O(n^2 d^2) evaluation of -1/2 sum_ij Gamma_ij f'(beta_ij) A_ij with
/// A_ij = b a^T + a b^T, true scalars included. Test oracle for compute_phi.
PhiMatrix compute_phi_naive(const KernelSpec& spec, const DataMatrix& x,
                            const SymmetricMatrix& gamma, const Matrix& w);

}  // namespace ism
