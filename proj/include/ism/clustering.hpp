#pragma once

#include "ism/types.hpp"

#include <cstdint>
#include <vector>

namespace ism {

/// Hard cluster assignment; labels in [0, k), every cluster nonempty.
struct Labeling {
  std::vector<int> labels;
  int k = 0;

  Labeling() = default;
  Labeling(std::vector<int> l, int clusters);
};

/// Lloyd's algorithm with k-means++ seeding. Deterministic given the seed.
/// An empty cluster is reseeded once from the point furthest from its
/// centroid; a second occurrence is an error.
Labeling kmeans(const Matrix& points, int k, std::uint64_t seed);

struct SpectralResult {
  Labeling labeling;
  Matrix embedding;  // n x k, orthonormal columns (before row normalization)
};

/// Normalized-affinity spectral clustering: top-k eigenvectors of
/// D^{-1/2} K D^{-1/2} (largest eigenvalues), rows scaled to unit length,
/// then k-means.
SpectralResult spectral_clustering(const SymmetricMatrix& affinity, int k, std::uint64_t seed);

/// Normalized mutual information in [0, 1], natural log. When either
/// labeling has zero entropy: 1 if the two partitions are identical, else 0.
double nmi(const Labeling& a, const Labeling& b);

/// Fraction of test points whose nearest training neighbour (k = 1, ties by
/// lowest training index; majority vote for k > 1) has a different label.
double knn_error(const Matrix& train_points, const std::vector<int>& train_labels,
                 const Matrix& test_points, const std::vector<int>& test_labels,
                 int k_neighbors = 1);

}  // namespace ism
