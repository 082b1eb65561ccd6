#pragma once

#include "ism/linalg.hpp"
#include "ism/rng.hpp"
#include "ism/tasks.hpp"
#include "ism/types.hpp"

#include <vector>

namespace ism::test {

inline Matrix random_matrix(Rng& rng, Index rows, Index cols) {
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = rng.normal();
  return m;
}

inline SymmetricMatrix random_symmetric(Rng& rng, Index n) {
  const Matrix m = random_matrix(rng, n, n);
  return SymmetricMatrix(0.5 * (m + m.transpose()));
}

inline Matrix random_orthonormal(Rng& rng, Index d, Index q) {
  return orthonormal_columns(random_matrix(rng, d, q));
}

inline DataMatrix random_data(Rng& rng, Index n, Index d) {
  return DataMatrix(random_matrix(rng, n, d));
}

// Column-wise z-score, the preprocessing used for the dataset runs.
inline Matrix zscore(const Matrix& x) {
  Matrix out = x;
  for (Index c = 0; c < out.cols(); ++c) {
    out.col(c).array() -= out.col(c).mean();
    const double sd = std::sqrt(out.col(c).squaredNorm() / static_cast<double>(out.rows()));
    if (sd > 0.0) out.col(c) /= sd;
  }
  return out;
}

struct BlobInstance {
  DataMatrix x;
  std::vector<int> labels;
};

// Two Gaussian blobs separated in the first two dimensions, z-scored.
// The supervised instance family used for solver-vs-baseline comparisons.
inline BlobInstance two_blobs(std::uint64_t seed, Index n, Index d, double spread = 3.0) {
  Rng rng(seed);
  std::vector<int> labels(static_cast<std::size_t>(n));
  Matrix centers = spread * random_matrix(rng, 2, 2);
  Matrix x = random_matrix(rng, n, d);
  for (Index i = 0; i < n; ++i) {
    const int c = static_cast<int>(rng.uniform_below(2));
    labels[static_cast<std::size_t>(i)] = c;
    x(i, 0) += centers(c, 0);
    x(i, 1) += centers(c, 1);
  }
  // both classes present
  labels[0] = 0;
  labels[1] = 1;
  return {DataMatrix(zscore(x)), labels};
}

}  // namespace ism::test
