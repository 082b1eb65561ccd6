#include "ism/clustering.hpp"

#include "ism/linalg.hpp"
#include "ism/rng.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace ism {

Labeling::Labeling(std::vector<int> l, int clusters) : labels(std::move(l)), k(clusters) {
  if (k < 1) throw std::invalid_argument("Labeling: k must be >= 1");
  std::vector<bool> seen(static_cast<std::size_t>(k), false);
  for (const int label : labels) {
    if (label < 0 || label >= k) throw std::invalid_argument("Labeling: label out of range");
    seen[static_cast<std::size_t>(label)] = true;
  }
  for (int c = 0; c < k; ++c)
    if (!seen[static_cast<std::size_t>(c)])
      throw std::invalid_argument("Labeling: cluster " + std::to_string(c) + " is empty");
}

namespace {

Index nearest_centroid(const Matrix& centroids, const Eigen::RowVectorXd& point) {
  Index best = 0;
  double best_d = (centroids.row(0) - point).squaredNorm();
  for (Index c = 1; c < centroids.rows(); ++c) {
    const double d = (centroids.row(c) - point).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

Matrix kmeanspp_seed(const Matrix& points, int k, Rng& rng) {
  const Index n = points.rows();
  Matrix centroids(k, points.cols());
  centroids.row(0) = points.row(static_cast<Index>(rng.uniform_below(n)));
  Vector dist2 = (points.rowwise() - centroids.row(0)).rowwise().squaredNorm();
  for (int c = 1; c < k; ++c) {
    const double total = dist2.sum();
    Index chosen;
    if (total <= 0.0) {
      chosen = static_cast<Index>(rng.uniform_below(n));  // all remaining points coincide
    } else {
      const double target = rng.uniform() * total;
      double acc = 0.0;
      chosen = n - 1;
      for (Index i = 0; i < n; ++i) {
        acc += dist2[i];
        if (acc >= target) {
          chosen = i;
          break;
        }
      }
    }
    centroids.row(c) = points.row(chosen);
    dist2 = dist2.cwiseMin((points.rowwise() - centroids.row(c)).rowwise().squaredNorm());
  }
  return centroids;
}

}  // namespace

Labeling kmeans(const Matrix& points, int k, std::uint64_t seed) {
  const Index n = points.rows();
  if (k < 1 || k > n) throw std::invalid_argument("kmeans: need 1 <= k <= n");
  Rng rng(seed);
  Matrix centroids = kmeanspp_seed(points, k, rng);

  std::vector<int> assign(static_cast<std::size_t>(n), -1);
  bool reseeded_once = false;
  for (int iter = 0; iter < 300; ++iter) {
    bool changed = false;
    for (Index i = 0; i < n; ++i) {
      const int c = static_cast<int>(nearest_centroid(centroids, points.row(i)));
      if (c != assign[static_cast<std::size_t>(i)]) {
        assign[static_cast<std::size_t>(i)] = c;
        changed = true;
      }
    }
    if (!changed) break;

    Matrix sums = Matrix::Zero(k, points.cols());
    std::vector<Index> counts(static_cast<std::size_t>(k), 0);
    for (Index i = 0; i < n; ++i) {
      sums.row(assign[static_cast<std::size_t>(i)]) += points.row(i);
      ++counts[static_cast<std::size_t>(assign[static_cast<std::size_t>(i)])];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) {
        centroids.row(c) = sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
        continue;
      }
      if (reseeded_once)
        throw degenerate_data_error("kmeans: empty cluster persisted after reseeding");
      reseeded_once = true;
      // Reseed from the point furthest from its centroid.
      Index far = 0;
      double far_d = -1.0;
      for (Index i = 0; i < n; ++i) {
        const double d =
            (points.row(i) - centroids.row(assign[static_cast<std::size_t>(i)])).squaredNorm();
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      centroids.row(c) = points.row(far);
    }
  }

  // Remap cluster ids to first-appearance order so output is independent of
  // the seeding permutation given identical geometry.
  std::vector<int> remap(static_cast<std::size_t>(k), -1);
  int next = 0;
  for (auto& a : assign) {
    if (remap[static_cast<std::size_t>(a)] < 0) remap[static_cast<std::size_t>(a)] = next++;
    a = remap[static_cast<std::size_t>(a)];
  }
  if (next != k) throw degenerate_data_error("kmeans: produced an empty cluster");
  return Labeling(std::move(assign), k);
}

SpectralResult spectral_clustering(const SymmetricMatrix& affinity, int k, std::uint64_t seed) {
  const Index n = affinity.size();
  if (k < 2) throw std::invalid_argument("spectral_clustering: k must be >= 2");
  if (affinity.values.minCoeff() < -1e-12)
    throw std::invalid_argument("spectral_clustering: affinity must be entrywise nonnegative");
  const Vector degrees = affinity.values.rowwise().sum();
  if (degrees.minCoeff() <= 0.0)
    throw degenerate_data_error("spectral_clustering: zero-degree row (isolated point)");

  const Vector d_inv_sqrt = degrees.cwiseSqrt().cwiseInverse();
  const Matrix normalized =
      d_inv_sqrt.asDiagonal() * affinity.values * d_inv_sqrt.asDiagonal();
  const EigResult eig = sorted_symmetric_eig(SymmetricMatrix(normalized));

  // Top-k eigenvectors, descending eigenvalue order.
  Matrix embedding(n, k);
  for (int c = 0; c < k; ++c) embedding.col(c) = eig.eigenvectors.col(n - 1 - c);

  Matrix rows = embedding;
  for (Index i = 0; i < n; ++i) {
    const double norm = rows.row(i).norm();
    if (norm > 1e-300) rows.row(i) /= norm;
  }
  return {kmeans(rows, k, seed), embedding};
}

namespace {

double entropy(const std::vector<Index>& counts, Index n) {
  double h = 0.0;
  for (const Index c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(n);
    h -= p * std::log(p);
  }
  return h;
}

}  // namespace

double nmi(const Labeling& a, const Labeling& b) {
  const Index n = static_cast<Index>(a.labels.size());
  if (b.labels.size() != a.labels.size()) throw std::invalid_argument("nmi: length mismatch");

  std::vector<Index> count_a(static_cast<std::size_t>(a.k), 0);
  std::vector<Index> count_b(static_cast<std::size_t>(b.k), 0);
  std::map<std::pair<int, int>, Index> joint;
  for (Index i = 0; i < n; ++i) {
    const int la = a.labels[static_cast<std::size_t>(i)];
    const int lb = b.labels[static_cast<std::size_t>(i)];
    ++count_a[static_cast<std::size_t>(la)];
    ++count_b[static_cast<std::size_t>(lb)];
    ++joint[{la, lb}];
  }

  const double ha = entropy(count_a, n);
  const double hb = entropy(count_b, n);
  if (ha == 0.0 || hb == 0.0) {
    // Zero entropy on either side: defined as 1 for identical partitions.
    return (ha == 0.0 && hb == 0.0) ? 1.0 : 0.0;
  }

  double mi = 0.0;
  for (const auto& [pair, c] : joint) {
    const double p_ab = static_cast<double>(c) / static_cast<double>(n);
    const double p_a = static_cast<double>(count_a[static_cast<std::size_t>(pair.first)]) /
                       static_cast<double>(n);
    const double p_b = static_cast<double>(count_b[static_cast<std::size_t>(pair.second)]) /
                       static_cast<double>(n);
    mi += p_ab * std::log(p_ab / (p_a * p_b));
  }
  return mi / std::sqrt(ha * hb);
}

double knn_error(const Matrix& train_points, const std::vector<int>& train_labels,
                 const Matrix& test_points, const std::vector<int>& test_labels,
                 int k_neighbors) {
  const Index n_train = train_points.rows();
  const Index n_test = test_points.rows();
  if (n_train == 0) throw std::invalid_argument("knn_error: empty training set");
  if (static_cast<Index>(train_labels.size()) != n_train ||
      static_cast<Index>(test_labels.size()) != n_test)
    throw std::invalid_argument("knn_error: label length mismatch");
  if (train_points.cols() != test_points.cols())
    throw std::invalid_argument("knn_error: dimension mismatch");
  if (k_neighbors < 1) throw std::invalid_argument("knn_error: k must be >= 1");
  if (n_test == 0) return 0.0;

  const int k = static_cast<int>(std::min<Index>(k_neighbors, n_train));
  Index wrong = 0;
  std::vector<std::pair<double, Index>> dist(static_cast<std::size_t>(n_train));
  for (Index t = 0; t < n_test; ++t) {
    for (Index i = 0; i < n_train; ++i)
      dist[static_cast<std::size_t>(i)] = {
          (train_points.row(i) - test_points.row(t)).squaredNorm(), i};
    // pair ordering breaks distance ties by lowest training index
    std::partial_sort(dist.begin(), dist.begin() + k, dist.end());

    int predicted;
    if (k == 1) {
      predicted = train_labels[static_cast<std::size_t>(dist[0].second)];
    } else {
      std::map<int, int> votes;
      for (int j = 0; j < k; ++j)
        ++votes[train_labels[static_cast<std::size_t>(dist[static_cast<std::size_t>(j)].second)]];
      predicted = votes.begin()->first;
      int best = votes.begin()->second;
      for (const auto& [label, v] : votes)
        if (v > best) {
          best = v;
          predicted = label;
        }
    }
    if (predicted != test_labels[static_cast<std::size_t>(t)]) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(n_test);
}

}  // namespace ism
