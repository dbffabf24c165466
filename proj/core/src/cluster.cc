//
// Copyright 2026 The CADEC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "cadec/cluster.h"

#include <cmath>
#include <limits>
#include <string>

#include "cadec/error.h"
#include "cadec/rng.h"

namespace cadec {
namespace {

double squared_distance(const Matrix& a, Eigen::Index i, const Matrix& b,
                        Eigen::Index k) {
  return (a.row(i) - b.row(k)).squaredNorm();
}

// log(1 + |a_i - b_k|^2 / alpha), without overflow for distant points.
double log1p_scaled_distance(const Matrix& a, Eigen::Index i, const Matrix& b,
                             Eigen::Index k, double alpha) {
  const double d2 = squared_distance(a, i, b, k);
  if (std::isfinite(d2)) return std::log1p(d2 / alpha);
  const double d = (a.row(i) - b.row(k)).stableNorm();
  return 2.0 * std::log(d) - std::log(alpha);
}

// D^2 sampling; the first center is uniform.
Matrix plus_plus_seed(const Matrix& points, std::size_t k, Rng& rng) {
  const Eigen::Index n = points.rows();
  Matrix centroids(static_cast<Eigen::Index>(k), points.cols());
  std::vector<double> closest(static_cast<std::size_t>(n),
                              std::numeric_limits<double>::infinity());
  Eigen::Index chosen = static_cast<Eigen::Index>(rng.index(
      static_cast<std::size_t>(n)));
  for (std::size_t c = 0; c < k; ++c) {
    const auto ci = static_cast<Eigen::Index>(c);
    centroids.row(ci) = points.row(chosen);
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      closest[idx] =
          std::min(closest[idx], squared_distance(points, i, centroids, ci));
      total += closest[idx];
    }
    if (c + 1 == k) break;
    if (total <= 0.0) {
      // Every point coincides with a chosen center; fall back to uniform.
      chosen = static_cast<Eigen::Index>(rng.index(static_cast<std::size_t>(n)));
      continue;
    }
    const double target = rng.uniform() * total;
    double acc = 0.0;
    chosen = n - 1;
    for (Eigen::Index i = 0; i < n; ++i) {
      acc += closest[static_cast<std::size_t>(i)];
      if (acc > target && closest[static_cast<std::size_t>(i)] > 0.0) {
        chosen = i;
        break;
      }
    }
  }
  return centroids;
}

}  // namespace

std::vector<std::size_t> nearest_centroid(const Matrix& points,
                                          const Matrix& centroids) {
  std::vector<std::size_t> labels(static_cast<std::size_t>(points.rows()));
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_k = 0;
    for (Eigen::Index k = 0; k < centroids.rows(); ++k) {
      const double d = squared_distance(points, i, centroids, k);
      if (d < best) {
        best = d;
        best_k = static_cast<std::size_t>(k);
      }
    }
    labels[static_cast<std::size_t>(i)] = best_k;
  }
  return labels;
}

Matrix kmeans_init(const Matrix& points, std::size_t k, std::uint64_t seed,
                   std::size_t max_iter) {
  if (k < 1) throw Error("kmeans_init: K must be >= 1");
  if (static_cast<std::size_t>(points.rows()) < k) {
    throw Error("kmeans_init: N = " + std::to_string(points.rows()) +
                " is smaller than K = " + std::to_string(k));
  }
  require_finite(points, "k-means input");
  Rng rng(seed);
  Matrix centroids = plus_plus_seed(points, k, rng);
  std::vector<std::size_t> labels = nearest_centroid(points, centroids);
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    Matrix sums = Matrix::Zero(centroids.rows(), centroids.cols());
    std::vector<std::size_t> counts(k, 0);
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
      const std::size_t c = labels[static_cast<std::size_t>(i)];
      sums.row(static_cast<Eigen::Index>(c)) += points.row(i);
      ++counts[c];
    }
    for (std::size_t c = 0; c < k; ++c) {
      const auto ci = static_cast<Eigen::Index>(c);
      if (counts[c] > 0) {
        centroids.row(ci) = sums.row(ci) / static_cast<double>(counts[c]);
        continue;
      }
      // Empty cluster: take the point farthest from its own centroid.
      double worst = -1.0;
      Eigen::Index worst_i = 0;
      for (Eigen::Index i = 0; i < points.rows(); ++i) {
        const double d = squared_distance(
            points, i, centroids,
            static_cast<Eigen::Index>(labels[static_cast<std::size_t>(i)]));
        if (d > worst) {
          worst = d;
          worst_i = i;
        }
      }
      centroids.row(ci) = points.row(worst_i);
      labels[static_cast<std::size_t>(worst_i)] = c;
    }
    std::vector<std::size_t> next = nearest_centroid(points, centroids);
    if (next == labels) break;
    labels = std::move(next);
  }
  return centroids;
}

Matrix soft_assign(const Matrix& embeddings, const Matrix& centroids,
                   double alpha) {
  if (!(alpha > 0.0)) throw Error("soft_assign: alpha must be > 0");
  if (embeddings.cols() != centroids.cols()) {
    throw Error("soft_assign: embedding and centroid dims differ");
  }
  if (centroids.rows() < 1) throw Error("soft_assign: no centroids");
  if (!embeddings.allFinite() || !centroids.allFinite()) {
    throw NumericError("soft_assign: non-finite embedding or centroid");
  }
  const double exponent = -(alpha + 1.0) / 2.0;
  Matrix q(embeddings.rows(), centroids.rows());
  for (Eigen::Index i = 0; i < embeddings.rows(); ++i) {
    double max_log = -std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < centroids.rows(); ++k) {
      q(i, k) = exponent * log1p_scaled_distance(embeddings, i, centroids, k,
                                                 alpha);
      max_log = std::max(max_log, q(i, k));
    }
    double sum = 0.0;
    for (Eigen::Index k = 0; k < centroids.rows(); ++k) {
      q(i, k) = std::exp(q(i, k) - max_log);
      sum += q(i, k);
    }
    q.row(i) /= sum;
  }
  return q;
}

Matrix target_distribution(const Matrix& q) {
  const Vector freq = q.colwise().sum().transpose();
  Matrix p(q.rows(), q.cols());
  for (Eigen::Index i = 0; i < q.rows(); ++i) {
    double sum = 0.0;
    for (Eigen::Index k = 0; k < q.cols(); ++k) {
      p(i, k) = freq[k] > 0.0 ? q(i, k) * q(i, k) / freq[k] : 0.0;
      sum += p(i, k);
    }
    if (!(sum > 0.0)) {
      throw Error("target_distribution: row " + std::to_string(i) +
                  " has no mass");
    }
    p.row(i) /= sum;
  }
  return p;
}

std::vector<std::size_t> hard_labels(const Matrix& q) {
  std::vector<std::size_t> labels(static_cast<std::size_t>(q.rows()));
  for (Eigen::Index i = 0; i < q.rows(); ++i) {
    std::size_t best = 0;
    for (Eigen::Index k = 1; k < q.cols(); ++k) {
      if (q(i, k) > q(i, static_cast<Eigen::Index>(best))) {
        best = static_cast<std::size_t>(k);
      }
    }
    labels[static_cast<std::size_t>(i)] = best;
  }
  return labels;
}

double assignment_delta(const std::vector<std::size_t>& previous,
                        const std::vector<std::size_t>& current) {
  if (previous.size() != current.size()) {
    throw Error("assignment_delta: label vectors have different lengths");
  }
  if (current.empty()) return 0.0;
  std::size_t changed = 0;
  for (std::size_t i = 0; i < current.size(); ++i) {
    if (previous[i] != current[i]) ++changed;
  }
  return static_cast<double>(changed) / static_cast<double>(current.size());
}

}  // namespace cadec
