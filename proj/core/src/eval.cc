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

#include "cadec/eval.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <Eigen/Eigenvalues>

#include "cadec/cluster.h"
#include "cadec/error.h"
#include "cadec/model.h"

namespace cadec {

// Shortest augmenting path with row/column potentials, O(n^3).
std::vector<std::size_t> solve_assignment(const Matrix& cost) {
  if (cost.rows() != cost.cols()) {
    throw Error("solve_assignment: cost matrix must be square");
  }
  const auto n = static_cast<std::size_t>(cost.rows());
  if (n == 0) return {};
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // 1-based arrays; index 0 is the virtual source column.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  for (std::size_t row = 1; row <= n; ++row) {
    match[0] = row;
    std::size_t col0 = 0;
    std::vector<double> min_slack(n + 1, kInf);
    std::vector<bool> used(n + 1, false);
    do {
      used[col0] = true;
      const std::size_t r = match[col0];
      double delta = kInf;
      std::size_t col1 = 0;
      for (std::size_t c = 1; c <= n; ++c) {
        if (used[c]) continue;
        const double slack =
            cost(static_cast<Eigen::Index>(r - 1),
                 static_cast<Eigen::Index>(c - 1)) -
            u[r] - v[c];
        if (slack < min_slack[c]) {
          min_slack[c] = slack;
          way[c] = col0;
        }
        if (min_slack[c] < delta) {
          delta = min_slack[c];
          col1 = c;
        }
      }
      for (std::size_t c = 0; c <= n; ++c) {
        if (used[c]) {
          u[match[c]] += delta;
          v[c] -= delta;
        } else {
          min_slack[c] -= delta;
        }
      }
      col0 = col1;
    } while (match[col0] != 0);
    do {
      const std::size_t col1 = way[col0];
      match[col0] = match[col1];
      col0 = col1;
    } while (col0 != 0);
  }
  std::vector<std::size_t> assignment(n);
  for (std::size_t c = 1; c <= n; ++c) assignment[match[c] - 1] = c - 1;
  return assignment;
}

ClusterMatching hungarian_accuracy(const std::vector<std::size_t>& predicted,
                                   const std::vector<std::string>& gold) {
  if (predicted.size() != gold.size()) {
    throw Error("hungarian_accuracy: predicted and gold lengths differ");
  }
  ClusterMatching out;
  if (gold.empty()) return out;
  std::map<std::string, std::size_t> category_index;
  for (const std::string& g : gold) category_index.emplace(g, 0);
  for (auto& [name, index] : category_index) {
    index = out.categories.size();
    out.categories.push_back(name);
  }
  const std::size_t clusters =
      *std::max_element(predicted.begin(), predicted.end()) + 1;
  const std::size_t categories = out.categories.size();
  out.contingency.assign(clusters, std::vector<std::size_t>(categories, 0));
  for (std::size_t i = 0; i < gold.size(); ++i) {
    ++out.contingency[predicted[i]][category_index.at(gold[i])];
  }

  const std::size_t n = std::max(clusters, categories);
  Matrix cost = Matrix::Zero(static_cast<Eigen::Index>(n),
                             static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < clusters; ++k) {
    for (std::size_t c = 0; c < categories; ++c) {
      cost(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(c)) =
          -static_cast<double>(out.contingency[k][c]);
    }
  }
  const std::vector<std::size_t> assignment = solve_assignment(cost);
  out.cluster_to_category.assign(clusters, std::nullopt);
  for (std::size_t k = 0; k < clusters; ++k) {
    if (assignment[k] < categories) {
      out.cluster_to_category[k] = assignment[k];
      out.correct += out.contingency[k][assignment[k]];
    }
  }
  out.accuracy =
      static_cast<double>(out.correct) / static_cast<double>(gold.size());
  return out;
}

double silhouette_mean(const Matrix& points,
                       const std::vector<std::size_t>& labels) {
  const auto n = static_cast<std::size_t>(points.rows());
  if (labels.size() != n) throw Error("silhouette: label count mismatch");
  if (n == 0) return 0.0;
  const std::size_t clusters =
      *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<std::size_t> sizes(clusters, 0);
  for (std::size_t l : labels) ++sizes[l];
  const auto nonempty =
      std::count_if(sizes.begin(), sizes.end(), [](auto s) { return s > 0; });
  if (nonempty < 2) return 0.0;

  double total = 0.0;
  std::vector<double> dist_sum(clusters);
  for (std::size_t i = 0; i < n; ++i) {
    if (sizes[labels[i]] < 2) continue;
    std::fill(dist_sum.begin(), dist_sum.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      dist_sum[labels[j]] += (points.row(static_cast<Eigen::Index>(i)) -
                              points.row(static_cast<Eigen::Index>(j)))
                                 .norm();
    }
    const double a = dist_sum[labels[i]] /
                     static_cast<double>(sizes[labels[i]] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < clusters; ++c) {
      if (c == labels[i] || sizes[c] == 0) continue;
      b = std::min(b, dist_sum[c] / static_cast<double>(sizes[c]));
    }
    const double denom = std::max(a, b);
    if (denom > 0.0) total += (b - a) / denom;
  }
  return total / static_cast<double>(n);
}

std::vector<Classification> classify(const Checkpoint& checkpoint,
                                     const Matrix& r, double alpha) {
  if (checkpoint.cluster_count() == 0) {
    throw Error("checkpoint has no centroids (run Stage 2 first)");
  }
  const Matrix q = soft_assign(encode(checkpoint.model, r),
                               checkpoint.centroids, alpha);
  const std::vector<std::size_t> labels = hard_labels(q);
  std::vector<Classification> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out[i].cluster = labels[i];
    out[i].q = q.row(static_cast<Eigen::Index>(i)).transpose();
  }
  return out;
}

Classification classify(const Checkpoint& checkpoint, const Vector& r,
                        double alpha) {
  const Matrix row = r.transpose();
  return classify(checkpoint, row, alpha).front();
}

Classification classify(const Checkpoint& checkpoint,
                        const ContextWindow& window,
                        const BackboneProvider& backbone,
                        const EmotionLexicon& lexicon, double alpha) {
  return classify(checkpoint,
                  initial_embedding(window, backbone, lexicon).values, alpha);
}

EvalReport evaluate(const Checkpoint& checkpoint, const Matrix& r,
                    const std::vector<std::optional<std::string>>& gold,
                    double alpha) {
  if (static_cast<std::size_t>(r.rows()) != gold.size()) {
    throw Error("evaluate: row and label counts differ");
  }
  const Matrix h = encode(checkpoint.model, r);
  const std::vector<std::size_t> labels =
      hard_labels(soft_assign(h, checkpoint.centroids, alpha));

  EvalReport report;
  report.cluster_sizes.assign(checkpoint.cluster_count(), 0);
  for (std::size_t l : labels) ++report.cluster_sizes[l];
  report.silhouette = silhouette_mean(h, labels);

  std::vector<std::size_t> predicted;
  std::vector<std::string> truth;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (!gold[i]) continue;
    predicted.push_back(labels[i]);
    truth.push_back(*gold[i]);
  }
  report.evaluated = truth.size();
  if (truth.empty()) return report;
  const ClusterMatching m = hungarian_accuracy(predicted, truth);
  report.accuracy = m.accuracy;
  report.categories = m.categories;

  // Row c holds the cluster matched to category c; unmatched clusters
  // follow in index order.
  std::vector<std::size_t> row_order;
  for (std::size_t c = 0; c < m.categories.size(); ++c) {
    for (std::size_t k = 0; k < m.cluster_to_category.size(); ++k) {
      if (m.cluster_to_category[k] == c) row_order.push_back(k);
    }
  }
  for (std::size_t k = 0; k < m.cluster_to_category.size(); ++k) {
    if (!m.cluster_to_category[k]) row_order.push_back(k);
  }
  for (std::size_t k : row_order) report.confusion.push_back(m.contingency[k]);
  return report;
}

Matrix project2d(const Matrix& points) {
  if (points.rows() < 2) throw Error("project2d: need at least two points");
  const Eigen::RowVectorXd mean = points.colwise().mean();
  const Matrix centered = points.rowwise() - mean;
  const Eigen::MatrixXd cov = (centered.transpose() * centered) /
                              static_cast<double>(points.rows() - 1);
  if (!(cov.trace() > 0.0)) {
    throw Error("project2d: data has zero variance");
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) {
    throw Error("project2d: eigendecomposition failed");
  }
  const Eigen::Index d = cov.rows();
  Eigen::MatrixXd directions = Eigen::MatrixXd::Zero(d, 2);
  for (Eigen::Index j = 0; j < std::min<Eigen::Index>(2, d); ++j) {
    Eigen::VectorXd dir = solver.eigenvectors().col(d - 1 - j);
    Eigen::Index biggest = 0;
    for (Eigen::Index i = 1; i < d; ++i) {
      if (std::abs(dir[i]) > std::abs(dir[biggest])) biggest = i;
    }
    if (dir[biggest] < 0.0) dir = -dir;
    directions.col(j) = dir;
  }
  return centered * directions;
}

}  // namespace cadec
