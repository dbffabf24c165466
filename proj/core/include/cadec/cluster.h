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

#ifndef CADEC_CLUSTER_H_
#define CADEC_CLUSTER_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cadec/types.h"

namespace cadec {

// k-means++ seeding followed by Lloyd iterations until the assignment stops
// changing or max_iter is reached. A cluster that loses all its points is
// re-seeded from the point farthest from its current centroid. Returns the
// K x d centroids. Throws Error when N < K or K < 1.
Matrix kmeans_init(const Matrix& points, std::size_t k, std::uint64_t seed,
                   std::size_t max_iter = 100);

// Index of the nearest centroid for each row (ties to the lowest index).
std::vector<std::size_t> nearest_centroid(const Matrix& points,
                                          const Matrix& centroids);

// Student's t kernel
//   q_ik ∝ (1 + |h_i - mu_k|^2 / alpha)^(-(alpha + 1) / 2),
// normalized per row. Computed in log space so far-away points do not
// underflow to an all-zero row.
Matrix soft_assign(const Matrix& embeddings, const Matrix& centroids,
                   double alpha);

// p_ik ∝ q_ik^2 / f_k with soft cluster frequency f_k = sum_i q_ik,
// normalized per row.
Matrix target_distribution(const Matrix& q);

// Argmax per row, ties to the lowest index.
std::vector<std::size_t> hard_labels(const Matrix& q);

// Fraction of positions whose label changed. Throws Error on length
// mismatch.
double assignment_delta(const std::vector<std::size_t>& previous,
                        const std::vector<std::size_t>& current);

// Training stops once the delta is strictly below the threshold.
inline bool has_converged(double delta, double threshold) {
  return delta < threshold;
}

}  // namespace cadec

#endif  // CADEC_CLUSTER_H_
