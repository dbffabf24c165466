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

#ifndef CADEC_EVAL_H_
#define CADEC_EVAL_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cadec/checkpoint.h"
#include "cadec/corpus.h"
#include "cadec/embed.h"
#include "cadec/lexicon.h"
#include "cadec/types.h"

namespace cadec {

// Minimum-cost perfect matching on a square cost matrix. Returns, for each
// row, the column assigned to it.
std::vector<std::size_t> solve_assignment(const Matrix& cost);

struct ClusterMatching {
  double accuracy = 0.0;
  std::vector<std::string> categories;  // sorted gold category names
  // cluster index -> category index, nullopt for clusters left unmatched
  // when K > C.
  std::vector<std::optional<std::size_t>> cluster_to_category;
  // contingency[k][c]: items in cluster k with gold category c.
  std::vector<std::vector<std::size_t>> contingency;
  std::size_t correct = 0;
};

// Accuracy under the best one-to-one mapping of clusters to categories.
// Throws Error on length mismatch.
ClusterMatching hungarian_accuracy(const std::vector<std::size_t>& predicted,
                                   const std::vector<std::string>& gold);

// Mean silhouette coefficient over all points (Euclidean). Points in
// singleton clusters score 0; the mean is 0 when there is only one cluster.
double silhouette_mean(const Matrix& points,
                       const std::vector<std::size_t>& labels);

struct Classification {
  std::size_t cluster = 0;
  Vector q;
};

// r -> h -> soft assignment against the checkpoint's centroids.
Classification classify(const Checkpoint& checkpoint, const Vector& r,
                        double alpha = 1.0);
std::vector<Classification> classify(const Checkpoint& checkpoint,
                                     const Matrix& r, double alpha = 1.0);
Classification classify(const Checkpoint& checkpoint,
                        const ContextWindow& window,
                        const BackboneProvider& backbone,
                        const EmotionLexicon& lexicon, double alpha = 1.0);

struct EvalReport {
  double accuracy = 0.0;
  std::vector<std::string> categories;
  std::vector<std::size_t> cluster_sizes;
  // Rows are clusters in matched order, columns are categories.
  std::vector<std::vector<std::size_t>> confusion;
  double silhouette = 0.0;
  std::size_t evaluated = 0;  // utterances with a gold label
};

// Embeds and clusters the rows of `r`; only rows with a gold label enter
// the accuracy and confusion matrix.
EvalReport evaluate(const Checkpoint& checkpoint, const Matrix& r,
                    const std::vector<std::optional<std::string>>& gold,
                    double alpha = 1.0);

// Centered data projected on its top two principal directions. Each
// direction is signed so its largest-magnitude component is positive.
// Throws Error for N < 2 or zero total variance.
Matrix project2d(const Matrix& points);

}  // namespace cadec

#endif  // CADEC_EVAL_H_
