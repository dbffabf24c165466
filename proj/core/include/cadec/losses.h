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

#ifndef CADEC_LOSSES_H_
#define CADEC_LOSSES_H_

#include <optional>

#include "cadec/types.h"

namespace cadec {

enum class ContrastiveMode {
  // l_i = -log( exp(cos(h_i, h~_i)/tau) / sum_{k != i} exp(cos(h_i, h~_k)/tau) )
  // averaged over the N anchors. The positive is not in the denominator, so
  // the loss can go negative.
  kPaperExact,
  // The same term plus its role-swapped counterpart (h~_i as anchor against
  // h_k), averaged over 2N anchors.
  kSymmetric,
};

struct LossConfig {
  double tau = 0.5;
  double beta = 0.5;   // clustering weight
  double gamma = 0.5;  // reconstruction weight
  double alpha = 1.0;  // Student's t degrees of freedom
  ContrastiveMode contrastive_mode = ContrastiveMode::kPaperExact;

  // Throws UsageError when tau or alpha is not positive or a weight is
  // negative.
  void validate() const;
};

struct ContrastiveLoss {
  double value = 0.0;
  Matrix grad_anchors;    // dL/dH
  Matrix grad_positives;  // dL/dH~
};

// Throws Error when N < 2, shapes differ, or a row has zero norm.
ContrastiveLoss contrastive_loss(const Matrix& anchors,
                                 const Matrix& positives,
                                 const LossConfig& config);

// KL(P || Q) = sum_i sum_k p_ik log(p_ik / q_ik), with 0 log 0 = 0.
// Throws Error when q_ik = 0 where p_ik > 0, or shapes differ.
double kl_divergence(const Matrix& p, const Matrix& q);

struct ClusteringLoss {
  double value = 0.0;
  Matrix grad_embeddings;  // dL/dH
  Matrix grad_centroids;   // dL/dmu
  Matrix q;                // soft assignment used
};

// KL(P || Q(H, mu)) with Q from the Student's t kernel. P is a constant
// target, one row per row of H.
ClusteringLoss clustering_loss(const Matrix& embeddings,
                               const Matrix& centroids, const Matrix& target,
                               double alpha);

struct ReconstructionLoss {
  double value = 0.0;
  Matrix grad_reconstruction;  // dL/dR'
};

// sum_i ||r_i - r'_i||^2, summed (not averaged) over the batch.
ReconstructionLoss reconstruction_loss(const Matrix& originals,
                                       const Matrix& reconstructions);

// L_contrastive + beta * L_clustering + gamma * L_reconstruction.
double total_loss(double contrastive, double clustering, double reconstruction,
                  const LossConfig& config);

}  // namespace cadec

#endif  // CADEC_LOSSES_H_
