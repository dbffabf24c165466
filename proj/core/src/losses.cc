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

#include "cadec/losses.h"

#include <cmath>
#include <string>

#include "cadec/cluster.h"
#include "cadec/error.h"

namespace cadec {
namespace {

// Rows scaled to unit length, plus the original norms.
Matrix normalize_rows(const Matrix& m, Vector& norms, const char* what) {
  norms = m.rowwise().norm();
  for (Eigen::Index i = 0; i < norms.size(); ++i) {
    if (!std::isfinite(norms[i])) {
      throw NumericError(std::string("contrastive_loss: non-finite row ") +
                         std::to_string(i) + " in " + what);
    }
    if (!(norms[i] > 0.0)) {
      throw Error(std::string("contrastive_loss: zero-norm row ") +
                  std::to_string(i) + " in " + what);
    }
  }
  return norms.cwiseInverse().asDiagonal() * m;
}

// Gradient through u = h / |h|: (g - u (u . g)) / |h|.
Matrix through_normalization(const Matrix& unit, const Vector& norms,
                             const Matrix& grad_unit) {
  const Vector dots = unit.cwiseProduct(grad_unit).rowwise().sum();
  Matrix out = grad_unit - dots.asDiagonal() * unit;
  return norms.cwiseInverse().asDiagonal() * out;
}

// Sum over rows of the per-anchor term for similarity matrix `sim` (anchor
// i against candidates k, positive on the diagonal). Fills dTerm/dSim.
double anchor_terms(const Matrix& sim, double tau, Matrix& grad) {
  const Eigen::Index n = sim.rows();
  grad.setZero(n, n);
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double max_logit = -INFINITY;
    for (Eigen::Index k = 0; k < n; ++k) {
      if (k != i) max_logit = std::max(max_logit, sim(i, k) / tau);
    }
    double denom = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      if (k != i) denom += std::exp(sim(i, k) / tau - max_logit);
    }
    total += -sim(i, i) / tau + max_logit + std::log(denom);
    for (Eigen::Index k = 0; k < n; ++k) {
      grad(i, k) = k == i ? -1.0 / tau
                          : std::exp(sim(i, k) / tau - max_logit) /
                                (denom * tau);
    }
  }
  return total;
}

}  // namespace

void LossConfig::validate() const {
  if (!(tau > 0.0)) throw UsageError("tau must be > 0");
  if (!(alpha > 0.0)) throw UsageError("alpha must be > 0");
  if (!(beta >= 0.0)) throw UsageError("beta must be >= 0");
  if (!(gamma >= 0.0)) throw UsageError("gamma must be >= 0");
}

ContrastiveLoss contrastive_loss(const Matrix& anchors,
                                 const Matrix& positives,
                                 const LossConfig& config) {
  if (anchors.rows() != positives.rows() ||
      anchors.cols() != positives.cols()) {
    throw Error("contrastive_loss: anchor and positive shapes differ");
  }
  const Eigen::Index n = anchors.rows();
  if (n < 2) throw Error("contrastive_loss: need N >= 2 to have negatives");
  Vector anchor_norms;
  Vector positive_norms;
  const Matrix u = normalize_rows(anchors, anchor_norms, "anchors");
  const Matrix v = normalize_rows(positives, positive_norms, "positives");
  const Matrix sim = u * v.transpose();

  ContrastiveLoss out;
  Matrix grad_sim;
  Matrix grad_forward;
  const double forward_sum = anchor_terms(sim, config.tau, grad_forward);
  if (config.contrastive_mode == ContrastiveMode::kPaperExact) {
    out.value = forward_sum / static_cast<double>(n);
    grad_sim = grad_forward / static_cast<double>(n);
  } else {
    Matrix grad_swapped;
    const Matrix sim_t = sim.transpose();
    const double swapped_sum = anchor_terms(sim_t, config.tau, grad_swapped);
    const double scale = 1.0 / (2.0 * static_cast<double>(n));
    out.value = (forward_sum + swapped_sum) * scale;
    grad_sim = (grad_forward + grad_swapped.transpose()) * scale;
  }
  out.grad_anchors =
      through_normalization(u, anchor_norms, grad_sim * v);
  out.grad_positives =
      through_normalization(v, positive_norms, grad_sim.transpose() * u);
  return out;
}

double kl_divergence(const Matrix& p, const Matrix& q) {
  if (p.rows() != q.rows() || p.cols() != q.cols()) {
    throw Error("kl_divergence: P and Q shapes differ");
  }
  double total = 0.0;
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    for (Eigen::Index k = 0; k < p.cols(); ++k) {
      const double pik = p(i, k);
      if (pik == 0.0) continue;
      if (q(i, k) <= 0.0) {
        throw Error("kl_divergence: q is zero where p is positive at (" +
                    std::to_string(i) + ", " + std::to_string(k) + ")");
      }
      total += pik * std::log(pik / q(i, k));
    }
  }
  return total;
}

ClusteringLoss clustering_loss(const Matrix& embeddings,
                               const Matrix& centroids, const Matrix& target,
                               double alpha) {
  if (target.rows() != embeddings.rows() ||
      target.cols() != centroids.rows()) {
    throw Error("clustering_loss: target must be N x K");
  }
  ClusteringLoss out;
  out.q = soft_assign(embeddings, centroids, alpha);
  out.value = kl_divergence(target, out.q);

  // d(-sum_k p_ik log q_ik)/d(log kernel_ik) = -p_ik + q_ik * sum_k p_ik and
  // d(log kernel)/d(dist^2) = -(alpha + 1) / (2 (alpha + dist^2)).
  const Eigen::Index n = embeddings.rows();
  const Eigen::Index k_count = centroids.rows();
  out.grad_embeddings.setZero(n, embeddings.cols());
  out.grad_centroids.setZero(k_count, centroids.cols());
  for (Eigen::Index i = 0; i < n; ++i) {
    const double row_mass = target.row(i).sum();
    for (Eigen::Index k = 0; k < k_count; ++k) {
      const auto diff = embeddings.row(i) - centroids.row(k);
      const double dist2 = diff.squaredNorm();
      const double coeff = (alpha + 1.0) / (alpha + dist2) *
                           (target(i, k) - out.q(i, k) * row_mass);
      out.grad_embeddings.row(i) += coeff * diff;
      out.grad_centroids.row(k) -= coeff * diff;
    }
  }
  return out;
}

ReconstructionLoss reconstruction_loss(const Matrix& originals,
                                       const Matrix& reconstructions) {
  if (originals.rows() != reconstructions.rows() ||
      originals.cols() != reconstructions.cols()) {
    throw Error("reconstruction_loss: shapes differ");
  }
  const Matrix diff = reconstructions - originals;
  return {diff.squaredNorm(), 2.0 * diff};
}

double total_loss(double contrastive, double clustering, double reconstruction,
                  const LossConfig& config) {
  return contrastive + config.beta * clustering +
         config.gamma * reconstruction;
}

}  // namespace cadec
