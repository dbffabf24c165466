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

#include "cadec/train.h"

#include <charconv>
#include <chrono>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <utility>

#include "cadec/cluster.h"
#include "cadec/error.h"
#include "parallel.h"

namespace cadec {
namespace {

Matrix gather_rows(const Matrix& m, std::span<const std::size_t> rows) {
  Matrix out(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) =
        m.row(static_cast<Eigen::Index>(rows[i]));
  }
  return out;
}

AugmentConfig augment_for_round(const AugmentConfig& base,
                                std::uint64_t round) {
  AugmentConfig config = base;
  if (round > 0) config.seed = derive_seed(base.seed, round);
  return config;
}

void check_dataset(const PairDataset& dataset, const TrainConfig& config) {
  if (dataset.originals.rows() != dataset.augmented.rows() ||
      dataset.originals.cols() != dataset.augmented.cols() ||
      static_cast<std::size_t>(dataset.originals.rows()) != dataset.size()) {
    throw Error("pair dataset is inconsistent");
  }
  for (const Matrix* m : {&dataset.originals, &dataset.augmented}) {
    for (Eigen::Index i = 0; i < m->rows(); ++i) {
      if (!m->row(i).allFinite()) {
        throw NumericError("non-finite input embedding for " +
                           dataset.ids[static_cast<std::size_t>(i)]);
      }
    }
  }
  if (dataset.size() < config.batch_size) {
    throw Error("dataset has " + std::to_string(dataset.size()) +
                " pairs, fewer than one batch of " +
                std::to_string(config.batch_size));
  }
}

void check_loss(double value, const char* what, std::size_t epoch,
                std::size_t batch) {
  if (!std::isfinite(value)) {
    throw NumericError(std::string("non-finite ") + what + " at epoch " +
                       std::to_string(epoch) + ", batch " +
                       std::to_string(batch));
  }
}

std::string format_value(const std::optional<double>& v) {
  if (!v) return "-";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), *v);
  return std::string(buf, ptr);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

// Parameter views for Adam: encoder, then decoder, then centroids.
struct Trainables {
  std::vector<std::span<double>> params;
  std::vector<std::span<const double>> grads;
};

void append(Trainables& t, Mlp& params, const Mlp& grads) {
  for (auto s : params.parameters()) t.params.push_back(s);
  for (auto s : grads.parameters()) t.grads.push_back(s);
}

void add_into(Mlp& acc, const Mlp& other) {
  for (std::size_t l = 0; l < acc.layer_count(); ++l) {
    acc.layers()[l].weight += other.layers()[l].weight;
    acc.layers()[l].bias += other.layers()[l].bias;
  }
}

}  // namespace

void TrainConfig::validate() const {
  if (batch_size < 2) throw UsageError("batch_size must be >= 2");
  if (!(lr > 0.0)) throw UsageError("lr must be > 0");
  if (!(convergence_delta > 0.0 && convergence_delta < 1.0)) {
    throw UsageError("convergence_delta must be in (0, 1)");
  }
  if (clusters < 1) throw UsageError("clusters must be >= 1");
  if (embedding_dim < 1) throw UsageError("embedding_dim must be >= 1");
  for (std::size_t d : hidden_dims) {
    if (d < 1) throw UsageError("hidden dims must be >= 1");
  }
  loss.validate();
  augment.validate();
}

std::vector<std::size_t> TrainConfig::encoder_dims(
    std::size_t input_dim) const {
  std::vector<std::size_t> dims{input_dim};
  dims.insert(dims.end(), hidden_dims.begin(), hidden_dims.end());
  dims.push_back(embedding_dim);
  return dims;
}

Matrix augmented_embeddings(const Corpus& corpus,
                            const EmotionLexicon& lexicon,
                            const SynonymTable& synonyms,
                            const BackboneProvider& backbone,
                            const TrainConfig& config, std::uint64_t round) {
  const AugmentConfig aug = augment_for_round(config.augment, round);
  const auto width = static_cast<Eigen::Index>(backbone.dim() + kBe5Size);
  Matrix out(static_cast<Eigen::Index>(corpus.size()), width);
  internal::parallel_for(corpus.size(), config.threads, [&](std::size_t i) {
    const ContextWindow window = corpus.window_at(i, config.context);
    const AugmentedWindow augmented =
        augment_window(window, lexicon, synonyms, aug);
    out.row(static_cast<Eigen::Index>(i)) =
        initial_embedding(augmented, backbone, lexicon).values.transpose();
  });
  return out;
}

PairDataset make_pairs(const Corpus& corpus, const EmotionLexicon& lexicon,
                       const SynonymTable& synonyms,
                       const BackboneProvider& backbone,
                       const TrainConfig& config, std::uint64_t round) {
  if (corpus.empty()) throw Error("make_pairs: corpus is empty");
  PairDataset dataset;
  const auto width = static_cast<Eigen::Index>(backbone.dim() + kBe5Size);
  dataset.originals.resize(static_cast<Eigen::Index>(corpus.size()), width);
  for (const Utterance& u : corpus.utterances()) {
    dataset.ids.push_back(u.id);
    dataset.labels.push_back(u.label);
  }
  internal::parallel_for(corpus.size(), config.threads, [&](std::size_t i) {
    const ContextWindow window = corpus.window_at(i, config.context);
    dataset.originals.row(static_cast<Eigen::Index>(i)) =
        initial_embedding(window, backbone, lexicon).values.transpose();
  });
  dataset.augmented =
      augmented_embeddings(corpus, lexicon, synonyms, backbone, config, round);
  return dataset;
}

std::string format_epoch_log(const EpochLog& log) {
  return "epoch=" + std::to_string(log.epoch) +
         " L_c=" + format_value(log.contrastive) +
         " L_k=" + format_value(log.clustering) +
         " L_r=" + format_value(log.reconstruction) +
         " L_total=" + format_value(log.total) +
         " delta=" + format_value(log.delta);
}

std::vector<std::size_t> epoch_order(std::size_t count, std::uint64_t seed,
                                     std::size_t epoch) {
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(derive_seed(derive_seed(seed, "batches"), epoch));
  rng.shuffle(order);
  return order;
}

StageResult stage1(const PairDataset& dataset, const TrainConfig& config,
                   const TrainHooks& hooks) {
  config.validate();
  const auto input_dim = static_cast<std::size_t>(dataset.originals.cols());
  return stage1(dataset,
                init_autoencoder(config.encoder_dims(input_dim), config.seed),
                config, hooks);
}

StageResult stage1(const PairDataset& input, const Autoencoder& initial,
                   const TrainConfig& config, const TrainHooks& hooks) {
  config.validate();
  check_dataset(input, config);
  if (static_cast<std::size_t>(input.originals.cols()) !=
      initial.input_dim()) {
    throw Error("model input dim does not match the dataset");
  }
  const auto start = std::chrono::steady_clock::now();
  PairDataset dataset = input;
  StageResult result;
  result.checkpoint.model = initial;
  result.checkpoint.centroids.resize(0,
      static_cast<Eigen::Index>(initial.embedding_dim()));
  Mlp& encoder = result.checkpoint.model.encoder;
  AdamState adam;
  const std::size_t batches = dataset.size() / config.batch_size;

  for (std::size_t epoch = 1; epoch <= config.stage1_epochs; ++epoch) {
    if (epoch > 1 && config.reaugment_each_epoch && hooks.reaugment) {
      hooks.reaugment(epoch, dataset);
    }
    const auto order = epoch_order(dataset.size(), config.seed, epoch);
    double loss_sum = 0.0;
    for (std::size_t b = 0; b < batches; ++b) {
      const std::span<const std::size_t> rows(
          order.data() + b * config.batch_size, config.batch_size);
      const ForwardCache anchor = forward(encoder, gather_rows(dataset.originals, rows));
      const ForwardCache positive =
          forward(encoder, gather_rows(dataset.augmented, rows));
      const ContrastiveLoss loss =
          contrastive_loss(anchor.output, positive.output, config.loss);
      check_loss(loss.value, "contrastive loss", epoch, b + 1);
      MlpGradients grads = backward(encoder, anchor, loss.grad_anchors);
      add_into(grads.params, backward(encoder, positive, loss.grad_positives).params);
      Trainables t;
      append(t, encoder, grads.params);
      adam_step(t.params, t.grads, adam, config.lr);
      loss_sum += loss.value;
    }
    EpochLog log;
    log.epoch = epoch;
    log.contrastive = loss_sum / static_cast<double>(batches);
    log.total = log.contrastive;
    result.report.epochs.push_back(log);
    if (hooks.on_epoch) hooks.on_epoch(log);
  }
  result.report.seconds = seconds_since(start);
  return result;
}

StageResult stage2(const PairDataset& input, const Checkpoint& stage1_ckpt,
                   const TrainConfig& config, const TrainHooks& hooks) {
  config.validate();
  check_dataset(input, config);
  if (static_cast<std::size_t>(input.originals.cols()) !=
      stage1_ckpt.model.input_dim()) {
    throw Error("checkpoint input dim does not match the dataset");
  }
  if (input.size() < config.clusters) {
    throw Error("stage2: N = " + std::to_string(input.size()) +
                " is smaller than K = " + std::to_string(config.clusters));
  }
  const auto start = std::chrono::steady_clock::now();
  PairDataset dataset = input;
  StageResult result;
  result.checkpoint.model = stage1_ckpt.model;
  Autoencoder& model = result.checkpoint.model;
  Matrix& centroids = result.checkpoint.centroids;

  centroids = kmeans_init(encode(model, dataset.originals), config.clusters,
                          derive_seed(config.seed, "kmeans"),
                          config.kmeans_max_iter);
  result.report.kmeans_labels =
      nearest_centroid(encode(model, dataset.originals), centroids);

  AdamState adam;
  const std::size_t batches = dataset.size() / config.batch_size;
  std::vector<std::size_t> previous = result.report.kmeans_labels;

  for (std::size_t epoch = 1; epoch <= config.stage2_max_epochs; ++epoch) {
    if (epoch > 1 && config.reaugment_each_epoch && hooks.reaugment) {
      hooks.reaugment(epoch, dataset);
    }
    const Matrix q_all =
        soft_assign(encode(model, dataset.originals), centroids,
                    config.loss.alpha);
    const Matrix p_all = target_distribution(q_all);
    const std::vector<std::size_t> labels = hard_labels(q_all);
    EpochLog log;
    log.epoch = epoch;
    if (epoch > 1) {
      const double delta = assignment_delta(previous, labels);
      result.report.deltas.push_back(delta);
      log.delta = delta;
      if (has_converged(delta, config.convergence_delta)) {
        result.report.converged = true;
        result.report.epochs.push_back(log);
        if (hooks.on_epoch) hooks.on_epoch(log);
        break;
      }
    }
    previous = labels;

    const auto order = epoch_order(dataset.size(), config.seed, epoch);
    double sum_c = 0.0, sum_k = 0.0, sum_r = 0.0, sum_total = 0.0;
    for (std::size_t b = 0; b < batches; ++b) {
      const std::span<const std::size_t> rows(
          order.data() + b * config.batch_size, config.batch_size);
      const Matrix r_batch = gather_rows(dataset.originals, rows);
      const ForwardCache anchor = forward(model.encoder, r_batch);
      const ForwardCache positive =
          forward(model.encoder, gather_rows(dataset.augmented, rows));
      const ContrastiveLoss lc =
          contrastive_loss(anchor.output, positive.output, config.loss);
      const ClusteringLoss lk =
          clustering_loss(anchor.output, centroids, gather_rows(p_all, rows),
                          config.loss.alpha);
      const ForwardCache recon = forward(model.decoder, anchor.output);
      const ReconstructionLoss lr = reconstruction_loss(r_batch, recon.output);
      const double total =
          total_loss(lc.value, lk.value, lr.value, config.loss);
      check_loss(total, "total loss", epoch, b + 1);

      const MlpGradients decoder_grads = backward(
          model.decoder, recon, config.loss.gamma * lr.grad_reconstruction);
      const Matrix grad_h = lc.grad_anchors +
                            config.loss.beta * lk.grad_embeddings +
                            decoder_grads.input;
      MlpGradients encoder_grads = backward(model.encoder, anchor, grad_h);
      add_into(encoder_grads.params,
               backward(model.encoder, positive, lc.grad_positives).params);
      const Matrix grad_centroids = config.loss.beta * lk.grad_centroids;

      Trainables t;
      append(t, model.encoder, encoder_grads.params);
      append(t, model.decoder, decoder_grads.params);
      t.params.emplace_back(centroids.data(),
                            static_cast<std::size_t>(centroids.size()));
      t.grads.emplace_back(grad_centroids.data(),
                           static_cast<std::size_t>(grad_centroids.size()));
      adam_step(t.params, t.grads, adam, config.lr);

      sum_c += lc.value;
      sum_k += lk.value;
      sum_r += lr.value;
      sum_total += total;
    }
    const double n = static_cast<double>(batches);
    log.contrastive = sum_c / n;
    log.clustering = sum_k / n;
    log.reconstruction = sum_r / n;
    log.total = sum_total / n;
    result.report.epochs.push_back(log);
    if (hooks.on_epoch) hooks.on_epoch(log);
  }
  result.report.seconds = seconds_since(start);
  return result;
}

}  // namespace cadec
