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

#ifndef CADEC_TRAIN_H_
#define CADEC_TRAIN_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cadec/augment.h"
#include "cadec/checkpoint.h"
#include "cadec/corpus.h"
#include "cadec/embed.h"
#include "cadec/lexicon.h"
#include "cadec/losses.h"
#include "cadec/model.h"
#include "cadec/rng.h"

namespace cadec {

struct TrainConfig {
  std::size_t batch_size = 32;
  double lr = 1e-6;
  std::size_t stage1_epochs = 1000;
  std::size_t stage2_max_epochs = 500;
  double convergence_delta = 0.001;
  std::uint64_t seed = kDefaultSeed;
  LossConfig loss;
  std::size_t clusters = 5;
  std::size_t context = 1;  // m utterances on each side
  AugmentConfig augment;
  std::vector<std::size_t> hidden_dims = {256};
  std::size_t embedding_dim = 64;
  bool reaugment_each_epoch = false;
  std::size_t kmeans_max_iter = 100;
  std::size_t threads = 1;

  // Throws UsageError for out-of-range values.
  void validate() const;

  // [input_dim, hidden..., embedding_dim]
  std::vector<std::size_t> encoder_dims(std::size_t input_dim) const;
};

// Cached initial embeddings of every utterance and its augmented twin.
// Row i of both matrices belongs to ids[i].
struct PairDataset {
  std::vector<std::string> ids;
  std::vector<std::optional<std::string>> labels;
  Matrix originals;  // D x (d_b + 5)
  Matrix augmented;  // D x (d_b + 5)

  std::size_t size() const { return ids.size(); }
};

// Embeds every window of the corpus and its augmentation. `round` > 0
// re-seeds the augmentation (used for per-epoch re-augmentation).
PairDataset make_pairs(const Corpus& corpus, const EmotionLexicon& lexicon,
                       const SynonymTable& synonyms,
                       const BackboneProvider& backbone,
                       const TrainConfig& config, std::uint64_t round = 0);

// Only the augmented side, for re-augmentation.
Matrix augmented_embeddings(const Corpus& corpus,
                            const EmotionLexicon& lexicon,
                            const SynonymTable& synonyms,
                            const BackboneProvider& backbone,
                            const TrainConfig& config, std::uint64_t round);

// Absent components print as "-".
struct EpochLog {
  std::size_t epoch = 0;
  std::optional<double> contrastive;
  std::optional<double> clustering;
  std::optional<double> reconstruction;
  std::optional<double> total;
  std::optional<double> delta;
};

// "epoch=<n> L_c=<v> L_k=<v> L_r=<v> L_total=<v> delta=<v>"
std::string format_epoch_log(const EpochLog& log);

struct TrainReport {
  std::vector<EpochLog> epochs;
  std::vector<double> deltas;  // one per convergence check
  double seconds = 0.0;
  bool converged = false;
  std::vector<std::size_t> kmeans_labels;  // Stage 2 only
  std::string checkpoint_path;             // filled in by the caller
};

struct TrainHooks {
  std::function<void(const EpochLog&)> on_epoch;
  // Called before every epoch after the first when
  // TrainConfig::reaugment_each_epoch is set; must refill dataset.augmented.
  std::function<void(std::size_t epoch, PairDataset& dataset)> reaugment;
};

struct StageResult {
  Checkpoint checkpoint;
  TrainReport report;
};

// Contrastive pre-training of the encoder from freshly initialized weights.
StageResult stage1(const PairDataset& dataset, const TrainConfig& config,
                   const TrainHooks& hooks = {});
// Same, continuing from `initial`.
StageResult stage1(const PairDataset& dataset, const Autoencoder& initial,
                   const TrainConfig& config, const TrainHooks& hooks = {});

// Joint objective: k-means centroids on the Stage-1 embeddings, then per
// epoch full-data Q, P = target(Q), the convergence check (from the second
// epoch on), and minibatch updates of encoder, decoder and centroids.
StageResult stage2(const PairDataset& dataset, const Checkpoint& stage1,
                   const TrainConfig& config, const TrainHooks& hooks = {});

// Minibatch order for one epoch; shared by both stages so equal seeds give
// equal batches.
std::vector<std::size_t> epoch_order(std::size_t count, std::uint64_t seed,
                                     std::size_t epoch);

}  // namespace cadec

#endif  // CADEC_TRAIN_H_
