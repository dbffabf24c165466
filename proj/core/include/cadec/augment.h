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

#ifndef CADEC_AUGMENT_H_
#define CADEC_AUGMENT_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "cadec/corpus.h"
#include "cadec/lexicon.h"
#include "cadec/rng.h"

namespace cadec {

struct AugmentConfig {
  std::size_t segment_len = 10;
  double top_pct = 20.0;  // in (0, 100]
  std::uint64_t seed = kDefaultSeed;

  // Throws UsageError when a field is out of range.
  void validate() const;
};

struct Replacement {
  std::size_t position;  // index into the center utterance's tokens
  std::string old_word;
  std::string new_word;

  friend bool operator==(const Replacement&, const Replacement&) = default;
};

// The positive sample: same context, center tokens with high-arousal words
// swapped for synonyms.
struct AugmentedWindow {
  ContextWindow original;
  TokenSeq original_center;
  TokenSeq augmented_center;
  std::vector<Replacement> replaced;
};

// Consecutive chunks of segment_len tokens; the last one may be shorter.
std::vector<TokenSeq> segment(const TokenSeq& tokens, std::size_t segment_len);

// Number of words to pick among `hits` lexicon words: ceil(top_pct% of hits).
std::size_t selection_count(std::size_t hits, double top_pct);

// Positions (ascending) of the highest-arousal lexicon words in the segment.
// Ties in arousal go to the leftmost position.
std::vector<std::size_t> select_targets(const TokenSeq& segment,
                                        const EmotionLexicon& lexicon,
                                        double top_pct);

// Replaces each selected token that has synonyms with a uniformly drawn one.
// Tokens without a synonym entry stay as they are and are not reported.
std::pair<TokenSeq, std::vector<Replacement>> substitute(
    const TokenSeq& tokens, const std::vector<std::size_t>& positions,
    const SynonymTable& synonyms, Rng& rng);

// Augments the center utterance only. The random stream is derived from
// (config.seed, center id), so results do not depend on call order.
AugmentedWindow augment_window(const ContextWindow& window,
                               const EmotionLexicon& lexicon,
                               const SynonymTable& synonyms,
                               const AugmentConfig& config);

// Every utterance of the corpus as a JSON Lines record extended with
// "aug_text" and "replaced".
void write_augmented_corpus(std::ostream& out, const Corpus& corpus,
                            const EmotionLexicon& lexicon,
                            const SynonymTable& synonyms,
                            const AugmentConfig& config);

// Flattened tokens of the augmented window (context plus augmented center).
TokenSeq window_tokens(const AugmentedWindow& window);

}  // namespace cadec

#endif  // CADEC_AUGMENT_H_
