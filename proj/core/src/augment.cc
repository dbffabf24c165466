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

#include "cadec/augment.h"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "cadec/error.h"
#include "json_util.h"

namespace cadec {

void AugmentConfig::validate() const {
  if (segment_len < 1) throw UsageError("segment_len must be >= 1");
  if (!(top_pct > 0.0 && top_pct <= 100.0)) {
    throw UsageError("top_pct must be in (0, 100]");
  }
}

std::vector<TokenSeq> segment(const TokenSeq& tokens,
                              std::size_t segment_len) {
  if (segment_len < 1) throw UsageError("segment_len must be >= 1");
  std::vector<TokenSeq> segments;
  for (std::size_t begin = 0; begin < tokens.size(); begin += segment_len) {
    const std::size_t end = std::min(tokens.size(), begin + segment_len);
    segments.emplace_back(tokens.begin() + static_cast<std::ptrdiff_t>(begin),
                          tokens.begin() + static_cast<std::ptrdiff_t>(end));
  }
  return segments;
}

std::size_t selection_count(std::size_t hits, double top_pct) {
  if (hits == 0) return 0;
  // top_pct * hits first: for integral percentages the product is exact and
  // the division by 100 only rounds when the result is not an integer.
  const double want = std::ceil(top_pct * static_cast<double>(hits) / 100.0);
  return std::min(hits, static_cast<std::size_t>(want));
}

std::vector<std::size_t> select_targets(const TokenSeq& segment,
                                        const EmotionLexicon& lexicon,
                                        double top_pct) {
  struct Hit {
    std::size_t position;
    double arousal;
  };
  std::vector<Hit> hits;
  for (std::size_t i = 0; i < segment.size(); ++i) {
    if (const EmotionEntry* e = lexicon.lookup(segment[i])) {
      hits.push_back({i, e->vad.arousal});
    }
  }
  const std::size_t take = selection_count(hits.size(), top_pct);
  std::stable_sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
    return a.arousal > b.arousal;
  });
  std::vector<std::size_t> positions;
  for (std::size_t i = 0; i < take; ++i) positions.push_back(hits[i].position);
  std::sort(positions.begin(), positions.end());
  return positions;
}

std::pair<TokenSeq, std::vector<Replacement>> substitute(
    const TokenSeq& tokens, const std::vector<std::size_t>& positions,
    const SynonymTable& synonyms, Rng& rng) {
  TokenSeq out = tokens;
  std::vector<Replacement> replaced;
  for (std::size_t pos : positions) {
    if (pos >= tokens.size()) {
      throw Error("substitution position " + std::to_string(pos) +
                  " out of range");
    }
    const auto* candidates = synonyms.find(tokens[pos]);
    if (candidates == nullptr) continue;
    out[pos] = (*candidates)[rng.index(candidates->size())];
    replaced.push_back({pos, tokens[pos], out[pos]});
  }
  return {std::move(out), std::move(replaced)};
}

AugmentedWindow augment_window(const ContextWindow& window,
                               const EmotionLexicon& lexicon,
                               const SynonymTable& synonyms,
                               const AugmentConfig& config) {
  config.validate();
  AugmentedWindow result;
  result.original = window;
  result.original_center = tokenize(window.center.text);
  result.augmented_center = result.original_center;
  Rng rng(derive_seed(config.seed, window.center.id));
  std::size_t offset = 0;
  for (const TokenSeq& seg : segment(result.original_center,
                                     config.segment_len)) {
    const auto positions = select_targets(seg, lexicon, config.top_pct);
    auto [tokens, replaced] = substitute(seg, positions, synonyms, rng);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      result.augmented_center[offset + i] = std::move(tokens[i]);
    }
    for (Replacement& r : replaced) {
      r.position += offset;
      result.replaced.push_back(std::move(r));
    }
    offset += seg.size();
  }
  return result;
}

void write_augmented_corpus(std::ostream& out, const Corpus& corpus,
                            const EmotionLexicon& lexicon,
                            const SynonymTable& synonyms,
                            const AugmentConfig& config) {
  config.validate();
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    // Context does not influence the center's augmentation.
    const AugmentedWindow aug =
        augment_window(corpus.window_at(i, 0), lexicon, synonyms, config);
    auto obj = internal::utterance_to_json(corpus.utterances()[i]);
    obj["aug_text"] = join_tokens(aug.augmented_center);
    auto replaced = nlohmann::ordered_json::array();
    for (const Replacement& r : aug.replaced) {
      nlohmann::ordered_json rep;
      rep["pos"] = r.position;
      rep["old"] = r.old_word;
      rep["new"] = r.new_word;
      replaced.push_back(std::move(rep));
    }
    obj["replaced"] = std::move(replaced);
    out << obj.dump() << '\n';
  }
}

TokenSeq window_tokens(const AugmentedWindow& window) {
  TokenSeq all;
  for (const Utterance& u : window.original.prev) {
    TokenSeq t = tokenize(u.text);
    all.insert(all.end(), t.begin(), t.end());
  }
  all.insert(all.end(), window.augmented_center.begin(),
             window.augmented_center.end());
  for (const Utterance& u : window.original.next) {
    TokenSeq t = tokenize(u.text);
    all.insert(all.end(), t.begin(), t.end());
  }
  return all;
}

}  // namespace cadec
