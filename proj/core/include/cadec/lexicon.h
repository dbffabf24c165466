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

#ifndef CADEC_LEXICON_H_
#define CADEC_LEXICON_H_

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cadec {

// Valence, arousal, dominance on the lexicon's 1..9 scale.
struct Vad {
  double valence = 5.0;
  double arousal = 5.0;
  double dominance = 5.0;

  friend bool operator==(const Vad&, const Vad&) = default;
};

// Joy, anger, sadness, fear, disgust.
inline constexpr std::size_t kBe5Size = 5;
using Be5 = std::array<double, kBe5Size>;

inline constexpr double kVadMin = 1.0;
inline constexpr double kVadMax = 9.0;
inline constexpr double kBe5Min = 1.0;
inline constexpr double kBe5Max = 5.0;

struct EmotionEntry {
  std::string word;
  Vad vad;
  Be5 be5{};  // raw 1..5 scores

  friend bool operator==(const EmotionEntry&, const EmotionEntry&) = default;
};

// BE5 mapped onto [0, 1] by (v - 1) / 4.
Be5 normalize_be5(const EmotionEntry& entry);

class EmotionLexicon {
 public:
  EmotionLexicon() = default;

  // Adds the entry unless the word is already present. Returns false for a
  // duplicate (first occurrence wins).
  bool insert(EmotionEntry entry);

  // Exact match on the lowercased word. No stemming.
  const EmotionEntry* lookup(std::string_view word) const;

  // Entries in insertion order.
  const std::vector<EmotionEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // Rows skipped because their word was already present.
  std::size_t duplicate_count() const { return duplicates_; }
  void add_duplicate() { ++duplicates_; }

 private:
  std::vector<EmotionEntry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t duplicates_ = 0;
};

std::optional<EmotionEntry> lookup(const EmotionLexicon& lexicon,
                                   std::string_view word);

// Nine tab-separated columns: word, valence, arousal, dominance, joy, anger,
// sadness, fear, disgust. Lines starting with '#' are comments.
EmotionLexicon parse_lexicon(std::istream& in,
                             const std::string& source = "<lexicon>");
EmotionLexicon parse_lexicon(const std::filesystem::path& path);

// Shortest round-trip decimal formatting, so parse(write(x)) == x.
void write_lexicon(std::ostream& out, const EmotionLexicon& lexicon);

class SynonymTable {
 public:
  SynonymTable() = default;

  // Returns false when the word already has an entry. Throws Error when the
  // list is empty, contains the word itself, or has a multi-word phrase.
  bool insert(std::string word, std::vector<std::string> synonyms);

  // nullptr when the word has no synonyms.
  const std::vector<std::string>* find(std::string_view word) const;

  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }
  const std::vector<std::string>& words() const { return words_; }
  std::size_t duplicate_count() const { return duplicates_; }
  void add_duplicate() { ++duplicates_; }

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::vector<std::string>> table_;
  std::size_t duplicates_ = 0;
};

// Two tab-separated columns: word, comma-separated synonyms. Entries are
// lowercased, the word itself is dropped from its own list, and repeated
// synonyms collapse to the first occurrence.
SynonymTable parse_synonyms(std::istream& in,
                            const std::string& source = "<synonyms>");
SynonymTable parse_synonyms(const std::filesystem::path& path);

void write_synonyms(std::ostream& out, const SynonymTable& table);

}  // namespace cadec

#endif  // CADEC_LEXICON_H_
