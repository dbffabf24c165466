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

#ifndef CADEC_CORPUS_H_
#define CADEC_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cadec {

struct Utterance {
  std::string id;
  std::string doc_id;
  std::int64_t seq = 0;
  std::string text;
  std::optional<std::string> label;  // gold category, evaluation only

  friend bool operator==(const Utterance&, const Utterance&) = default;
};

// Lowercase word tokens with surrounding punctuation removed.
using TokenSeq = std::vector<std::string>;

// An utterance together with up to m neighbours on each side, all taken
// from the same document.
struct ContextWindow {
  std::vector<Utterance> prev;  // ascending seq, ends at center.seq - 1
  Utterance center;
  std::vector<Utterance> next;  // ascending seq, starts at center.seq + 1
};

// Utterances grouped by document and ordered by (doc_id, seq). Immutable
// once built.
class Corpus {
 public:
  Corpus() = default;

  // Validates and sorts. Throws DataError on duplicate ids, duplicate
  // (doc_id, seq) pairs, negative seq, or blank text.
  explicit Corpus(std::vector<Utterance> utterances);

  // All utterances in (doc_id, seq) order.
  const std::vector<Utterance>& utterances() const { return utterances_; }
  std::size_t size() const { return utterances_.size(); }
  bool empty() const { return utterances_.empty(); }
  std::size_t document_count() const { return doc_ranges_.size(); }

  // Index into utterances() or nullopt.
  std::optional<std::size_t> find(std::string_view id) const;
  const Utterance& at(std::string_view id) const;

  // Throws Error for an unknown id.
  ContextWindow window(std::string_view id, std::size_t m) const;
  ContextWindow window_at(std::size_t index, std::size_t m) const;

  friend bool operator==(const Corpus& a, const Corpus& b) {
    return a.utterances_ == b.utterances_;
  }

 private:
  struct Range {
    std::size_t begin;
    std::size_t end;
  };

  std::vector<Utterance> utterances_;
  std::vector<Range> doc_ranges_;
  std::vector<std::size_t> doc_of_;  // utterance index -> doc_ranges_ index
  std::unordered_map<std::string, std::size_t> by_id_;
};

// JSON Lines reader. `source` names the stream in error messages.
Corpus parse_corpus(std::istream& in, const std::string& source = "<corpus>");
Corpus load_corpus(const std::filesystem::path& path);

// Writes one JSON object per utterance in corpus order.
void write_corpus(std::ostream& out, const Corpus& corpus);

ContextWindow context_window(const Corpus& corpus, std::string_view id,
                             std::size_t m);

// Splits on Unicode whitespace, lowercases, strips leading and trailing
// punctuation, and drops tokens that end up empty.
TokenSeq tokenize(std::string_view text);

// Lowercases ASCII, Latin-1, Latin Extended-A, Greek and Cyrillic letters.
std::string to_lower(std::string_view text);

// Tokens of prev, center and next in reading order.
TokenSeq window_tokens(const ContextWindow& window);

std::string join_tokens(const TokenSeq& tokens);

}  // namespace cadec

#endif  // CADEC_CORPUS_H_
