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

#include "cadec/lexicon.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <utility>

#include "cadec/corpus.h"
#include "cadec/error.h"
#include "utf8.h"

namespace cadec {
namespace {

constexpr const char* kColumnNames[] = {"valence", "arousal", "dominance",
                                        "joy",     "anger",   "sadness",
                                        "fear",    "disgust"};

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t begin = 0;
  while (true) {
    const std::size_t end = line.find(sep, begin);
    if (end == std::string_view::npos) {
      fields.push_back(line.substr(begin));
      return fields;
    }
    fields.push_back(line.substr(begin, end - begin));
    begin = end + 1;
  }
}

std::string_view trim(std::string_view s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && (s[begin] == ' ' || s[begin] == '\t' ||
                         s[begin] == '\r' || s[begin] == '\n')) {
    ++begin;
  }
  while (end > begin && (s[end - 1] == ' ' || s[end - 1] == '\t' ||
                         s[end - 1] == '\r' || s[end - 1] == '\n')) {
    --end;
  }
  return s.substr(begin, end - begin);
}

bool has_inner_space(std::string_view s) {
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (internal::is_unicode_space(internal::decode_utf8(s, pos))) return true;
  }
  return false;
}

double parse_number(std::string_view field, const char* column,
                    const std::string& source, std::size_t line) {
  field = trim(field);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() ||
      !std::isfinite(value)) {
    throw DataError(std::string("column ") + column + ": not a number: \"" +
                        std::string(field) + "\"",
                    source, line);
  }
  return value;
}

void check_range(double value, double lo, double hi, const char* column,
                 const std::string& source, std::size_t line) {
  if (value < lo || value > hi) {
    throw DataError(std::string("column ") + column + ": value " +
                        std::to_string(value) + " outside [" +
                        std::to_string(lo) + ", " + std::to_string(hi) + "]",
                    source, line);
  }
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

bool skip_line(std::string_view line) {
  const std::string_view t = trim(line);
  return t.empty() || t.front() == '#';
}

}  // namespace

Be5 normalize_be5(const EmotionEntry& entry) {
  Be5 out;
  for (std::size_t i = 0; i < kBe5Size; ++i) {
    out[i] = (entry.be5[i] - kBe5Min) / (kBe5Max - kBe5Min);
  }
  return out;
}

bool EmotionLexicon::insert(EmotionEntry entry) {
  if (index_.contains(entry.word)) return false;
  index_.emplace(entry.word, entries_.size());
  entries_.push_back(std::move(entry));
  return true;
}

const EmotionEntry* EmotionLexicon::lookup(std::string_view word) const {
  const auto it = index_.find(to_lower(word));
  return it == index_.end() ? nullptr : &entries_[it->second];
}

std::optional<EmotionEntry> lookup(const EmotionLexicon& lexicon,
                                   std::string_view word) {
  if (const EmotionEntry* e = lexicon.lookup(word)) return *e;
  return std::nullopt;
}

EmotionLexicon parse_lexicon(std::istream& in, const std::string& source) {
  EmotionLexicon lexicon;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_line(line)) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto fields = split(line, '\t');
    if (fields.size() != 9) {
      throw DataError("expected 9 tab-separated columns, found " +
                          std::to_string(fields.size()),
                      source, line_no);
    }
    EmotionEntry entry;
    entry.word = to_lower(trim(fields[0]));
    if (entry.word.empty()) throw DataError("empty word", source, line_no);
    double values[8];
    for (std::size_t c = 0; c < 8; ++c) {
      values[c] = parse_number(fields[c + 1], kColumnNames[c], source, line_no);
      if (c < 3) {
        check_range(values[c], kVadMin, kVadMax, kColumnNames[c], source,
                    line_no);
      } else {
        check_range(values[c], kBe5Min, kBe5Max, kColumnNames[c], source,
                    line_no);
      }
    }
    entry.vad = {values[0], values[1], values[2]};
    std::copy(values + 3, values + 8, entry.be5.begin());
    if (!lexicon.insert(std::move(entry))) lexicon.add_duplicate();
  }
  return lexicon;
}

EmotionLexicon parse_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open lexicon file", path.string());
  return parse_lexicon(in, path.string());
}

void write_lexicon(std::ostream& out, const EmotionLexicon& lexicon) {
  for (const EmotionEntry& e : lexicon.entries()) {
    out << e.word << '\t' << format_double(e.vad.valence) << '\t'
        << format_double(e.vad.arousal) << '\t'
        << format_double(e.vad.dominance);
    for (double v : e.be5) out << '\t' << format_double(v);
    out << '\n';
  }
}

bool SynonymTable::insert(std::string word, std::vector<std::string> synonyms) {
  if (synonyms.empty()) throw Error("empty synonym list for " + word);
  for (const std::string& s : synonyms) {
    if (s == word) throw Error("word listed as its own synonym: " + word);
    if (s.empty() || has_inner_space(s)) {
      throw Error("synonym must be a single word: \"" + s + "\"");
    }
  }
  if (table_.contains(word)) return false;
  words_.push_back(word);
  table_.emplace(std::move(word), std::move(synonyms));
  return true;
}

const std::vector<std::string>* SynonymTable::find(
    std::string_view word) const {
  const auto it = table_.find(std::string(word));
  return it == table_.end() ? nullptr : &it->second;
}

SynonymTable parse_synonyms(std::istream& in, const std::string& source) {
  SynonymTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_line(line)) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto fields = split(line, '\t');
    if (fields.size() != 2) {
      throw DataError("expected 2 tab-separated columns, found " +
                          std::to_string(fields.size()),
                      source, line_no);
    }
    std::string word = to_lower(trim(fields[0]));
    if (word.empty()) throw DataError("empty word", source, line_no);
    std::vector<std::string> synonyms;
    for (std::string_view raw : split(fields[1], ',')) {
      std::string syn = to_lower(trim(raw));
      if (syn.empty()) continue;
      if (has_inner_space(syn)) {
        throw DataError("multi-word synonym \"" + syn + "\" for " + word,
                        source, line_no);
      }
      if (syn == word) continue;
      if (std::find(synonyms.begin(), synonyms.end(), syn) != synonyms.end()) {
        continue;
      }
      synonyms.push_back(std::move(syn));
    }
    if (synonyms.empty()) {
      throw DataError("no usable synonyms for " + word, source, line_no);
    }
    if (!table.insert(std::move(word), std::move(synonyms))) {
      table.add_duplicate();
    }
  }
  return table;
}

SynonymTable parse_synonyms(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open synonym file", path.string());
  return parse_synonyms(in, path.string());
}

void write_synonyms(std::ostream& out, const SynonymTable& table) {
  for (const std::string& word : table.words()) {
    out << word << '\t';
    const auto& syns = *table.find(word);
    for (std::size_t i = 0; i < syns.size(); ++i) {
      if (i > 0) out << ',';
      out << syns[i];
    }
    out << '\n';
  }
}

}  // namespace cadec
