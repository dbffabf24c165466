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

#include "cadec/corpus.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <utility>

#include <json.hpp>

#include "cadec/error.h"
#include "json_util.h"
#include "utf8.h"

namespace cadec {
namespace {

using internal::decode_utf8;

bool is_blank(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (!internal::is_unicode_space(decode_utf8(text, pos))) return false;
  }
  return true;
}

std::string strip_punct(std::string_view word) {
  std::size_t begin = 0;
  std::size_t end = word.size();
  // Leading.
  while (begin < end) {
    std::size_t pos = begin;
    if (!internal::is_unicode_punct(decode_utf8(word, pos))) break;
    begin = pos;
  }
  // Trailing: walk forward and remember where the last non-punct run ends.
  std::size_t last_keep = begin;
  std::size_t pos = begin;
  while (pos < end) {
    const char32_t cp = decode_utf8(word, pos);
    if (!internal::is_unicode_punct(cp)) last_keep = pos;
  }
  return std::string(word.substr(begin, last_keep - begin));
}

const std::string& required_string(const nlohmann::json& obj, const char* key,
                                   const std::string& source,
                                   std::size_t line) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    throw DataError(std::string("missing required field \"") + key + "\"",
                    source, line);
  }
  if (!it->is_string()) {
    throw DataError(std::string("field \"") + key + "\" must be a string",
                    source, line);
  }
  return it->get_ref<const std::string&>();
}

}  // namespace

namespace internal {

nlohmann::ordered_json utterance_to_json(const Utterance& u) {
  nlohmann::ordered_json obj;
  obj["id"] = u.id;
  obj["doc_id"] = u.doc_id;
  obj["seq"] = u.seq;
  obj["text"] = u.text;
  if (u.label) obj["label"] = *u.label;
  return obj;
}

}  // namespace internal

Corpus::Corpus(std::vector<Utterance> utterances)
    : utterances_(std::move(utterances)) {
  for (const Utterance& u : utterances_) {
    if (u.seq < 0) throw DataError("negative seq for utterance " + u.id);
    if (is_blank(u.text)) throw DataError("blank text for utterance " + u.id);
  }
  std::stable_sort(utterances_.begin(), utterances_.end(),
                   [](const Utterance& a, const Utterance& b) {
                     if (a.doc_id != b.doc_id) return a.doc_id < b.doc_id;
                     return a.seq < b.seq;
                   });
  doc_of_.resize(utterances_.size());
  for (std::size_t i = 0; i < utterances_.size(); ++i) {
    const Utterance& u = utterances_[i];
    if (i > 0 && utterances_[i - 1].doc_id == u.doc_id) {
      if (utterances_[i - 1].seq == u.seq) {
        throw DataError("duplicate (doc_id, seq) = (" + u.doc_id + ", " +
                        std::to_string(u.seq) + ")");
      }
      ++doc_ranges_.back().end;
    } else {
      doc_ranges_.push_back({i, i + 1});
    }
    doc_of_[i] = doc_ranges_.size() - 1;
    if (!by_id_.emplace(u.id, i).second) {
      throw DataError("duplicate utterance id " + u.id);
    }
  }
}

std::optional<std::size_t> Corpus::find(std::string_view id) const {
  const auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

const Utterance& Corpus::at(std::string_view id) const {
  const auto index = find(id);
  if (!index) throw Error("unknown utterance id: " + std::string(id));
  return utterances_[*index];
}

ContextWindow Corpus::window(std::string_view id, std::size_t m) const {
  const auto index = find(id);
  if (!index) throw Error("unknown utterance id: " + std::string(id));
  return window_at(*index, m);
}

// A gap in seq numbering is treated like a document boundary, so every
// neighbour's seq is contiguous with the center's.
ContextWindow Corpus::window_at(std::size_t index, std::size_t m) const {
  const Range range = doc_ranges_.at(doc_of_.at(index));
  ContextWindow w;
  w.center = utterances_[index];
  std::size_t first = index;
  while (first > range.begin && index - first < m &&
         utterances_[first - 1].seq == utterances_[first].seq - 1) {
    --first;
  }
  for (std::size_t i = first; i < index; ++i) w.prev.push_back(utterances_[i]);
  std::size_t last = index;
  while (last + 1 < range.end && last - index < m &&
         utterances_[last + 1].seq == utterances_[last].seq + 1) {
    ++last;
  }
  for (std::size_t i = index + 1; i <= last; ++i) {
    w.next.push_back(utterances_[i]);
  }
  return w;
}

Corpus parse_corpus(std::istream& in, const std::string& source) {
  std::vector<Utterance> utterances;
  std::map<std::pair<std::string, std::int64_t>, std::size_t> seen_pos;
  std::map<std::string, std::size_t> seen_id;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank(line)) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw DataError(std::string("invalid JSON: ") + e.what(), source,
                      line_no);
    }
    if (!obj.is_object()) {
      throw DataError("record must be a JSON object", source, line_no);
    }
    Utterance u;
    u.id = required_string(obj, "id", source, line_no);
    u.doc_id = required_string(obj, "doc_id", source, line_no);
    u.text = required_string(obj, "text", source, line_no);
    const auto seq = obj.find("seq");
    if (seq == obj.end()) {
      throw DataError("missing required field \"seq\"", source, line_no);
    }
    if (!seq->is_number_integer() || seq->get<std::int64_t>() < 0) {
      throw DataError("field \"seq\" must be a non-negative integer", source,
                      line_no);
    }
    u.seq = seq->get<std::int64_t>();
    if (const auto label = obj.find("label");
        label != obj.end() && !label->is_null()) {
      if (!label->is_string()) {
        throw DataError("field \"label\" must be a string", source, line_no);
      }
      u.label = label->get<std::string>();
    }
    if (is_blank(u.text)) {
      throw DataError("field \"text\" is blank", source, line_no);
    }
    if (const auto [it, fresh] = seen_id.emplace(u.id, line_no); !fresh) {
      throw DataError("duplicate id \"" + u.id + "\" (first seen on line " +
                          std::to_string(it->second) + ")",
                      source, line_no);
    }
    if (const auto [it, fresh] =
            seen_pos.emplace(std::make_pair(u.doc_id, u.seq), line_no);
        !fresh) {
      throw DataError("duplicate (doc_id, seq) = (" + u.doc_id + ", " +
                          std::to_string(u.seq) + ") (first seen on line " +
                          std::to_string(it->second) + ")",
                      source, line_no);
    }
    utterances.push_back(std::move(u));
  }
  return Corpus(std::move(utterances));
}

Corpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus file", path.string());
  return parse_corpus(in, path.string());
}

void write_corpus(std::ostream& out, const Corpus& corpus) {
  for (const Utterance& u : corpus.utterances()) {
    out << internal::utterance_to_json(u).dump() << '\n';
  }
}

ContextWindow context_window(const Corpus& corpus, std::string_view id,
                             std::size_t m) {
  return corpus.window(id, m);
}

std::string to_lower(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    internal::append_utf8(out, internal::to_lower_cp(decode_utf8(text, pos)));
  }
  return out;
}

TokenSeq tokenize(std::string_view text) {
  TokenSeq tokens;
  std::size_t pos = 0;
  std::size_t word_begin = 0;
  bool in_word = false;
  const auto flush = [&](std::size_t word_end) {
    std::string token =
        strip_punct(to_lower(text.substr(word_begin, word_end - word_begin)));
    if (!token.empty()) tokens.push_back(std::move(token));
  };
  while (pos < text.size()) {
    const std::size_t start = pos;
    const bool space = internal::is_unicode_space(decode_utf8(text, pos));
    if (space && in_word) {
      flush(start);
      in_word = false;
    } else if (!space && !in_word) {
      word_begin = start;
      in_word = true;
    }
  }
  if (in_word) flush(text.size());
  return tokens;
}

TokenSeq window_tokens(const ContextWindow& window) {
  TokenSeq all;
  const auto append = [&all](const Utterance& u) {
    TokenSeq t = tokenize(u.text);
    all.insert(all.end(), std::make_move_iterator(t.begin()),
               std::make_move_iterator(t.end()));
  };
  for (const Utterance& u : window.prev) append(u);
  append(window.center);
  for (const Utterance& u : window.next) append(u);
  return all;
}

std::string join_tokens(const TokenSeq& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

}  // namespace cadec
