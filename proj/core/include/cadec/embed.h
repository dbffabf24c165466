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

#ifndef CADEC_EMBED_H_
#define CADEC_EMBED_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cadec/augment.h"
#include "cadec/corpus.h"
#include "cadec/lexicon.h"
#include "cadec/types.h"

namespace cadec {

// What a backbone sees for one window: the store key ("<id>" or "<id>#aug")
// and the flattened window tokens.
struct BackboneInput {
  std::string_view key;
  const TokenSeq& tokens;
};

// Frozen text encoder producing b(U). Implementations are pure and
// read-only after construction.
class BackboneProvider {
 public:
  virtual ~BackboneProvider() = default;
  virtual std::size_t dim() const = 0;
  virtual Vector embed(const BackboneInput& input) const = 0;
};

// Mean of per-token pseudo-random unit vectors keyed by (seed, token bytes).
// An empty token list gives the zero vector.
Vector hash_embed(const TokenSeq& tokens, std::size_t dim, std::uint64_t seed);

class HashBackbone final : public BackboneProvider {
 public:
  HashBackbone(std::size_t dim, std::uint64_t seed);
  std::size_t dim() const override { return dim_; }
  Vector embed(const BackboneInput& input) const override;

 private:
  std::size_t dim_;
  std::uint64_t seed_;
};

// Precomputed vectors keyed by string, stored as f32.
class EmbeddingStore {
 public:
  explicit EmbeddingStore(std::size_t dim = 0) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return keys_.size(); }
  const std::vector<std::string>& keys() const { return keys_; }

  // Quantizes to f32. Replaces an existing key in place.
  void put(const std::string& key, const Vector& v);
  void put_raw(const std::string& key, std::vector<float> v);
  bool contains(std::string_view key) const;
  const std::vector<float>& raw(std::string_view key) const;

  friend bool operator==(const EmbeddingStore&, const EmbeddingStore&);

 private:
  std::size_t dim_;
  std::vector<std::string> keys_;
  std::unordered_map<std::string, std::vector<float>> vectors_;
};

inline constexpr char kAugmentedKeySuffix[] = "#aug";

std::string embedding_key(std::string_view utterance_id, bool augmented);

void write_embedding_store(std::ostream& out, const EmbeddingStore& store);
// Writes to a temporary file and renames it over `path`.
void write_embedding_store(const std::filesystem::path& path,
                           const EmbeddingStore& store);
EmbeddingStore read_embedding_store(std::istream& in,
                                    const std::string& source = "<store>");
EmbeddingStore read_embedding_store(const std::filesystem::path& path);

// Stored vector widened to double. Throws Error naming the key when it is
// missing, and when the store's dim differs from expected_dim.
Vector file_embed(const EmbeddingStore& store, std::string_view key,
                  std::size_t expected_dim);

class FileBackbone final : public BackboneProvider {
 public:
  FileBackbone(std::shared_ptr<const EmbeddingStore> store,
               std::size_t expected_dim);
  std::size_t dim() const override { return dim_; }
  Vector embed(const BackboneInput& input) const override;

 private:
  std::shared_ptr<const EmbeddingStore> store_;
  std::size_t dim_;
};

enum class Variant { kOriginal, kAugmented };

// r = b(U) followed by the mean normalized BE5 of the window's lexicon hits.
struct InitialEmbedding {
  Vector values;  // d_b + 5
  std::string utterance_id;
  Variant variant = Variant::kOriginal;
};

// Mean normalized BE5 over the tokens found in the lexicon; zero when no
// token is found.
Be5 mean_be5(const TokenSeq& tokens, const EmotionLexicon& lexicon);

InitialEmbedding initial_embedding(const ContextWindow& window,
                                   const BackboneProvider& backbone,
                                   const EmotionLexicon& lexicon);
InitialEmbedding initial_embedding(const AugmentedWindow& window,
                                   const BackboneProvider& backbone,
                                   const EmotionLexicon& lexicon);

}  // namespace cadec

#endif  // CADEC_EMBED_H_
