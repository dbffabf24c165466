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

#include "cadec/embed.h"

#include <istream>
#include <iterator>
#include <ostream>
#include <utility>

#include "binary_io.h"
#include "cadec/error.h"
#include "cadec/rng.h"

namespace cadec {
namespace {

constexpr char kStoreMagic[] = "EMBD";
constexpr std::uint32_t kStoreVersion = 1;

// Gaussian direction normalized to unit length. A zero draw is practically
// impossible; it falls back to the first basis vector.
Vector token_unit_vector(std::string_view token, std::size_t dim,
                         std::uint64_t seed) {
  Rng rng(splitmix64(seed ^ fnv1a64(token)));
  Vector v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index j = 0; j < v.size(); ++j) v[j] = rng.normal();
  const double norm = v.norm();
  if (norm == 0.0) {
    v.setZero();
    v[0] = 1.0;
    return v;
  }
  return v / norm;
}

std::string serialize_store(const EmbeddingStore& store) {
  internal::ByteWriter w;
  w.bytes(std::string_view(kStoreMagic, 4));
  w.u32(kStoreVersion);
  w.u32(static_cast<std::uint32_t>(store.dim()));
  w.u64(store.size());
  for (const std::string& key : store.keys()) {
    w.u32(static_cast<std::uint32_t>(key.size()));
    w.bytes(key);
    for (float x : store.raw(key)) w.f32(x);
  }
  return w.data();
}

EmbeddingStore parse_store(std::string_view bytes, const std::string& source) {
  internal::ByteReader r(bytes, source);
  if (r.bytes(4) != std::string_view(kStoreMagic, 4)) {
    throw DataError("not an embedding store (bad magic)", source);
  }
  if (const auto version = r.u32(); version != kStoreVersion) {
    throw DataError("unsupported store version " + std::to_string(version),
                    source);
  }
  const std::uint32_t dim = r.u32();
  const std::uint64_t count = r.u64();
  EmbeddingStore store(dim);
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint32_t key_len = r.u32();
    std::string key(r.bytes(key_len));
    std::vector<float> v(dim);
    for (float& x : v) x = r.f32();
    if (store.contains(key)) {
      throw DataError("duplicate key in store: " + key, source);
    }
    store.put_raw(key, std::move(v));
  }
  if (r.remaining() != 0) throw DataError("trailing bytes in store", source);
  return store;
}

}  // namespace

Vector hash_embed(const TokenSeq& tokens, std::size_t dim,
                  std::uint64_t seed) {
  if (dim < 1) throw UsageError("backbone dim must be >= 1");
  Vector sum = Vector::Zero(static_cast<Eigen::Index>(dim));
  if (tokens.empty()) return sum;
  for (const std::string& t : tokens) sum += token_unit_vector(t, dim, seed);
  return sum / static_cast<double>(tokens.size());
}

HashBackbone::HashBackbone(std::size_t dim, std::uint64_t seed)
    : dim_(dim), seed_(seed) {
  if (dim < 1) throw UsageError("backbone dim must be >= 1");
}

Vector HashBackbone::embed(const BackboneInput& input) const {
  return hash_embed(input.tokens, dim_, seed_);
}

void EmbeddingStore::put(const std::string& key, const Vector& v) {
  std::vector<float> raw(static_cast<std::size_t>(v.size()));
  for (std::size_t i = 0; i < raw.size(); ++i) {
    raw[i] = static_cast<float>(v[static_cast<Eigen::Index>(i)]);
  }
  put_raw(key, std::move(raw));
}

void EmbeddingStore::put_raw(const std::string& key, std::vector<float> v) {
  if (v.size() != dim_) {
    throw Error("vector for " + key + " has dim " + std::to_string(v.size()) +
                ", store dim is " + std::to_string(dim_));
  }
  auto [it, fresh] = vectors_.try_emplace(key);
  if (fresh) keys_.push_back(key);
  it->second = std::move(v);
}

bool EmbeddingStore::contains(std::string_view key) const {
  return vectors_.contains(std::string(key));
}

const std::vector<float>& EmbeddingStore::raw(std::string_view key) const {
  const auto it = vectors_.find(std::string(key));
  if (it == vectors_.end()) {
    throw Error("embedding store has no key \"" + std::string(key) + "\"");
  }
  return it->second;
}

bool operator==(const EmbeddingStore& a, const EmbeddingStore& b) {
  return a.dim_ == b.dim_ && a.keys_ == b.keys_ && a.vectors_ == b.vectors_;
}

std::string embedding_key(std::string_view utterance_id, bool augmented) {
  std::string key(utterance_id);
  if (augmented) key += kAugmentedKeySuffix;
  return key;
}

void write_embedding_store(std::ostream& out, const EmbeddingStore& store) {
  const std::string bytes = serialize_store(store);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

void write_embedding_store(const std::filesystem::path& path,
                           const EmbeddingStore& store) {
  write_file_atomic(path, serialize_store(store));
}

EmbeddingStore read_embedding_store(std::istream& in,
                                    const std::string& source) {
  const std::string bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  return parse_store(bytes, source);
}

EmbeddingStore read_embedding_store(const std::filesystem::path& path) {
  return parse_store(internal::read_file(path), path.string());
}

Vector file_embed(const EmbeddingStore& store, std::string_view key,
                  std::size_t expected_dim) {
  if (store.dim() != expected_dim) {
    throw Error("embedding store dim " + std::to_string(store.dim()) +
                " does not match expected dim " +
                std::to_string(expected_dim));
  }
  const std::vector<float>& raw = store.raw(key);
  Vector v(static_cast<Eigen::Index>(raw.size()));
  for (std::size_t i = 0; i < raw.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = static_cast<double>(raw[i]);
  }
  return v;
}

FileBackbone::FileBackbone(std::shared_ptr<const EmbeddingStore> store,
                           std::size_t expected_dim)
    : store_(std::move(store)), dim_(expected_dim) {
  if (!store_) throw UsageError("file backbone needs a store");
  if (store_->dim() != expected_dim) {
    throw Error("embedding store dim " + std::to_string(store_->dim()) +
                " does not match expected dim " +
                std::to_string(expected_dim));
  }
}

Vector FileBackbone::embed(const BackboneInput& input) const {
  return file_embed(*store_, input.key, dim_);
}

Be5 mean_be5(const TokenSeq& tokens, const EmotionLexicon& lexicon) {
  Be5 sum{};
  std::size_t hits = 0;
  for (const std::string& t : tokens) {
    const EmotionEntry* e = lexicon.lookup(t);
    if (e == nullptr) continue;
    const Be5 n = normalize_be5(*e);
    for (std::size_t k = 0; k < kBe5Size; ++k) sum[k] += n[k];
    ++hits;
  }
  if (hits > 0) {
    for (double& v : sum) v /= static_cast<double>(hits);
  }
  return sum;
}

namespace {

InitialEmbedding assemble(const TokenSeq& tokens, std::string_view key,
                          const BackboneProvider& backbone,
                          const EmotionLexicon& lexicon) {
  const Vector b = backbone.embed({key, tokens});
  if (static_cast<std::size_t>(b.size()) != backbone.dim()) {
    throw Error("backbone returned dim " + std::to_string(b.size()) +
                ", expected " + std::to_string(backbone.dim()));
  }
  require_finite(b, "backbone embedding");
  const Be5 be5 = mean_be5(tokens, lexicon);
  InitialEmbedding r;
  r.values.resize(b.size() + static_cast<Eigen::Index>(kBe5Size));
  r.values.head(b.size()) = b;
  for (std::size_t k = 0; k < kBe5Size; ++k) {
    r.values[b.size() + static_cast<Eigen::Index>(k)] = be5[k];
  }
  return r;
}

}  // namespace

InitialEmbedding initial_embedding(const ContextWindow& window,
                                   const BackboneProvider& backbone,
                                   const EmotionLexicon& lexicon) {
  const std::string key = embedding_key(window.center.id, false);
  InitialEmbedding r =
      assemble(window_tokens(window), key, backbone, lexicon);
  r.utterance_id = window.center.id;
  r.variant = Variant::kOriginal;
  return r;
}

InitialEmbedding initial_embedding(const AugmentedWindow& window,
                                   const BackboneProvider& backbone,
                                   const EmotionLexicon& lexicon) {
  const std::string key = embedding_key(window.original.center.id, true);
  InitialEmbedding r =
      assemble(window_tokens(window), key, backbone, lexicon);
  r.utterance_id = window.original.center.id;
  r.variant = Variant::kAugmented;
  return r;
}

}  // namespace cadec
