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

#include <gtest/gtest.h>

#include <sstream>

#include "cadec/augment.h"
#include "cadec/error.h"
#include "test_util.h"

namespace cadec {
namespace {

EmotionEntry entry(const std::string& word, Be5 be5) {
  EmotionEntry e;
  e.word = word;
  e.be5 = be5;
  return e;
}

TEST(HashEmbed, Deterministic) {
  const TokenSeq t = {"the", "storm", "came"};
  EXPECT_EQ(hash_embed(t, 16, 7), hash_embed(t, 16, 7));
  EXPECT_NE(hash_embed(t, 16, 7), hash_embed(t, 16, 8));
}

TEST(HashEmbed, EmptyIsZero) {
  const Vector v = hash_embed({}, 8, 1);
  ASSERT_EQ(v.size(), 8);
  EXPECT_TRUE(v.isZero(0.0));
}

TEST(HashEmbed, SingleTokenIsUnitVector) {
  for (const char* word : {"a", "storm", "été"}) {
    EXPECT_NEAR(hash_embed({word}, 32, 3).norm(), 1.0, 1e-12);
  }
}

TEST(HashEmbed, MeanOfTokenVectors) {
  const Vector a = hash_embed({"x"}, 12, 5);
  const Vector b = hash_embed({"y"}, 12, 5);
  const Vector ab = hash_embed({"x", "y"}, 12, 5);
  EXPECT_LT((ab - (a + b) / 2.0).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LE(ab.cwiseAbs().maxCoeff(), 1.0);
}

TEST(HashEmbed, RejectsZeroDim) {
  EXPECT_THROW(hash_embed({"x"}, 0, 1), UsageError);
}

TEST(EmbeddingStore, RoundTripWithinF32) {
  Rng rng(9);
  EmbeddingStore store(6);
  std::vector<Vector> vs;
  for (int i = 0; i < 5; ++i) {
    Vector v(6);
    for (int j = 0; j < 6; ++j) v[j] = rng.normal();
    vs.push_back(v);
    store.put(embedding_key("u" + std::to_string(i), i % 2 == 1), v);
  }
  std::stringstream buf;
  write_embedding_store(buf, store);
  const EmbeddingStore again = read_embedding_store(buf);
  EXPECT_EQ(again, store);
  for (int i = 0; i < 5; ++i) {
    const Vector got =
        file_embed(again, embedding_key("u" + std::to_string(i), i % 2 == 1), 6);
    for (int j = 0; j < 6; ++j) {
      EXPECT_EQ(got[j], static_cast<double>(static_cast<float>(vs[i][j])));
    }
    EXPECT_LT((got - vs[i]).cwiseAbs().maxCoeff(), 1e-6 * (1 + vs[i].norm()));
  }
}

TEST(EmbeddingStore, KeyFormat) {
  EXPECT_EQ(embedding_key("u7", false), "u7");
  EXPECT_EQ(embedding_key("u7", true), "u7#aug");
}

TEST(EmbeddingStore, UnknownKeyNamesKey) {
  EmbeddingStore store(2);
  store.put("a", Vector::Ones(2));
  try {
    file_embed(store, "missing-key", 2);
    FAIL() << "expected Error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("missing-key"), std::string::npos);
  }
}

TEST(EmbeddingStore, DimensionMismatch) {
  EmbeddingStore store(8);
  store.put("a", Vector::Ones(8));
  EXPECT_THROW(file_embed(store, "a", 16), Error);
  EXPECT_THROW(store.put("b", Vector::Ones(3)), Error);
}

TEST(EmbeddingStore, RejectsCorruptBytes) {
  EmbeddingStore store(2);
  store.put("a", Vector::Ones(2));
  std::stringstream buf;
  write_embedding_store(buf, store);
  std::string bytes = buf.str();
  std::istringstream truncated(bytes.substr(0, bytes.size() - 3));
  EXPECT_THROW(read_embedding_store(truncated), DataError);
  bytes[0] = 'X';
  std::istringstream bad_magic(bytes);
  EXPECT_THROW(read_embedding_store(bad_magic), DataError);
}

TEST(InitialEmbedding, DimensionIsBackbonePlusFive) {
  const HashBackbone backbone(4, 1);
  ContextWindow w;
  w.center = {"u", "d", 0, "nothing here", std::nullopt};
  const InitialEmbedding r = initial_embedding(w, backbone, EmotionLexicon{});
  EXPECT_EQ(r.values.size(), 9);
  EXPECT_TRUE(r.values.tail(5).isZero(0.0));
  EXPECT_EQ(r.utterance_id, "u");
  EXPECT_EQ(r.variant, Variant::kOriginal);
}

TEST(InitialEmbedding, Be5BlockIsHitMean) {
  EmotionLexicon lex;
  lex.insert(entry("grim", {1, 1, 1, 1, 5}));   // normalized (0,0,0,0,1)
  lex.insert(entry("sunny", {5, 1, 1, 1, 1}));  // normalized (1,0,0,0,0)
  const HashBackbone backbone(3, 1);
  ContextWindow w;
  w.prev = {{"p", "d", 0, "Grim start", std::nullopt}};
  w.center = {"u", "d", 1, "then sunny words", std::nullopt};
  const InitialEmbedding r = initial_embedding(w, backbone, lex);
  const Vector be5 = r.values.tail(5);
  EXPECT_EQ(be5, (Vector(5) << 0.5, 0, 0, 0, 0.5).finished());
  const TokenSeq tokens = window_tokens(w);
  EXPECT_EQ(r.values.head(3), hash_embed(tokens, 3, 1));
}

TEST(InitialEmbedding, AugmentedSharesContextContribution) {
  const EmotionLexicon lex =
      parse_lexicon(testing::data_path("mini_lexicon.tsv"));
  const SynonymTable syn =
      parse_synonyms(testing::data_path("mini_synonyms.tsv"));
  const Corpus corpus = load_corpus(testing::data_path("smoke_corpus.jsonl"));
  const HashBackbone backbone(16, 3);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const ContextWindow w = corpus.window_at(i, 1);
    const AugmentedWindow aug = augment_window(w, lex, syn, AugmentConfig{});
    const InitialEmbedding a = initial_embedding(w, backbone, lex);
    const InitialEmbedding b = initial_embedding(aug, backbone, lex);
    EXPECT_EQ(b.variant, Variant::kAugmented);
    if (aug.replaced.empty()) {
      EXPECT_EQ(a.values, b.values);
    }
    // Only tokens actually differ through the center substitutions.
    TokenSeq expected = window_tokens(w);
    std::size_t offset = 0;
    for (const Utterance& u : w.prev) offset += tokenize(u.text).size();
    for (const Replacement& r : aug.replaced) {
      expected[offset + r.position] = r.new_word;
    }
    EXPECT_EQ(window_tokens(aug), expected);
    EXPECT_EQ(b.values.head(16), hash_embed(expected, 16, 3));
    for (Eigen::Index k = 16; k < 21; ++k) {
      EXPECT_GE(b.values[k], 0.0);
      EXPECT_LE(b.values[k], 1.0);
    }
  }
}

TEST(FileBackbone, ServesStoredVectorsByKey) {
  auto store = std::make_shared<EmbeddingStore>(3);
  store->put("u", (Vector(3) << 1, 2, 3).finished());
  store->put("u#aug", (Vector(3) << 4, 5, 6).finished());
  const FileBackbone backbone(store, 3);
  ContextWindow w;
  w.center = {"u", "d", 0, "text", std::nullopt};
  EXPECT_EQ(initial_embedding(w, backbone, EmotionLexicon{}).values.head(3),
            (Vector(3) << 1, 2, 3).finished());
  AugmentedWindow aug;
  aug.original = w;
  aug.original_center = aug.augmented_center = {"text"};
  EXPECT_EQ(initial_embedding(aug, backbone, EmotionLexicon{}).values.head(3),
            (Vector(3) << 4, 5, 6).finished());
  EXPECT_THROW(FileBackbone(store, 4), Error);
}

}  // namespace
}  // namespace cadec
