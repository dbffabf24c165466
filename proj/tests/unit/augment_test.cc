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

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "cadec/error.h"
#include "test_util.h"

namespace cadec {
namespace {

EmotionLexicon lexicon_from(
    const std::vector<std::pair<std::string, double>>& arousal) {
  EmotionLexicon lex;
  for (const auto& [word, a] : arousal) {
    EmotionEntry e;
    e.word = word;
    e.vad = {5.0, a, 5.0};
    e.be5 = {1, 1, 1, 1, 1};
    lex.insert(e);
  }
  return lex;
}

TokenSeq words(const std::string& text) { return tokenize(text); }

TEST(Segment, SplitsIntoFixedChunks) {
  TokenSeq t(20, "w");
  auto s = segment(t, 10);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].size(), 10u);
  EXPECT_EQ(s[1].size(), 10u);

  s = segment(TokenSeq(7, "w"), 10);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].size(), 7u);

  EXPECT_TRUE(segment({}, 10).empty());
}

TEST(Segment, ConcatenationReproducesInput) {
  const TokenSeq t = words("a b c d e f g h i j k l m");
  for (std::size_t len = 1; len <= 15; ++len) {
    TokenSeq joined;
    for (const TokenSeq& s : segment(t, len)) {
      EXPECT_LE(s.size(), len);
      joined.insert(joined.end(), s.begin(), s.end());
    }
    EXPECT_EQ(joined, t);
  }
}

TEST(SelectionCount, CeilRule) {
  EXPECT_EQ(selection_count(0, 20), 0u);
  EXPECT_EQ(selection_count(3, 20), 1u);
  EXPECT_EQ(selection_count(5, 20), 1u);
  EXPECT_EQ(selection_count(6, 20), 2u);
  EXPECT_EQ(selection_count(10, 20), 2u);
  EXPECT_EQ(selection_count(10, 100), 10u);
  EXPECT_EQ(selection_count(7, 50), 4u);
}

TEST(SelectTargets, TopTwoOfTen) {
  const EmotionLexicon lex = lexicon_from(
      {{"a", 2}, {"b", 3}, {"lucky", 7.5}, {"c", 4}, {"d", 1.5},
       {"happy", 7.0}, {"e", 5}, {"f", 6}, {"g", 2.5}, {"h", 3.5}});
  const TokenSeq seg = words("a b lucky c d happy e f g h");
  EXPECT_EQ(select_targets(seg, lex, 20), (std::vector<std::size_t>{2, 5}));
}

TEST(SelectTargets, NoHits) {
  const EmotionLexicon lex = lexicon_from({{"happy", 7}});
  EXPECT_TRUE(select_targets(words("nothing to see"), lex, 20).empty());
}

TEST(SelectTargets, ThreeHitsSelectOne) {
  const EmotionLexicon lex = lexicon_from({{"x", 3}, {"y", 8}, {"z", 5}});
  EXPECT_EQ(select_targets(words("q x r y z"), lex, 20),
            (std::vector<std::size_t>{3}));
}

TEST(SelectTargets, TiesBreakLeftmost) {
  const EmotionLexicon lex = lexicon_from({{"x", 6}, {"y", 6}});
  EXPECT_EQ(select_targets(words("y x y x"), lex, 20),
            (std::vector<std::size_t>{0}));
  EXPECT_EQ(select_targets(words("y x y x"), lex, 50),
            (std::vector<std::size_t>{0, 1}));
}

TEST(Substitute, SeededChoice) {
  SynonymTable syn;
  syn.insert("happy", {"glad", "joyful"});
  const TokenSeq t = words("we are so happy today");
  Rng a(42), b(42);
  const auto [out_a, rep_a] = substitute(t, {3}, syn, a);
  const auto [out_b, rep_b] = substitute(t, {3}, syn, b);
  EXPECT_EQ(out_a, out_b);
  EXPECT_EQ(rep_a, rep_b);
  ASSERT_EQ(rep_a.size(), 1u);
  EXPECT_EQ(rep_a[0].position, 3u);
  EXPECT_EQ(rep_a[0].old_word, "happy");
  EXPECT_TRUE(out_a[3] == "glad" || out_a[3] == "joyful");
}

TEST(Substitute, DrawsBothSynonymsAcrossSeeds) {
  SynonymTable syn;
  syn.insert("happy", {"glad", "joyful"});
  std::set<std::string> seen;
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    Rng rng(seed);
    seen.insert(substitute({"happy"}, {0}, syn, rng).first[0]);
  }
  EXPECT_EQ(seen, (std::set<std::string>{"glad", "joyful"}));
}

TEST(Substitute, MissingSynonymLeavesToken) {
  SynonymTable syn;
  syn.insert("happy", {"glad"});
  Rng rng(1);
  const TokenSeq t = words("angry happy");
  const auto [out, rep] = substitute(t, {0, 1}, syn, rng);
  EXPECT_EQ(out, (TokenSeq{"angry", "glad"}));
  ASSERT_EQ(rep.size(), 1u);
  EXPECT_EQ(rep[0].position, 1u);
}

TEST(Substitute, EmptyPositionsIsIdentity) {
  SynonymTable syn;
  Rng rng(1);
  const TokenSeq t = words("some words here");
  const auto [out, rep] = substitute(t, {}, syn, rng);
  EXPECT_EQ(out, t);
  EXPECT_TRUE(rep.empty());
}

// Two ten-word segments. "fortunate" outranks "annoying" and "crazy"
// globally, but the segment-local budget keeps the second segment's words.
struct TwoSegmentFixture {
  EmotionLexicon lexicon = lexicon_from(
      {{"lucky", 7.4}, {"happy", 7.0}, {"fortunate", 6.4}, {"annoying", 5.8},
       {"crazy", 5.6}, {"day", 3.3}, {"home", 3.0}, {"friend", 4.6},
       {"night", 4.1}, {"quiet", 2.0}, {"slow", 2.1}, {"mess", 4.9},
       {"noise", 5.2}, {"tired", 2.5}, {"gentle", 2.4}});
  SynonymTable synonyms;
  ContextWindow window;

  TwoSegmentFixture() {
    synonyms.insert("lucky", {"blessed"});
    synonyms.insert("happy", {"glad"});
    synonyms.insert("fortunate", {"favored"});
    synonyms.insert("annoying", {"irritating"});
    synonyms.insert("crazy", {"wild"});
    window.center = {"u1", "d", 1,
                     "Lucky day, home and happy friend at night fortunate "
                     "quiet: the annoying mess and crazy noise, tired slow "
                     "gentle day.",
                     std::nullopt};
    window.prev = {{"u0", "d", 0, "A fortunate prelude.", std::nullopt}};
    window.next = {{"u2", "d", 2, "Crazy coda.", std::nullopt}};
  }
};

TEST(AugmentWindow, SegmentLocalSelection) {
  const TwoSegmentFixture f;
  const TokenSeq center = tokenize(f.window.center.text);
  ASSERT_EQ(center.size(), 20u);

  AugmentConfig config;
  const AugmentedWindow aug =
      augment_window(f.window, f.lexicon, f.synonyms, config);
  std::vector<std::string> replaced;
  for (const Replacement& r : aug.replaced) replaced.push_back(r.old_word);
  EXPECT_EQ(replaced, (std::vector<std::string>{"lucky", "happy", "annoying",
                                                "crazy"}));

  // Treating the whole sentence as one segment spends the budget on the
  // first segment's dominant words instead.
  config.segment_len = 20;
  const AugmentedWindow whole =
      augment_window(f.window, f.lexicon, f.synonyms, config);
  std::vector<std::string> whole_words;
  for (const Replacement& r : whole.replaced) whole_words.push_back(r.old_word);
  EXPECT_EQ(whole_words, (std::vector<std::string>{"lucky", "happy",
                                                   "fortunate", "annoying"}));
}

TEST(AugmentWindow, ContextUntouchedAndLengthPreserved) {
  const TwoSegmentFixture f;
  const AugmentedWindow aug =
      augment_window(f.window, f.lexicon, f.synonyms, AugmentConfig{});
  EXPECT_EQ(aug.original.prev, f.window.prev);
  EXPECT_EQ(aug.original.next, f.window.next);
  EXPECT_EQ(aug.original.center, f.window.center);
  EXPECT_EQ(aug.augmented_center.size(), aug.original_center.size());
  for (const Replacement& r : aug.replaced) {
    EXPECT_EQ(aug.original_center[r.position], r.old_word);
    EXPECT_EQ(aug.augmented_center[r.position], r.new_word);
  }
  const TokenSeq full = window_tokens(aug);
  EXPECT_EQ(full.front(), "a");
  EXPECT_EQ(full.back(), "coda");
}

TEST(AugmentWindow, NoLexiconWordsIsDegeneratePair) {
  const TwoSegmentFixture f;
  ContextWindow w = f.window;
  w.center.text = "nothing emotional in here at all";
  const AugmentedWindow aug =
      augment_window(w, f.lexicon, f.synonyms, AugmentConfig{});
  EXPECT_TRUE(aug.replaced.empty());
  EXPECT_EQ(aug.augmented_center, aug.original_center);
}

TEST(AugmentWindow, DeterministicAndSeedSensitive) {
  const EmotionLexicon lex =
      parse_lexicon(testing::data_path("mini_lexicon.tsv"));
  const SynonymTable syn =
      parse_synonyms(testing::data_path("mini_synonyms.tsv"));
  const Corpus corpus =
      load_corpus(testing::data_path("augment_corpus.jsonl"));
  AugmentConfig config;
  std::ostringstream a, b, c;
  write_augmented_corpus(a, corpus, lex, syn, config);
  write_augmented_corpus(b, corpus, lex, syn, config);
  EXPECT_EQ(a.str(), b.str());
  config.seed += 1;
  write_augmented_corpus(c, corpus, lex, syn, config);
  EXPECT_NE(a.str(), c.str());
}

TEST(AugmentConfig, Validation) {
  AugmentConfig c;
  EXPECT_NO_THROW(c.validate());
  c.segment_len = 0;
  EXPECT_THROW(c.validate(), UsageError);
  c = {};
  c.top_pct = 0;
  EXPECT_THROW(c.validate(), UsageError);
  c.top_pct = 100.5;
  EXPECT_THROW(c.validate(), UsageError);
  c.top_pct = 100;
  EXPECT_NO_THROW(c.validate());
}

}  // namespace
}  // namespace cadec
