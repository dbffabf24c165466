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

#include <gtest/gtest.h>

#include <sstream>

#include "cadec/error.h"
#include "test_util.h"

namespace cadec {
namespace {

EmotionLexicon parse(const std::string& text) {
  std::istringstream in(text);
  return parse_lexicon(in, "lex.tsv");
}

SynonymTable parse_syn(const std::string& text) {
  std::istringstream in(text);
  return parse_synonyms(in, "syn.tsv");
}

TEST(ParseLexicon, ReadsFields) {
  const EmotionLexicon lex =
      parse("happy\t8.21\t6.49\t7.21\t4.8\t1.1\t1.2\t1.1\t1.0\n");
  ASSERT_EQ(lex.size(), 1u);
  const EmotionEntry* e = lex.lookup("happy");
  ASSERT_NE(e, nullptr);
  EXPECT_EQ(e->vad.valence, 8.21);
  EXPECT_EQ(e->vad.arousal, 6.49);
  EXPECT_EQ(e->vad.dominance, 7.21);
  EXPECT_EQ(e->be5, (Be5{4.8, 1.1, 1.2, 1.1, 1.0}));
}

TEST(ParseLexicon, BundledFixture) {
  const EmotionLexicon lex =
      parse_lexicon(testing::data_path("mini_lexicon.tsv"));
  EXPECT_EQ(lex.size(), 40u);
  EXPECT_EQ(lex.lookup("happy")->vad.arousal, 6.49);
}

TEST(ParseLexicon, Be5OutOfRangeReportsLine) {
  try {
    parse("# header\nhappy\t8.21\t6.49\t7.21\t6.0\t1.1\t1.2\t1.1\t1.0\n");
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(ParseLexicon, VadOutOfRange) {
  EXPECT_THROW(parse("x\t9.5\t5\t5\t1\t1\t1\t1\t1\n"), DataError);
  EXPECT_THROW(parse("x\t5\t0.5\t5\t1\t1\t1\t1\t1\n"), DataError);
}

TEST(ParseLexicon, WrongColumnCount) {
  EXPECT_THROW(parse("x\t5\t5\t5\t1\t1\t1\t1\n"), DataError);
  EXPECT_THROW(parse("x\t5\t5\t5\t1\t1\t1\t1\t1\t1\n"), DataError);
}

TEST(ParseLexicon, BadNumber) {
  EXPECT_THROW(parse("x\t5,5\t5\t5\t1\t1\t1\t1\t1\n"), DataError);
  EXPECT_THROW(parse("x\tfive\t5\t5\t1\t1\t1\t1\t1\n"), DataError);
}

TEST(ParseLexicon, EmptyFileMissesEverything) {
  const EmotionLexicon lex = parse("");
  EXPECT_TRUE(lex.empty());
  EXPECT_EQ(lex.lookup("happy"), nullptr);
}

TEST(ParseLexicon, DuplicateKeepsFirst) {
  const EmotionLexicon lex = parse(
      "calm\t6\t2\t6\t3\t1\t1\t1\t1\n"
      "calm\t6\t8\t6\t3\t1\t1\t1\t1\n");
  EXPECT_EQ(lex.size(), 1u);
  EXPECT_EQ(lex.duplicate_count(), 1u);
  EXPECT_EQ(lex.lookup("calm")->vad.arousal, 2.0);
}

TEST(Lookup, CaseInsensitiveExactMatch) {
  const EmotionLexicon lex =
      parse_lexicon(testing::data_path("mini_lexicon.tsv"));
  const auto hit = lookup(lex, "HAPPY");
  ASSERT_TRUE(hit.has_value());
  EXPECT_EQ(hit->word, "happy");
  EXPECT_FALSE(lookup(lex, "zzzqx").has_value());
  EXPECT_FALSE(lookup(lex, "happiness").has_value());
  EXPECT_EQ(*hit, *lex.lookup("happy"));
}

TEST(NormalizeBe5, AffineMap) {
  EmotionEntry e;
  e.be5 = {1, 1, 1, 1, 1};
  EXPECT_EQ(normalize_be5(e), (Be5{0, 0, 0, 0, 0}));
  e.be5 = {5, 5, 5, 5, 5};
  EXPECT_EQ(normalize_be5(e), (Be5{1, 1, 1, 1, 1}));
  e.be5 = {3, 1, 5, 2, 4};
  EXPECT_EQ(normalize_be5(e), (Be5{0.5, 0, 1, 0.25, 0.75}));
}

TEST(NormalizeBe5, MonotoneOnGrid) {
  EmotionEntry a, b;
  for (double x = 1.0; x < 5.0; x += 0.125) {
    a.be5.fill(x);
    b.be5.fill(x + 0.125);
    EXPECT_LT(normalize_be5(a)[0], normalize_be5(b)[0]);
    EXPECT_GE(normalize_be5(a)[0], 0.0);
    EXPECT_LE(normalize_be5(b)[0], 1.0);
  }
}

TEST(ParseLexicon, RoundTripIsExact) {
  const EmotionLexicon lex =
      parse_lexicon(testing::data_path("mini_lexicon.tsv"));
  std::ostringstream out;
  write_lexicon(out, lex);
  const EmotionLexicon again = parse(out.str());
  EXPECT_EQ(again.entries(), lex.entries());
}

TEST(ParseSynonyms, ReadsLists) {
  const SynonymTable t = parse_syn("happy\tglad, joyful\nsad\tunhappy\n");
  ASSERT_NE(t.find("happy"), nullptr);
  EXPECT_EQ(*t.find("happy"), (std::vector<std::string>{"glad", "joyful"}));
  EXPECT_EQ(t.find("angry"), nullptr);
}

TEST(ParseSynonyms, DropsSelfReferences) {
  const SynonymTable t = parse_syn("happy\thappy,glad,Glad\n");
  EXPECT_EQ(*t.find("happy"), (std::vector<std::string>{"glad"}));
}

TEST(ParseSynonyms, RejectsMultiWordAndEmpty) {
  EXPECT_THROW(parse_syn("happy\tin good spirits\n"), DataError);
  EXPECT_THROW(parse_syn("happy\t\n"), DataError);
  EXPECT_THROW(parse_syn("happy\thappy\n"), DataError);
  EXPECT_THROW(parse_syn("happy\n"), DataError);
}

TEST(ParseSynonyms, RoundTrip) {
  const SynonymTable t =
      parse_synonyms(testing::data_path("mini_synonyms.tsv"));
  std::ostringstream out;
  write_synonyms(out, t);
  const SynonymTable again = parse_syn(out.str());
  ASSERT_EQ(again.words(), t.words());
  for (const std::string& w : t.words()) EXPECT_EQ(*again.find(w), *t.find(w));
}

}  // namespace
}  // namespace cadec
