// Copyright 2026 The RNN-EM Tagger Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rnnem/corpus.h"

#include <sstream>

#include "gtest/gtest.h"

namespace rnnem {
namespace {

constexpr char kTwoSentences[] =
    "show\tO\nflights\tO\nto\tO\nboston\tB-toloc.city_name\n"
    "\n"
    "denver B-fromloc.city_name\r\n"
    "please O extra\n"
    "\n\n";

Corpus Parse(const std::string& text, const ConllOptions& opts = {}) {
  std::istringstream in(text);
  return ParseConll(in, opts, "fixture");
}

TEST(VocabularyTest, SpecialTokensAndInsertionOrder) {
  Vocabulary v = Vocabulary::WithSpecialTokens();
  EXPECT_EQ(v.Token(kPadIndex), "<pad>");
  EXPECT_EQ(v.Token(kUnkIndex), "<unk>");
  EXPECT_EQ(v.Add("b"), 2);
  EXPECT_EQ(v.Add("a"), 3);
  EXPECT_EQ(v.Add("b"), 2);
  EXPECT_EQ(v.Find("a"), 3);
  EXPECT_FALSE(v.Find("zzz").has_value());
  EXPECT_EQ(v.size(), 4u);
}

TEST(ConllTest, TwoSentenceFixture) {
  const Corpus c = Parse(kTwoSentences);
  ASSERT_EQ(c.sequences.size(), 2u);
  EXPECT_EQ(c.sequences[0].size(), 4u);
  EXPECT_EQ(c.sequences[1].size(), 2u);
  EXPECT_EQ(c.token_count(), 6u);
  EXPECT_EQ(c.sequences[1].raw_tokens[0], "denver");
  EXPECT_EQ(c.label_vocab.Token(c.sequences[1].labels[0]), "B-fromloc.city_name");
  // Word indices follow first occurrence after the two special tokens.
  EXPECT_EQ(c.sequences[0].words[0], 2);
  EXPECT_EQ(c.sequences[1].words[1], 7);
  EXPECT_EQ(c.label_vocab.Token(0), "O");
}

TEST(ConllTest, SameTextSameIndices) {
  const Corpus a = Parse(kTwoSentences);
  const Corpus b = Parse(kTwoSentences);
  EXPECT_EQ(a.word_vocab, b.word_vocab);
  EXPECT_EQ(a.label_vocab, b.label_vocab);
}

TEST(ConllTest, MalformedLineNamesSourceAndLine) {
  try {
    Parse("a O\nb\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("fixture:2"), std::string::npos)
        << e.what();
  }
}

TEST(ConllTest, EmptyInputIsAnError) {
  EXPECT_THROW(Parse(""), ParseError);
  EXPECT_THROW(Parse("\n\n  \n"), ParseError);
  EXPECT_THROW(LoadConll("/nonexistent/file.conll"), std::runtime_error);
}

TEST(ConllTest, ReusedVocabularyMapsUnknownWordsToUnk) {
  const Corpus train = Parse(kTwoSentences);
  ConllOptions opts;
  opts.reuse_vocab = &train;
  const Corpus test = Parse("show O\nparis B-toloc.city_name\n", opts);
  EXPECT_EQ(test.sequences[0].words[0], *train.word_vocab.Find("show"));
  EXPECT_EQ(test.sequences[0].words[1], kUnkIndex);
  EXPECT_EQ(test.sequences[0].raw_tokens[1], "paris");
  EXPECT_EQ(test.word_vocab, train.word_vocab);
  EXPECT_THROW(Parse("show B-unknown\n", opts), ParseError);
}

TEST(ConllTest, LabelColumnOption) {
  ConllOptions opts;
  opts.label_column = 2;
  const Corpus c = Parse("w X L1\nv Y L2\n", opts);
  EXPECT_EQ(c.label_vocab.Token(c.sequences[0].labels[1]), "L2");
  EXPECT_THROW(Parse("w X\n", opts), ParseError);
}

TEST(ConllTest, WriteThenParseRoundTrips) {
  const Corpus c = Parse(kTwoSentences);
  std::ostringstream out;
  WriteConll(c, out);
  const Corpus again = Parse(out.str());
  ASSERT_EQ(again.sequences.size(), c.sequences.size());
  for (std::size_t i = 0; i < c.sequences.size(); ++i) {
    EXPECT_EQ(again.sequences[i].raw_tokens, c.sequences[i].raw_tokens);
  }
  EXPECT_EQ(again.LabelStrings(), c.LabelStrings());
  std::ostringstream twice;
  WriteConll(again, twice);
  EXPECT_EQ(twice.str(), out.str());
}

TEST(ConllTest, PredictionsRoundTripThroughLoader) {
  const Corpus c = Parse(kTwoSentences);
  std::vector<std::vector<int>> pred;
  for (const auto& s : c.sequences) pred.push_back(std::vector<int>(s.size(), 0));
  std::ostringstream out;
  WritePredictions(c, pred, out);
  const Corpus gold = Parse(out.str());
  EXPECT_EQ(gold.LabelStrings(), c.LabelStrings());
  ConllOptions opts;
  opts.label_column = 2;
  const Corpus predicted = Parse(out.str(), opts);
  for (const auto& s : predicted.LabelStrings())
    for (const auto& l : s) EXPECT_EQ(l, "O");
  pred.pop_back();
  EXPECT_THROW(WritePredictions(c, pred, out), std::invalid_argument);
}

}  // namespace
}  // namespace rnnem
