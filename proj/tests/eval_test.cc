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

#include "rnnem/eval.h"

#include <cmath>
#include <sstream>

#include "gtest/gtest.h"

namespace rnnem {
namespace {

TEST(SegmentTest, BioSpansAndConllevalStarts) {
  const std::vector<std::string> labels = {"B-a", "I-a", "O",   "I-b",
                                           "I-b", "B-b", "I-a", "O"};
  const auto segs = ExtractSegments(labels, SegmentScheme::kBio);
  ASSERT_EQ(segs.size(), 4u);
  EXPECT_EQ(segs[0], (Segment{0, 0, 2, "a"}));
  EXPECT_EQ(segs[1], (Segment{0, 3, 5, "b"}));
  EXPECT_EQ(segs[2], (Segment{0, 5, 6, "b"}));
  EXPECT_EQ(segs[3], (Segment{0, 6, 7, "a"}));
}

TEST(SegmentTest, RawLabelsGroupRuns) {
  const std::vector<std::string> labels = {"city", "city", "O", "date", "city"};
  const auto segs = ExtractSegments(labels, SegmentScheme::kRaw);
  ASSERT_EQ(segs.size(), 3u);
  EXPECT_EQ(segs[0], (Segment{0, 0, 2, "city"}));
  EXPECT_EQ(segs[2], (Segment{0, 4, 5, "city"}));
}

TEST(SegmentTest, SchemeDetection) {
  EXPECT_EQ(DetectScheme({{"O", "B-x", "I-x"}}), SegmentScheme::kBio);
  EXPECT_EQ(DetectScheme({{"O", "city"}}), SegmentScheme::kRaw);
  EXPECT_EQ(DetectScheme({{"O", "O"}}), SegmentScheme::kRaw);
}

// Gold: 4 segments. Predicted: 4 segments, 2 exact matches.
TEST(ScoreTest, HandComputedFixture) {
  const LabelSequences gold = {{"B-a", "I-a", "O", "B-b"}, {"B-c", "O", "B-a"}};
  const LabelSequences pred = {{"B-a", "O", "O", "B-b"}, {"B-c", "B-c", "O"}};
  const F1Report r = ScoreF1(gold, pred);
  EXPECT_EQ(r.scheme, SegmentScheme::kBio);
  EXPECT_EQ(r.gold_segments, 4u);
  EXPECT_EQ(r.predicted_segments, 4u);
  EXPECT_EQ(r.correct_segments, 2u);
  EXPECT_DOUBLE_EQ(r.precision, 50.0);
  EXPECT_DOUBLE_EQ(r.recall, 50.0);
  EXPECT_DOUBLE_EQ(r.f1, 50.0);
  EXPECT_EQ(r.tokens, 7u);
  EXPECT_EQ(r.correct_tokens, 4u);
  EXPECT_NEAR(r.token_accuracy(), 400.0 / 7.0, 1e-12);
  EXPECT_EQ(r.per_label.at("a").gold, 2u);
  EXPECT_EQ(r.per_label.at("a").correct, 0u);
  EXPECT_EQ(r.per_label.at("b").correct, 1u);
  EXPECT_EQ(r.per_label.at("c").predicted, 2u);
  EXPECT_DOUBLE_EQ(r.per_label.at("c").precision, 50.0);
  EXPECT_DOUBLE_EQ(r.per_label.at("c").recall, 100.0);
}

TEST(ScoreTest, UnequalPrecisionAndRecall) {
  const LabelSequences gold = {{"B-a", "B-b", "B-c", "O"}};
  const LabelSequences pred = {{"B-a", "O", "O", "O"}};
  const F1Report r = ScoreF1(gold, pred);
  EXPECT_DOUBLE_EQ(r.precision, 100.0);
  EXPECT_NEAR(r.recall, 100.0 / 3.0, 1e-12);
  EXPECT_NEAR(r.f1, 50.0, 1e-12);
}

TEST(ScoreTest, PerfectAndEmpty) {
  const LabelSequences gold = {{"O", "B-a", "I-a"}};
  EXPECT_DOUBLE_EQ(ScoreF1(gold, gold).f1, 100.0);
  const LabelSequences none = {{"O", "O"}};
  const F1Report r = ScoreF1(none, none);
  EXPECT_EQ(r.f1, 0.0);
  EXPECT_DOUBLE_EQ(r.token_accuracy(), 100.0);
  EXPECT_THROW(ScoreF1(gold, none), std::invalid_argument);
  EXPECT_THROW(ScoreF1(gold, {}), std::invalid_argument);
}

TEST(ScoreTest, CustomNullLabel) {
  ScoreOptions opts;
  opts.null_label = "NULL";
  const F1Report r = ScoreF1({{"NULL", "city"}}, {{"NULL", "city"}}, opts);
  EXPECT_EQ(r.gold_segments, 1u);
  EXPECT_EQ(r.scheme, SegmentScheme::kRaw);
}

TEST(ReportTest, CsvAndTextContainTotals) {
  const F1Report r = ScoreF1({{"B-a", "O"}}, {{"B-a", "B-a"}});
  std::ostringstream csv;
  WriteReportCsv(r, csv);
  EXPECT_EQ(csv.str(),
            "label,gold,predicted,correct,precision,recall,f1\n"
            "a,1,2,1,50,100,66.66666666666667\n"
            "overall,1,2,1,50,100,66.66666666666667\n");
  EXPECT_NE(FormatReport(r).find("F1 66.67"), std::string::npos);
}

TEST(SummaryTest, MaxMinMean) {
  const std::vector<double> f1s = {94.5, 95.25, 93.75, 95.0};
  const RunSummary s = SummarizeRuns(f1s);
  EXPECT_EQ(s.max, 95.25);
  EXPECT_EQ(s.min, 93.75);
  EXPECT_DOUBLE_EQ(s.mean, 94.625);
  EXPECT_EQ(s.f1s, f1s);
  EXPECT_THROW(SummarizeRuns({}), std::invalid_argument);
}

TEST(SummaryTest, MeanIndependentOfOrderAndBounded) {
  const std::vector<double> a = {0.1, 0.2, 0.3, 1e16, -1e16};
  const std::vector<double> b = {-1e16, 0.3, 1e16, 0.1, 0.2};
  EXPECT_EQ(SummarizeRuns(a).mean, SummarizeRuns(b).mean);
  const std::vector<double> same = {0.1, 0.1, 0.1};
  const RunSummary s = SummarizeRuns(same);
  EXPECT_GE(s.mean, s.min);
  EXPECT_LE(s.mean, s.max);
  std::ostringstream out;
  WriteRunSummaryCsv(SummarizeRuns(std::vector<double>{1.0, 2.0}), out);
  EXPECT_EQ(out.str(), "run,f1\n0,1\n1,2\nmax,2\nmin,1\nmean,1.5\n");
}

TEST(EntropyTest, CsvRoundTripIsExact) {
  const std::vector<double> nll = {1.2345678901234567, 0.1, 3e-7};
  const EntropySeries series = TrackEntropy(nll);
  ASSERT_EQ(series.points().size(), 3u);
  EXPECT_EQ(series.points()[0].epoch, 1u);
  EXPECT_DOUBLE_EQ(series.points()[1].log10_nll, -1.0);
  std::ostringstream out;
  series.WriteCsv(out);
  EXPECT_EQ(out.str().substr(0, 19), "epoch,nll,log10_nll");
  std::istringstream in(out.str());
  const EntropySeries back = EntropySeries::ReadCsv(in);
  ASSERT_EQ(back.points().size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(back.points()[i].epoch, series.points()[i].epoch);
    EXPECT_EQ(back.points()[i].nll, series.points()[i].nll);
    EXPECT_EQ(back.points()[i].log10_nll, series.points()[i].log10_nll);
  }
  std::istringstream bad("epoch,nll\n");
  EXPECT_THROW(EntropySeries::ReadCsv(bad), std::invalid_argument);
}

}  // namespace
}  // namespace rnnem
