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

#ifndef RNNEM_EVAL_H_
#define RNNEM_EVAL_H_

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rnnem {

using LabelSequences = std::vector<std::vector<std::string>>;

// kRaw: a segment is a maximal run of identical non-null labels.
// kBio: B-X opens a segment of type X, I-X continues it (conlleval rules).
enum class SegmentScheme { kRaw, kBio };

std::string_view SegmentSchemeName(SegmentScheme scheme);

// BIO when every non-null label carries a B- or I- prefix.
SegmentScheme DetectScheme(const LabelSequences& labels,
                           std::string_view null_label = "O");

struct Segment {
  std::size_t sentence = 0;
  std::size_t begin = 0;  // inclusive
  std::size_t end = 0;    // exclusive
  std::string type;

  auto operator<=>(const Segment&) const = default;
};

std::vector<Segment> ExtractSegments(std::span<const std::string> labels,
                                     SegmentScheme scheme,
                                     std::string_view null_label = "O",
                                     std::size_t sentence = 0);

struct LabelScore {
  std::size_t gold = 0;
  std::size_t predicted = 0;
  std::size_t correct = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Percentages in [0, 100].
struct F1Report {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t gold_segments = 0;
  std::size_t predicted_segments = 0;
  std::size_t correct_segments = 0;
  std::size_t tokens = 0;
  std::size_t correct_tokens = 0;
  SegmentScheme scheme = SegmentScheme::kRaw;
  std::map<std::string, LabelScore> per_label;

  double token_accuracy() const {
    return tokens == 0 ? 0.0
                       : 100.0 * static_cast<double>(correct_tokens) /
                             static_cast<double>(tokens);
  }
};

struct ScoreOptions {
  std::string null_label = "O";
  // Detected from the gold labels when unset.
  std::optional<SegmentScheme> scheme;
};

// Exact span-and-type matching. Throws std::invalid_argument when the
// sentence counts or any sentence lengths differ.
F1Report ScoreF1(const LabelSequences& gold, const LabelSequences& predicted,
                 const ScoreOptions& options = {});

std::string FormatReport(const F1Report& report);
// label,gold,predicted,correct,precision,recall,f1 with an "overall" row.
void WriteReportCsv(const F1Report& report, std::ostream& out);

struct RunSummary {
  std::vector<double> f1s;
  double max = 0.0;
  double min = 0.0;
  double mean = 0.0;
};

// Throws std::invalid_argument on an empty list.
RunSummary SummarizeRuns(std::span<const double> f1s);
// seed_index,f1 rows followed by max/min/mean rows.
void WriteRunSummaryCsv(const RunSummary& summary, std::ostream& out);

struct EntropyPoint {
  std::size_t epoch = 0;
  double nll = 0.0;    // mean per-word negative log-likelihood, nats
  double log10_nll = 0.0;
};

class EntropySeries {
 public:
  void Append(std::size_t epoch, double per_word_nll);
  const std::vector<EntropyPoint>& points() const { return points_; }
  bool empty() const { return points_.empty(); }
  const EntropyPoint& back() const { return points_.back(); }

  // Header "epoch,nll,log10_nll"; shortest round-trip number formatting.
  void WriteCsv(std::ostream& out) const;
  static EntropySeries ReadCsv(std::istream& in);

 private:
  std::vector<EntropyPoint> points_;
};

// Epochs are numbered from 1.
EntropySeries TrackEntropy(std::span<const double> per_word_nll_by_epoch);

}  // namespace rnnem

#endif  // RNNEM_EVAL_H_
