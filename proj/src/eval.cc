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

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "rnnem/text_util.h"

namespace rnnem {

std::string_view SegmentSchemeName(SegmentScheme scheme) {
  return scheme == SegmentScheme::kBio ? "bio" : "raw";
}

namespace {

bool HasBioPrefix(std::string_view label) {
  return label.size() > 2 && (label[0] == 'B' || label[0] == 'I') &&
         label[1] == '-';
}

double Percent(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0
                  : 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

double HarmonicMean(double p, double r) {
  return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
}

}  // namespace

SegmentScheme DetectScheme(const LabelSequences& labels,
                           std::string_view null_label) {
  bool any = false;
  for (const auto& sentence : labels) {
    for (const auto& l : sentence) {
      if (l == null_label) continue;
      if (!HasBioPrefix(l)) return SegmentScheme::kRaw;
      any = true;
    }
  }
  return any ? SegmentScheme::kBio : SegmentScheme::kRaw;
}

std::vector<Segment> ExtractSegments(std::span<const std::string> labels,
                                     SegmentScheme scheme,
                                     std::string_view null_label,
                                     std::size_t sentence) {
  std::vector<Segment> out;
  std::optional<Segment> open;
  auto close = [&](std::size_t end) {
    if (open) {
      open->end = end;
      out.push_back(std::move(*open));
      open.reset();
    }
  };
  for (std::size_t t = 0; t < labels.size(); ++t) {
    const std::string& label = labels[t];
    if (label == null_label) {
      close(t);
      continue;
    }
    if (scheme == SegmentScheme::kRaw) {
      if (open && open->type == label) continue;
      close(t);
      open = Segment{sentence, t, t, label};
      continue;
    }
    // BIO. Labels without a prefix are treated as B- of themselves.
    const bool has_prefix = HasBioPrefix(label);
    const std::string type = has_prefix ? label.substr(2) : label;
    const bool inside = has_prefix && label[0] == 'I';
    if (inside && open && open->type == type) continue;
    close(t);
    open = Segment{sentence, t, t, type};
  }
  close(labels.size());
  return out;
}

F1Report ScoreF1(const LabelSequences& gold, const LabelSequences& predicted,
                 const ScoreOptions& options) {
  if (gold.size() != predicted.size()) {
    throw std::invalid_argument("score_f1: " + std::to_string(gold.size()) +
                                " gold sentences vs " +
                                std::to_string(predicted.size()) + " predicted");
  }
  F1Report report;
  report.scheme = options.scheme.value_or(DetectScheme(gold, options.null_label));

  for (std::size_t s = 0; s < gold.size(); ++s) {
    if (gold[s].size() != predicted[s].size()) {
      throw std::invalid_argument(
          "score_f1: sentence " + std::to_string(s) + " has " +
          std::to_string(gold[s].size()) + " gold labels vs " +
          std::to_string(predicted[s].size()) + " predicted");
    }
    for (std::size_t t = 0; t < gold[s].size(); ++t) {
      ++report.tokens;
      if (gold[s][t] == predicted[s][t]) ++report.correct_tokens;
    }
    const auto g = ExtractSegments(gold[s], report.scheme, options.null_label, s);
    const auto p =
        ExtractSegments(predicted[s], report.scheme, options.null_label, s);
    const std::set<Segment> gold_set(g.begin(), g.end());
    for (const Segment& seg : g) ++report.per_label[seg.type].gold;
    for (const Segment& seg : p) {
      LabelScore& score = report.per_label[seg.type];
      ++score.predicted;
      if (gold_set.contains(seg)) {
        ++score.correct;
        ++report.correct_segments;
      }
    }
    report.gold_segments += g.size();
    report.predicted_segments += p.size();
  }
  report.precision = Percent(report.correct_segments, report.predicted_segments);
  report.recall = Percent(report.correct_segments, report.gold_segments);
  report.f1 = HarmonicMean(report.precision, report.recall);
  for (auto& [label, score] : report.per_label) {
    score.precision = Percent(score.correct, score.predicted);
    score.recall = Percent(score.correct, score.gold);
    score.f1 = HarmonicMean(score.precision, score.recall);
  }
  return report;
}

std::string FormatReport(const F1Report& report) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(2);
  out << "segments (" << SegmentSchemeName(report.scheme)
      << " labels): gold " << report.gold_segments << ", predicted "
      << report.predicted_segments << ", correct " << report.correct_segments
      << "\n";
  out << "precision " << report.precision << "  recall " << report.recall
      << "  F1 " << report.f1 << "  token accuracy "
      << report.token_accuracy() << "\n";
  for (const auto& [label, s] : report.per_label) {
    out << "  " << label << ": P " << s.precision << " R " << s.recall
        << " F1 " << s.f1 << " (" << s.correct << "/" << s.predicted << "/"
        << s.gold << ")\n";
  }
  return out.str();
}

void WriteReportCsv(const F1Report& report, std::ostream& out) {
  out << "label,gold,predicted,correct,precision,recall,f1\n";
  for (const auto& [label, s] : report.per_label) {
    out << label << ',' << s.gold << ',' << s.predicted << ',' << s.correct
        << ',' << FormatDouble(s.precision) << ',' << FormatDouble(s.recall)
        << ',' << FormatDouble(s.f1) << '\n';
  }
  out << "overall," << report.gold_segments << ',' << report.predicted_segments
      << ',' << report.correct_segments << ',' << FormatDouble(report.precision)
      << ',' << FormatDouble(report.recall) << ',' << FormatDouble(report.f1)
      << '\n';
}

RunSummary SummarizeRuns(std::span<const double> f1s) {
  if (f1s.empty()) throw std::invalid_argument("summarize_runs: no runs");
  RunSummary s;
  s.f1s.assign(f1s.begin(), f1s.end());
  s.max = *std::max_element(f1s.begin(), f1s.end());
  s.min = *std::min_element(f1s.begin(), f1s.end());
  // Summation in sorted order so the mean does not depend on run order.
  std::vector<double> sorted = s.f1s;
  std::sort(sorted.begin(), sorted.end());
  double sum = 0.0;
  for (double v : sorted) sum += v;
  s.mean = sum / static_cast<double>(sorted.size());
  s.mean = std::clamp(s.mean, s.min, s.max);
  return s;
}

void WriteRunSummaryCsv(const RunSummary& summary, std::ostream& out) {
  out << "run,f1\n";
  for (std::size_t i = 0; i < summary.f1s.size(); ++i) {
    out << i << ',' << FormatDouble(summary.f1s[i]) << '\n';
  }
  out << "max," << FormatDouble(summary.max) << '\n';
  out << "min," << FormatDouble(summary.min) << '\n';
  out << "mean," << FormatDouble(summary.mean) << '\n';
}

void EntropySeries::Append(std::size_t epoch, double per_word_nll) {
  points_.push_back({epoch, per_word_nll, std::log10(per_word_nll)});
}

void EntropySeries::WriteCsv(std::ostream& out) const {
  out << "epoch,nll,log10_nll\n";
  for (const auto& p : points_) {
    out << p.epoch << ',' << FormatDouble(p.nll) << ','
        << FormatDouble(p.log10_nll) << '\n';
  }
}

EntropySeries EntropySeries::ReadCsv(std::istream& in) {
  EntropySeries series;
  std::string line;
  if (!std::getline(in, line) || Trim(line) != "epoch,nll,log10_nll") {
    throw std::invalid_argument("entropy CSV: missing header");
  }
  while (std::getline(in, line)) {
    if (Trim(line).empty()) continue;
    const auto fields = SplitString(Trim(line), ',');
    if (fields.size() != 3) {
      throw std::invalid_argument("entropy CSV: bad row '" + line + "'");
    }
    EntropyPoint p;
    p.epoch = ParseUint(fields[0], "epoch");
    p.nll = ParseDouble(fields[1], "nll");
    p.log10_nll = ParseDouble(fields[2], "log10_nll");
    series.points_.push_back(p);
  }
  return series;
}

EntropySeries TrackEntropy(std::span<const double> per_word_nll_by_epoch) {
  EntropySeries series;
  for (std::size_t i = 0; i < per_word_nll_by_epoch.size(); ++i) {
    series.Append(i + 1, per_word_nll_by_epoch[i]);
  }
  return series;
}

}  // namespace rnnem
