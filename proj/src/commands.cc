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

#include "rnnem/commands.h"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "rnnem/checkpoint.h"
#include "rnnem/corpus.h"
#include "rnnem/text_util.h"
#include "rnnem/trainer.h"

namespace rnnem {

void ApplyOutputDirOverride(TrainConfig& cfg) {
  const char* env = std::getenv(kOutputDirEnv);
  if (env != nullptr && *env != '\0') cfg.output_dir = env;
}

F1Report CmdTrain(const TrainConfig& cfg, std::ostream& log) {
  log << "training " << CellKindName(cfg.cell) << " for " << cfg.epochs
      << " epochs into " << cfg.output_dir << "\n";
  RunArtifacts art = RunTrainingJob(cfg, [&log](const EpochReport& r) {
    log << "epoch " << r.epoch << " entropy " << FormatDouble(r.train_nll);
    if (r.dev_f1) log << " dev_f1 " << FormatDouble(*r.dev_f1);
    log << "\n";
  });
  log << FormatReport(art.test_report);
  log << "manifest: " << art.manifest.string() << "\n";
  return art.test_report;
}

EvalOutcome CmdEval(const std::filesystem::path& checkpoint,
                    const std::filesystem::path& data,
                    const std::filesystem::path& out_dir, std::ostream& log) {
  const Checkpoint ckpt = LoadCheckpoint(checkpoint);
  const TrainConfig cfg = ParseConfig(ckpt.config_text);

  Corpus vocab;
  vocab.word_vocab = ckpt.word_vocab;
  vocab.label_vocab = ckpt.label_vocab;
  ConllOptions options;
  options.reuse_vocab = &vocab;
  const Corpus corpus = LoadConll(data, options);

  EvalOutcome outcome;
  std::vector<std::vector<int>> predicted;
  outcome.report = EvaluateModel(ckpt.model, corpus, cfg.memory_policy,
                                 cfg.null_label, &predicted);

  std::filesystem::create_directories(out_dir);
  outcome.predictions = out_dir / "predictions.conll";
  {
    std::ofstream out(outcome.predictions, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + outcome.predictions.string());
    WritePredictions(corpus, predicted, out);
  }
  outcome.report_csv = out_dir / "report.csv";
  {
    std::ofstream out(outcome.report_csv, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + outcome.report_csv.string());
    WriteReportCsv(outcome.report, out);
  }
  log << FormatReport(outcome.report);
  return outcome;
}

bool CmdGradcheck(const std::vector<CellKind>& kinds,
                  const GradCheckOptions& options, std::ostream& log) {
  bool all_pass = true;
  for (CellKind kind : kinds) {
    const GradCheckReport report = RunGradCheck(kind, options);
    log << CellKindName(kind) << ": " << (report.pass ? "PASS" : "FAIL")
        << " worst " << FormatDouble(report.worst_relative_error)
        << " (hidden " << report.dims.hidden << ", embed "
        << report.dims.embed_dim;
    if (kind == CellKind::kRnnEm) {
      log << ", slot_dim " << report.dims.slot_dim << ", slots "
          << report.dims.slot_count;
    }
    log << ")\n";
    for (const TensorCheck& t : report.tensors) {
      log << "  " << (t.pass ? "ok  " : "FAIL") << " " << t.name << " coords "
          << t.coords_checked << " worst "
          << FormatDouble(t.worst_relative_error) << "\n";
    }
    all_pass = all_pass && report.pass;
  }
  return all_pass;
}

std::vector<SweepRow> CmdSweepSlots(const TrainConfig& base,
                                    const std::vector<std::size_t>& slots,
                                    std::ostream& log) {
  std::vector<SweepRow> rows;
  const std::filesystem::path root = base.output_dir;
  std::filesystem::create_directories(root);
  for (std::size_t n : slots) {
    SweepRow row;
    row.slot_count = n;
    TrainConfig cfg = base;
    cfg.slot_count = n;
    cfg.output_dir = (root / ("n" + std::to_string(n))).string();
    try {
      log << "sweep: n=" << n << "\n";
      const RunArtifacts art = RunTrainingJob(cfg);
      row.f1 = art.test_report.f1;
      row.entropy = art.result.entropy.back().nll;
      row.status = "ok";
    } catch (const std::exception& e) {
      row.status = e.what();
      log << "sweep: n=" << n << " failed: " << e.what() << "\n";
    }
    rows.push_back(row);
  }
  std::ofstream out(root / "sweep.csv", std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write sweep.csv in " + root.string());
  WriteSweepCsv(rows, out);
  return rows;
}

void WriteSweepCsv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "n,f1,entropy,status\n";
  for (const SweepRow& r : rows) {
    std::string status = r.status;
    for (char& c : status) {
      if (c == ',' || c == '\n' || c == '\r') c = ' ';
    }
    out << r.slot_count << "," << FormatDouble(r.f1) << ","
        << FormatDouble(r.entropy) << "," << status << "\n";
  }
}

}  // namespace rnnem
