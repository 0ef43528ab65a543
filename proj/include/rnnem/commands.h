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

#ifndef RNNEM_COMMANDS_H_
#define RNNEM_COMMANDS_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rnnem/config.h"
#include "rnnem/eval.h"
#include "rnnem/gradcheck.h"

namespace rnnem {

// Name of the environment variable that, when set and non-empty, replaces
// the configured output directory.
inline constexpr char kOutputDirEnv[] = "RNNEM_OUTPUT_DIR";

// Applies kOutputDirEnv to cfg if present.
void ApplyOutputDirOverride(TrainConfig& cfg);

// Trains and writes the run artifacts. Progress goes to log.
F1Report CmdTrain(const TrainConfig& cfg, std::ostream& log);

struct EvalOutcome {
  F1Report report;
  std::filesystem::path predictions;
  std::filesystem::path report_csv;
};

// Loads a checkpoint, tags `data` with it and writes predictions.conll and
// report.csv into out_dir. Never modifies the checkpoint.
EvalOutcome CmdEval(const std::filesystem::path& checkpoint,
                    const std::filesystem::path& data,
                    const std::filesystem::path& out_dir, std::ostream& log);

// Runs the finite-difference check for each kind and prints the worst
// relative error per parameter tensor. Returns true when every kind passes.
bool CmdGradcheck(const std::vector<CellKind>& kinds,
                  const GradCheckOptions& options, std::ostream& log);

struct SweepRow {
  std::size_t slot_count = 0;
  double f1 = 0.0;
  double entropy = 0.0;
  std::string status;  // "ok" or the failure message
};

// One training run per slot count, slot_dim held at base.slot_dim. Each run
// writes into <output_dir>/n<count>; the table goes to <output_dir>/sweep.csv.
std::vector<SweepRow> CmdSweepSlots(const TrainConfig& base,
                                    const std::vector<std::size_t>& slots,
                                    std::ostream& log);

void WriteSweepCsv(const std::vector<SweepRow>& rows, std::ostream& out);

}  // namespace rnnem

#endif  // RNNEM_COMMANDS_H_
