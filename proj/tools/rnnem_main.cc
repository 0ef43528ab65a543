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

// rnnem: train, evaluate and inspect external-memory sequence taggers.
//
//   rnnem train --config run.cfg --epochs 10
//   rnnem train --manifest runs/a/manifest.json
//   rnnem eval --checkpoint runs/a/model.ckpt --data test.conll --out eval/
//   rnnem gradcheck --cell all
//   rnnem sweep-slots --slots 1,2,8,64 --output_dir runs/sweep
//   rnnem synth --out data/

#include <cstdlib>
#include <exception>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rnnem/commands.h"
#include "rnnem/config.h"
#include "rnnem/corpus.h"
#include "rnnem/synthetic.h"
#include "rnnem/trainer.h"

namespace {

constexpr int kUsageError = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One string flag per TrainConfig key; dots become dashes (synth.seed ->
// --synth-seed).
struct ConfigFlags {
  std::string config_path;
  std::map<std::string, std::string> values;

  void Register(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "key=value configuration file");
    for (const std::string& key : rnnem::TrainConfig::Keys()) {
      std::string flag = key;
      for (char& c : flag) {
        if (c == '.') c = '-';
      }
      cmd->add_option("--" + flag, values[key], "overrides " + key);
    }
  }

  // Base config from --config (or `base`), then the output-dir environment
  // override, then explicit flags.
  rnnem::TrainConfig Resolve(CLI::App* cmd,
                             rnnem::TrainConfig base = {}) const {
    rnnem::TrainConfig cfg =
        config_path.empty() ? base : rnnem::LoadConfig(config_path);
    rnnem::ApplyOutputDirOverride(cfg);
    for (const auto& [key, value] : values) {
      std::string flag = key;
      for (char& c : flag) {
        if (c == '.') c = '-';
      }
      if (cmd->count("--" + flag) == 0) continue;
      try {
        cfg.Set(key, value);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }
    try {
      cfg.Validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return cfg;
  }
};

std::vector<std::size_t> ParseSlotList(const std::string& text) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    const std::string item = text.substr(start, comma - start);
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size() || v == 0) {
      throw UsageError("bad slot count '" + item + "' in --slots");
    }
    out.push_back(static_cast<std::size_t>(v));
    start = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequence tagging with external-memory recurrent networks"};
  app.require_subcommand(1);

  ConfigFlags train_flags;
  std::string manifest_path;
  CLI::App* train = app.add_subcommand("train", "train a tagger");
  train_flags.Register(train);
  train->add_option("--manifest", manifest_path,
                    "replay the configuration stored in a run manifest");

  std::string ckpt_path, data_path, eval_out = "eval";
  CLI::App* eval = app.add_subcommand("eval", "evaluate a checkpoint");
  eval->add_option("--checkpoint", ckpt_path, "model.ckpt to load")->required();
  eval->add_option("--data", data_path, "CoNLL file to tag")->required();
  eval->add_option("--out", eval_out, "directory for predictions and report");

  std::string gc_cell = "all", gc_corrupt;
  rnnem::GradCheckOptions gc_opts;
  CLI::App* gradcheck =
      app.add_subcommand("gradcheck", "finite-difference gradient check");
  gradcheck->add_option("--cell", gc_cell, "cell kind or 'all'");
  gradcheck->add_option("--seed", gc_opts.seed, "configuration seed");
  gradcheck->add_option("--samples", gc_opts.sampled_coords,
                        "coordinates per cell, 0 for all");
  gradcheck->add_option("--tolerance", gc_opts.tolerance,
                        "maximum relative error");
  gradcheck->add_option("--corrupt", gc_corrupt,
                        "perturb this tensor's analytic gradient");

  ConfigFlags sweep_flags;
  std::string slot_list = "1,2,4,8,16,32,64";
  CLI::App* sweep =
      app.add_subcommand("sweep-slots", "train one model per slot count");
  sweep_flags.Register(sweep);
  sweep->add_option("--slots", slot_list, "comma-separated slot counts");

  ConfigFlags synth_flags;
  std::string synth_out = "synth";
  CLI::App* synth =
      app.add_subcommand("synth", "write the synthetic corpora as CoNLL");
  synth_flags.Register(synth);
  synth->add_option("--out", synth_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? EXIT_SUCCESS : kUsageError;
  }

  try {
    if (train->parsed()) {
      rnnem::TrainConfig base;
      if (!manifest_path.empty()) {
        base = rnnem::ConfigFromManifest(manifest_path);
      }
      const rnnem::TrainConfig cfg = train_flags.Resolve(train, base);
      rnnem::CmdTrain(cfg, std::cout);
      return EXIT_SUCCESS;
    }
    if (eval->parsed()) {
      rnnem::CmdEval(ckpt_path, data_path, eval_out, std::cout);
      return EXIT_SUCCESS;
    }
    if (gradcheck->parsed()) {
      std::vector<rnnem::CellKind> kinds;
      if (gc_cell == "all") {
        kinds.assign(std::begin(rnnem::kAllCellKinds),
                     std::end(rnnem::kAllCellKinds));
      } else {
        try {
          kinds.push_back(rnnem::ParseCellKind(gc_cell));
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
      }
      gc_opts.corrupt_tensor = gc_corrupt;
      return rnnem::CmdGradcheck(kinds, gc_opts, std::cout) ? EXIT_SUCCESS
                                                             : EXIT_FAILURE;
    }
    if (sweep->parsed()) {
      const rnnem::TrainConfig cfg = sweep_flags.Resolve(sweep);
      const auto rows =
          rnnem::CmdSweepSlots(cfg, ParseSlotList(slot_list), std::cout);
      rnnem::WriteSweepCsv(rows, std::cout);
      return EXIT_SUCCESS;
    }
    if (synth->parsed()) {
      const rnnem::TrainConfig cfg = synth_flags.Resolve(synth);
      const rnnem::SynthCorpora corpora = rnnem::GenerateSynthetic(cfg.synth);
      std::filesystem::create_directories(synth_out);
      rnnem::WriteConll(corpora.train,
                        std::filesystem::path(synth_out) / "train.conll");
      rnnem::WriteConll(corpora.test,
                        std::filesystem::path(synth_out) / "test.conll");
      return EXIT_SUCCESS;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return EXIT_FAILURE;
  }
  return EXIT_FAILURE;
}
