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

#ifndef RNNEM_TRAINER_H_
#define RNNEM_TRAINER_H_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rnnem/checkpoint.h"
#include "rnnem/config.h"
#include "rnnem/corpus.h"
#include "rnnem/eval.h"
#include "rnnem/optim.h"
#include "rnnem/tagger.h"

namespace rnnem {

struct Datasets {
  Corpus train;
  Corpus test;
  std::optional<Corpus> dev;
  // "train"/"test"/"dev" -> SHA-256 of the CoNLL text the split came from.
  std::map<std::string, std::string> content_hashes;
};

// Reads the CoNLL files named by cfg, or generates the synthetic corpora when
// cfg.train_path is empty. Test and dev reuse the training vocabularies.
Datasets LoadDatasets(const TrainConfig& cfg);

std::string Sha256Hex(std::string_view data);
std::string FileSha256(const std::filesystem::path& path);

struct EpochReport {
  std::size_t epoch = 0;
  double train_nll = 0.0;  // mean per-word NLL accumulated over the epoch
  std::optional<double> dev_f1;
};

struct TrainResult {
  TaggerModel model;  // final, or best on dev when a dev split exists
  OptimizerState optimizer = SgdState{};
  EntropySeries entropy;
  std::vector<EpochReport> epochs;
  std::size_t selected_epoch = 0;
};

using EpochCallback = std::function<void(const EpochReport&)>;

// Per-sentence updates in corpus order. Under the persistent policy the
// RNN-EM memory is carried from sentence to sentence (gradients stop at the
// sentence boundary) and reset at the start of every epoch.
TrainResult Train(const TrainConfig& cfg, const Datasets& data,
                  const EpochCallback& on_epoch = {});

// Argmax-decodes every sentence. Under the persistent policy memory starts
// fresh and is carried through the corpus in order.
std::vector<std::vector<int>> PredictCorpus(const TaggerModel& model,
                                            const Corpus& corpus,
                                            MemoryPolicy policy);

F1Report EvaluateModel(const TaggerModel& model, const Corpus& corpus,
                       MemoryPolicy policy, const std::string& null_label,
                       std::vector<std::vector<int>>* predictions = nullptr);

// Mean per-word NLL over a corpus without updating anything.
double CorpusEntropy(const TaggerModel& model, const Corpus& corpus,
                     MemoryPolicy policy);

struct RunArtifacts {
  std::filesystem::path entropy_csv;
  std::filesystem::path checkpoint;
  std::filesystem::path manifest;
  std::filesystem::path predictions;
  std::filesystem::path report_csv;
  F1Report test_report;
  TrainResult result;
};

// Trains, evaluates on the test split and writes entropy.csv, model.ckpt,
// test_predictions.conll, test_report.csv and manifest.json into
// cfg.output_dir.
RunArtifacts RunTrainingJob(const TrainConfig& cfg,
                            const EpochCallback& on_epoch = {});

// Recovers the configuration embedded in a manifest and checks that the data
// it names still hashes to the recorded values.
TrainConfig ConfigFromManifest(const std::filesystem::path& manifest);

}  // namespace rnnem

#endif  // RNNEM_TRAINER_H_
