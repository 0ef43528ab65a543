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

#include "rnnem/trainer.h"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "json.hpp"
#include "rnnem/rng.h"
#include "rnnem/synthetic.h"
#include "rnnem/text_util.h"

namespace rnnem {

std::string Sha256Hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) {
    out << std::hex << std::setw(2) << std::setfill('0')
        << static_cast<int>(digest[i]);
  }
  return out.str();
}

std::string FileSha256(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return Sha256Hex(buf.str());
}

namespace {

std::string ConllText(const Corpus& corpus) {
  std::ostringstream out;
  WriteConll(corpus, out);
  return out.str();
}

}  // namespace

Datasets LoadDatasets(const TrainConfig& cfg) {
  Datasets data;
  if (cfg.train_path.empty()) {
    SynthCorpora synth = GenerateSynthetic(cfg.synth);
    data.train = std::move(synth.train);
    data.test = std::move(synth.test);
    data.content_hashes["train"] = Sha256Hex(ConllText(data.train));
    data.content_hashes["test"] = Sha256Hex(ConllText(data.test));
    return data;
  }
  data.train = LoadConll(cfg.train_path);
  data.content_hashes["train"] = FileSha256(cfg.train_path);
  ConllOptions reuse;
  reuse.reuse_vocab = &data.train;
  if (!cfg.test_path.empty()) {
    data.test = LoadConll(cfg.test_path, reuse);
    data.content_hashes["test"] = FileSha256(cfg.test_path);
  } else {
    data.test.word_vocab = data.train.word_vocab;
    data.test.label_vocab = data.train.label_vocab;
  }
  if (!cfg.dev_path.empty()) {
    data.dev = LoadConll(cfg.dev_path, reuse);
    data.content_hashes["dev"] = FileSha256(cfg.dev_path);
  }
  return data;
}

namespace {

CellState SentenceStart(const TaggerModel& model, const CellState& carried,
                        MemoryPolicy policy) {
  CellState state = model.InitialState();
  if (policy == MemoryPolicy::kPersistent && carried.memory) {
    state.memory = carried.memory;
  }
  return state;
}

std::vector<bool> SingletonWords(const Corpus& corpus) {
  std::vector<std::size_t> counts(corpus.word_vocab.size(), 0);
  for (const auto& s : corpus.sequences)
    for (int w : s.words) ++counts[static_cast<std::size_t>(w)];
  std::vector<bool> single(counts.size(), false);
  for (std::size_t i = 0; i < counts.size(); ++i) single[i] = counts[i] == 1;
  return single;
}

}  // namespace

TrainResult Train(const TrainConfig& cfg, const Datasets& data,
                  const EpochCallback& on_epoch) {
  cfg.Validate();
  if (data.train.sequences.empty()) {
    throw std::invalid_argument("training corpus is empty");
  }
  Rng rng(cfg.seed);
  Rng init_rng = rng.Fork(1);
  Rng unk_rng = rng.Fork(2);

  const TaggerDims dims = cfg.MakeDims(data.train.word_vocab.size(),
                                       data.train.label_vocab.size());
  TrainResult result;
  result.model = InitTagger(cfg.cell, dims, init_rng, cfg.memory_init);
  TaggerModel& model = result.model;
  result.optimizer = cfg.MakeOptimizer(model.params);

  TaggerParams grads = model.params.ZerosLike();
  std::vector<Tensor*> param_list = model.params.Tensors();
  std::vector<Tensor*> grad_list = grads.Tensors();
  std::vector<const Tensor*> grad_view(grad_list.begin(), grad_list.end());

  const std::vector<bool> singletons = SingletonWords(data.train);
  std::optional<TaggerModel> best;
  double best_dev_f1 = -1.0;

  std::vector<int> words;
  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    CellState carried = model.InitialState();
    double total_nll = 0.0;
    std::size_t tokens = 0;
    for (const TaggedSequence& seq : data.train.sequences) {
      words = seq.words;
      if (cfg.unk_replace_prob > 0.0) {
        for (int& w : words) {
          if (singletons[static_cast<std::size_t>(w)] &&
              unk_rng.Bernoulli(cfg.unk_replace_prob)) {
            w = kUnkIndex;
          }
        }
      }
      const CellState start = SentenceStart(model, carried, cfg.memory_policy);
      ForwardResult fwd = ForwardSequence(model, words, seq.labels, start);
      total_nll += fwd.loss.total_nll;
      tokens += fwd.loss.token_count;

      grads.SetZero();
      BackwardSequence(model, fwd.cache, grads);
      ClipGradients(grad_list, cfg.clip);
      ApplyUpdate(param_list, grad_view, result.optimizer);
      model.MarkUpdated();
      carried = std::move(fwd.final_state);
    }

    EpochReport report;
    report.epoch = epoch;
    report.train_nll = total_nll / static_cast<double>(tokens);
    result.entropy.Append(epoch, report.train_nll);
    if (data.dev) {
      const F1Report dev = EvaluateModel(model, *data.dev, cfg.memory_policy,
                                         cfg.null_label);
      report.dev_f1 = dev.f1;
      if (dev.f1 > best_dev_f1) {
        best_dev_f1 = dev.f1;
        best = model;
        result.selected_epoch = epoch;
      }
    } else {
      result.selected_epoch = epoch;
    }
    result.epochs.push_back(report);
    if (on_epoch) on_epoch(report);
  }
  if (best) model = std::move(*best);
  return result;
}

std::vector<std::vector<int>> PredictCorpus(const TaggerModel& model,
                                            const Corpus& corpus,
                                            MemoryPolicy policy) {
  std::vector<std::vector<int>> out;
  out.reserve(corpus.sequences.size());
  CellState carried = model.InitialState();
  for (const TaggedSequence& seq : corpus.sequences) {
    CellState state = SentenceStart(model, carried, policy);
    out.push_back(Predict(model, seq.words, state));
    carried = std::move(state);
  }
  return out;
}

F1Report EvaluateModel(const TaggerModel& model, const Corpus& corpus,
                       MemoryPolicy policy, const std::string& null_label,
                       std::vector<std::vector<int>>* predictions) {
  auto predicted = PredictCorpus(model, corpus, policy);
  LabelSequences pred_labels;
  pred_labels.reserve(predicted.size());
  for (const auto& s : predicted) {
    std::vector<std::string> labels;
    for (int l : s) labels.push_back(corpus.label_vocab.Token(l));
    pred_labels.push_back(std::move(labels));
  }
  ScoreOptions options;
  options.null_label = null_label;
  F1Report report = ScoreF1(corpus.LabelStrings(), pred_labels, options);
  if (predictions != nullptr) *predictions = std::move(predicted);
  return report;
}

double CorpusEntropy(const TaggerModel& model, const Corpus& corpus,
                     MemoryPolicy policy) {
  double total = 0.0;
  std::size_t tokens = 0;
  CellState carried = model.InitialState();
  for (const TaggedSequence& seq : corpus.sequences) {
    const CellState start = SentenceStart(model, carried, policy);
    ForwardResult fwd = ForwardSequence(model, seq.words, seq.labels, start, false);
    total += fwd.loss.total_nll;
    tokens += fwd.loss.token_count;
    carried = std::move(fwd.final_state);
  }
  return tokens == 0 ? 0.0 : total / static_cast<double>(tokens);
}

namespace {

void WriteText(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace

RunArtifacts RunTrainingJob(const TrainConfig& cfg,
                            const EpochCallback& on_epoch) {
  cfg.Validate();
  const Datasets data = LoadDatasets(cfg);
  const std::filesystem::path dir = cfg.output_dir;
  std::filesystem::create_directories(dir);

  RunArtifacts art;
  art.result = Train(cfg, data, on_epoch);

  art.entropy_csv = dir / "entropy.csv";
  std::ostringstream entropy;
  art.result.entropy.WriteCsv(entropy);
  WriteText(art.entropy_csv, entropy.str());

  Checkpoint ckpt;
  ckpt.model = art.result.model;
  ckpt.optimizer = art.result.optimizer;
  ckpt.word_vocab = data.train.word_vocab;
  ckpt.label_vocab = data.train.label_vocab;
  // The output location is left out so that replays into another directory
  // produce identical checkpoint bytes.
  TrainConfig stored = cfg;
  stored.output_dir.clear();
  ckpt.config_text = stored.ToText();
  ckpt.epochs_completed = art.result.selected_epoch;
  art.checkpoint = dir / "model.ckpt";
  SaveCheckpoint(ckpt, art.checkpoint);

  nlohmann::json metrics;
  if (!data.test.sequences.empty()) {
    std::vector<std::vector<int>> predicted;
    art.test_report = EvaluateModel(art.result.model, data.test,
                                    cfg.memory_policy, cfg.null_label,
                                    &predicted);
    art.predictions = dir / "test_predictions.conll";
    std::ostringstream pred;
    WritePredictions(data.test, predicted, pred);
    WriteText(art.predictions, pred.str());
    art.report_csv = dir / "test_report.csv";
    std::ostringstream report;
    WriteReportCsv(art.test_report, report);
    WriteText(art.report_csv, report.str());
    metrics["test_f1"] = art.test_report.f1;
    metrics["test_precision"] = art.test_report.precision;
    metrics["test_recall"] = art.test_report.recall;
    metrics["segment_scheme"] = std::string(SegmentSchemeName(art.test_report.scheme));
  }
  metrics["final_train_entropy"] = art.result.entropy.back().nll;
  metrics["selected_epoch"] = art.result.selected_epoch;
  metrics["cell_param_count"] = CountParams(art.result.model.params.cell);
  metrics["total_param_count"] = art.result.model.params.Count();

  nlohmann::json manifest;
  manifest["config"] = cfg.ToText();
  manifest["config_sha256"] = Sha256Hex(cfg.ToText());
  manifest["seed"] = cfg.seed;
  manifest["data_sha256"] = data.content_hashes;
  manifest["corpus"] = {{"train_sentences", data.train.sequences.size()},
                        {"train_tokens", data.train.token_count()},
                        {"test_sentences", data.test.sequences.size()},
                        {"test_tokens", data.test.token_count()},
                        {"vocab_size", data.train.word_vocab.size()},
                        {"labels", data.train.label_vocab.size()}};
  manifest["metrics"] = metrics;
  manifest["artifacts"] = {{"entropy_csv", "entropy.csv"},
                           {"checkpoint", "model.ckpt"}};
  if (!art.predictions.empty()) {
    manifest["artifacts"]["predictions"] = "test_predictions.conll";
    manifest["artifacts"]["test_report"] = "test_report.csv";
  }
  manifest["artifacts_sha256"] = {
      {"entropy_csv", Sha256Hex(entropy.str())},
      {"checkpoint", FileSha256(art.checkpoint)}};
  art.manifest = dir / "manifest.json";
  WriteText(art.manifest, manifest.dump(2) + "\n");
  return art;
}

TrainConfig ConfigFromManifest(const std::filesystem::path& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw std::runtime_error("cannot open manifest " + manifest_path.string());
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("manifest " + manifest_path.string() +
                             " is not valid JSON: " + e.what());
  }
  TrainConfig cfg = ParseConfig(manifest.at("config").get<std::string>());
  const Datasets data = LoadDatasets(cfg);
  const auto recorded =
      manifest.at("data_sha256").get<std::map<std::string, std::string>>();
  if (recorded != data.content_hashes) {
    throw std::runtime_error(
        "data referenced by the manifest no longer matches its recorded "
        "SHA-256 hashes");
  }
  return cfg;
}

}  // namespace rnnem
