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

#ifndef RNNEM_CONFIG_H_
#define RNNEM_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rnnem/cells.h"
#include "rnnem/optim.h"
#include "rnnem/synthetic.h"
#include "rnnem/tagger.h"

namespace rnnem {

// What happens to the external memory between sentences. Hidden and LSTM
// cell vectors always restart from zero.
enum class MemoryPolicy { kPersistent, kResetPerSentence };

std::string_view MemoryPolicyName(MemoryPolicy policy);
MemoryPolicy ParseMemoryPolicy(std::string_view name);

enum class OptimizerKind { kAdaDelta, kSgd };

struct TrainConfig {
  CellKind cell = CellKind::kRnnEm;
  std::size_t embed_dim = 100;
  std::size_t hidden = 100;
  std::size_t slot_dim = 40;
  std::size_t slot_count = 8;
  // Half-width: 1 gives the three-word window (previous, current, next).
  std::size_t window = 1;
  std::size_t epochs = 50;
  std::uint64_t seed = 1;
  MemoryPolicy memory_policy = MemoryPolicy::kPersistent;
  double memory_init = ExternalMemory::kDefaultInitValue;

  OptimizerKind optimizer = OptimizerKind::kAdaDelta;
  double adadelta_rho = 0.95;
  double adadelta_eps = 1e-6;
  double learning_rate = 0.1;  // SGD only
  ClipConfig clip;

  // Training words seen once are replaced by <unk> with this probability.
  double unk_replace_prob = 0.5;
  std::string null_label = "O";

  // Empty train_path selects the synthetic generator.
  std::string train_path;
  std::string test_path;
  std::string dev_path;
  SynthConfig synth;

  std::string output_dir = "runs/default";

  // Throws std::invalid_argument describing the first invalid field.
  void Validate() const;

  TaggerDims MakeDims(std::size_t vocab_size, std::size_t labels) const;
  OptimizerState MakeOptimizer(const TaggerParams& params) const;

  // One "key=value" per line in a fixed key order. Doubles use shortest
  // round-trip formatting, so ParseConfig(ToText()) reproduces every field.
  std::string ToText() const;
  // Applies one key=value assignment. Throws on unknown keys or bad values.
  void Set(std::string_view key, std::string_view value);

  static std::vector<std::string> Keys();
};

// Lines are key=value; blank lines and lines starting with '#' are skipped.
TrainConfig ParseConfig(std::string_view text);
TrainConfig LoadConfig(const std::string& path);

}  // namespace rnnem

#endif  // RNNEM_CONFIG_H_
