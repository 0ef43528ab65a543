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

#include "rnnem/config.h"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "rnnem/text_util.h"

namespace rnnem {

std::string_view MemoryPolicyName(MemoryPolicy policy) {
  return policy == MemoryPolicy::kPersistent ? "persistent"
                                             : "reset_per_sentence";
}

MemoryPolicy ParseMemoryPolicy(std::string_view name) {
  if (name == "persistent") return MemoryPolicy::kPersistent;
  if (name == "reset_per_sentence") return MemoryPolicy::kResetPerSentence;
  throw std::invalid_argument("unknown memory policy '" + std::string(name) +
                              "' (expected persistent or reset_per_sentence)");
}

namespace {

struct Field {
  std::function<std::string(const TrainConfig&)> get;
  std::function<void(TrainConfig&, std::string_view)> set;
};

std::size_t ToSize(std::string_view v, std::string_view key) {
  return static_cast<std::size_t>(ParseUint(v, key));
}

bool ToBool(std::string_view v, std::string_view key) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw std::invalid_argument("invalid " + std::string(key) + ": '" +
                              std::string(v) + "' (expected true or false)");
}

#define RNNEM_SIZE_FIELD(key, member)                                 \
  {key,                                                               \
   {[](const TrainConfig& c) { return std::to_string(c.member); },    \
    [](TrainConfig& c, std::string_view v) { c.member = ToSize(v, key); }}}
#define RNNEM_DOUBLE_FIELD(key, member)                                 \
  {key,                                                                 \
   {[](const TrainConfig& c) { return FormatDouble(c.member); },        \
    [](TrainConfig& c, std::string_view v) { c.member = ParseDouble(v, key); }}}
#define RNNEM_STRING_FIELD(key, member)                          \
  {key,                                                          \
   {[](const TrainConfig& c) { return c.member; },               \
    [](TrainConfig& c, std::string_view v) { c.member = std::string(v); }}}

const std::vector<std::pair<std::string, Field>>& Fields() {
  static const std::vector<std::pair<std::string, Field>> fields = {
      {"cell",
       {[](const TrainConfig& c) { return std::string(CellKindName(c.cell)); },
        [](TrainConfig& c, std::string_view v) { c.cell = ParseCellKind(v); }}},
      RNNEM_SIZE_FIELD("embed_dim", embed_dim),
      RNNEM_SIZE_FIELD("hidden", hidden),
      RNNEM_SIZE_FIELD("slot_dim", slot_dim),
      RNNEM_SIZE_FIELD("slot_count", slot_count),
      RNNEM_SIZE_FIELD("window", window),
      RNNEM_SIZE_FIELD("epochs", epochs),
      {"seed",
       {[](const TrainConfig& c) { return std::to_string(c.seed); },
        [](TrainConfig& c, std::string_view v) { c.seed = ParseUint(v, "seed"); }}},
      {"memory_policy",
       {[](const TrainConfig& c) {
          return std::string(MemoryPolicyName(c.memory_policy));
        },
        [](TrainConfig& c, std::string_view v) {
          c.memory_policy = ParseMemoryPolicy(v);
        }}},
      RNNEM_DOUBLE_FIELD("memory_init", memory_init),
      {"optimizer",
       {[](const TrainConfig& c) {
          return std::string(c.optimizer == OptimizerKind::kAdaDelta ? "adadelta"
                                                                     : "sgd");
        },
        [](TrainConfig& c, std::string_view v) {
          if (v == "adadelta") {
            c.optimizer = OptimizerKind::kAdaDelta;
          } else if (v == "sgd") {
            c.optimizer = OptimizerKind::kSgd;
          } else {
            throw std::invalid_argument("unknown optimizer '" + std::string(v) +
                                        "' (expected adadelta or sgd)");
          }
        }}},
      RNNEM_DOUBLE_FIELD("adadelta_rho", adadelta_rho),
      RNNEM_DOUBLE_FIELD("adadelta_eps", adadelta_eps),
      RNNEM_DOUBLE_FIELD("learning_rate", learning_rate),
      {"clip_enabled",
       {[](const TrainConfig& c) {
          return std::string(c.clip.enabled ? "true" : "false");
        },
        [](TrainConfig& c, std::string_view v) {
          c.clip.enabled = ToBool(v, "clip_enabled");
        }}},
      RNNEM_DOUBLE_FIELD("clip_max_norm", clip.max_norm),
      RNNEM_DOUBLE_FIELD("unk_replace_prob", unk_replace_prob),
      RNNEM_STRING_FIELD("null_label", null_label),
      RNNEM_STRING_FIELD("train_path", train_path),
      RNNEM_STRING_FIELD("test_path", test_path),
      RNNEM_STRING_FIELD("dev_path", dev_path),
      {"synth.seed",
       {[](const TrainConfig& c) { return std::to_string(c.synth.seed); },
        [](TrainConfig& c, std::string_view v) {
          c.synth.seed = ParseUint(v, "synth.seed");
        }}},
      RNNEM_SIZE_FIELD("synth.vocab_size", synth.vocab_size),
      RNNEM_SIZE_FIELD("synth.label_count", synth.label_count),
      RNNEM_SIZE_FIELD("synth.min_length", synth.min_length),
      RNNEM_SIZE_FIELD("synth.max_length", synth.max_length),
      RNNEM_SIZE_FIELD("synth.min_distance", synth.min_distance),
      RNNEM_SIZE_FIELD("synth.max_distance", synth.max_distance),
      RNNEM_SIZE_FIELD("synth.train_size", synth.train_size),
      RNNEM_SIZE_FIELD("synth.test_size", synth.test_size),
      RNNEM_DOUBLE_FIELD("synth.entity_rate", synth.entity_rate),
      RNNEM_STRING_FIELD("output_dir", output_dir),
  };
  return fields;
}

#undef RNNEM_SIZE_FIELD
#undef RNNEM_DOUBLE_FIELD
#undef RNNEM_STRING_FIELD

}  // namespace

void TrainConfig::Validate() const {
  auto fail = [](const std::string& msg) {
    throw std::invalid_argument("invalid config: " + msg);
  };
  if (embed_dim == 0 || hidden == 0) fail("embed_dim and hidden must be positive");
  if (cell == CellKind::kRnnEm && (slot_dim == 0 || slot_count == 0)) {
    fail("slot_dim and slot_count must be positive");
  }
  if (epochs < 1) fail("epochs must be at least 1");
  if (!(adadelta_rho > 0.0 && adadelta_rho < 1.0)) fail("adadelta_rho must be in (0,1)");
  if (!(adadelta_eps > 0.0)) fail("adadelta_eps must be positive");
  if (!(learning_rate > 0.0)) fail("learning_rate must be positive");
  if (clip.enabled && !(clip.max_norm > 0.0)) fail("clip_max_norm must be positive");
  if (!(unk_replace_prob >= 0.0 && unk_replace_prob <= 1.0)) {
    fail("unk_replace_prob must be in [0,1]");
  }
  if (train_path.empty()) {
    if (!test_path.empty() || !dev_path.empty()) {
      fail("test_path/dev_path require train_path");
    }
    synth.Validate();
  }
}

TaggerDims TrainConfig::MakeDims(std::size_t vocab_size,
                                 std::size_t labels) const {
  TaggerDims dims;
  dims.vocab_size = vocab_size;
  dims.labels = labels;
  dims.embed_dim = embed_dim;
  dims.hidden = hidden;
  dims.slot_dim = slot_dim;
  dims.slot_count = slot_count;
  dims.window = window;
  return dims;
}

OptimizerState TrainConfig::MakeOptimizer(const TaggerParams& params) const {
  if (optimizer == OptimizerKind::kSgd) return SgdState{learning_rate};
  const auto tensors = params.Tensors();
  return AdaDeltaState::ForParams(tensors, adadelta_rho, adadelta_eps);
}

std::string TrainConfig::ToText() const {
  std::string out;
  for (const auto& [key, field] : Fields()) {
    out += key + "=" + field.get(*this) + "\n";
  }
  return out;
}

void TrainConfig::Set(std::string_view key, std::string_view value) {
  for (const auto& [name, field] : Fields()) {
    if (name == key) {
      field.set(*this, value);
      return;
    }
  }
  throw std::invalid_argument("unknown config key '" + std::string(key) + "'");
}

std::vector<std::string> TrainConfig::Keys() {
  std::vector<std::string> keys;
  for (const auto& [key, field] : Fields()) keys.push_back(key);
  return keys;
}

TrainConfig ParseConfig(std::string_view text) {
  TrainConfig cfg;
  std::size_t line_no = 0;
  for (const std::string& raw : SplitString(text, '\n')) {
    ++line_no;
    const std::string_view line = Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key=value");
    }
    cfg.Set(Trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return cfg;
}

TrainConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseConfig(buf.str());
}

}  // namespace rnnem
