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

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "gtest/gtest.h"

namespace rnnem {
namespace {

TEST(ConfigTest, DefaultsDescribeTheReferenceModel) {
  const TrainConfig cfg;
  EXPECT_EQ(cfg.cell, CellKind::kRnnEm);
  EXPECT_EQ(cfg.hidden, 100u);
  EXPECT_EQ(cfg.slot_dim, 40u);
  EXPECT_EQ(cfg.slot_count, 8u);
  EXPECT_EQ(cfg.window, 1u);
  EXPECT_EQ(cfg.epochs, 50u);
  EXPECT_EQ(cfg.optimizer, OptimizerKind::kAdaDelta);
  EXPECT_FALSE(cfg.clip.enabled);
  EXPECT_EQ(cfg.memory_policy, MemoryPolicy::kPersistent);
  EXPECT_TRUE(cfg.train_path.empty());
  EXPECT_NO_THROW(cfg.Validate());
  const TaggerDims dims = cfg.MakeDims(50, 10);
  EXPECT_EQ(dims.input_dim(), 300u);
}

TEST(ConfigTest, TextRoundTripIsLossless) {
  TrainConfig cfg;
  cfg.cell = CellKind::kGrnn;
  cfg.hidden = 17;
  cfg.epochs = 3;
  cfg.seed = 18446744073709551615ull;
  cfg.memory_policy = MemoryPolicy::kResetPerSentence;
  cfg.memory_init = 0.1 + 0.2;
  cfg.optimizer = OptimizerKind::kSgd;
  cfg.learning_rate = 1.0 / 3.0;
  cfg.clip = ClipConfig{true, 2.5};
  cfg.unk_replace_prob = 0.0;
  cfg.train_path = "/data/train file.conll";
  cfg.synth.entity_rate = 0.07;
  cfg.synth.train_size = 123;
  cfg.output_dir = "runs/x";
  const std::string text = cfg.ToText();
  const TrainConfig back = ParseConfig(text);
  EXPECT_EQ(back.ToText(), text);
  EXPECT_EQ(back.memory_init, cfg.memory_init);
  EXPECT_EQ(back.learning_rate, cfg.learning_rate);
  EXPECT_EQ(back.seed, cfg.seed);
  EXPECT_EQ(back.train_path, cfg.train_path);
  EXPECT_EQ(back.cell, CellKind::kGrnn);
  EXPECT_TRUE(back.clip.enabled);
}

TEST(ConfigTest, EveryKeyAppearsOnceInText) {
  const std::string text = TrainConfig().ToText();
  for (const std::string& key : TrainConfig::Keys()) {
    const std::string needle = key + "=";
    const auto first = text.find("\n" + needle);
    const bool at_start = text.rfind(needle, 0) == 0;
    EXPECT_TRUE(at_start || first != std::string::npos) << key;
  }
}

TEST(ConfigTest, CommentsBlankLinesAndErrors) {
  const TrainConfig cfg = ParseConfig("# comment\n\n  hidden = 12 \nepochs=2\n");
  EXPECT_EQ(cfg.hidden, 12u);
  EXPECT_EQ(cfg.epochs, 2u);
  EXPECT_THROW(ParseConfig("no_such_key=1\n"), std::invalid_argument);
  EXPECT_THROW(ParseConfig("hidden\n"), std::invalid_argument);
  EXPECT_THROW(ParseConfig("hidden=abc\n"), std::invalid_argument);
  EXPECT_THROW(ParseConfig("cell=gru\n"), std::invalid_argument);
  EXPECT_THROW(ParseConfig("memory_policy=sometimes\n"), std::invalid_argument);
}

TEST(ConfigTest, ValidationRejectsBadValues) {
  auto invalid = [](const std::string& line) {
    TrainConfig cfg;
    cfg.Set(line.substr(0, line.find('=')), line.substr(line.find('=') + 1));
    EXPECT_THROW(cfg.Validate(), std::invalid_argument) << line;
  };
  invalid("hidden=0");
  invalid("embed_dim=0");
  invalid("slot_count=0");
  invalid("slot_dim=0");
  invalid("epochs=0");
  invalid("adadelta_rho=1");
  invalid("adadelta_eps=0");
  invalid("unk_replace_prob=1.5");
  invalid("synth.max_distance=20");
  invalid("test_path=x.conll");
  TrainConfig clip;
  clip.Set("clip_max_norm", "0");
  EXPECT_NO_THROW(clip.Validate());
  clip.Set("clip_enabled", "true");
  EXPECT_THROW(clip.Validate(), std::invalid_argument);
}

TEST(ConfigTest, LoadFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "rnnem_cfg_test.cfg";
  {
    std::ofstream out(path);
    out << "cell=lstm\nhidden=9\n";
  }
  const TrainConfig cfg = LoadConfig(path.string());
  std::filesystem::remove(path);
  EXPECT_EQ(cfg.cell, CellKind::kLstm);
  EXPECT_EQ(cfg.hidden, 9u);
  EXPECT_THROW(LoadConfig("/nonexistent.cfg"), std::runtime_error);
}

TEST(ConfigTest, MakeOptimizerMatchesChoice) {
  TrainConfig cfg;
  TaggerParams params;
  params.embeddings = Tensor(2, 2);
  params.cell = ElmanParams{};
  params.output_weight = Tensor(1, 1);
  params.output_bias = Tensor::Vector(1);
  const OptimizerState ada = cfg.MakeOptimizer(params);
  EXPECT_EQ(std::get<AdaDeltaState>(ada).rho, 0.95);
  cfg.optimizer = OptimizerKind::kSgd;
  cfg.learning_rate = 0.5;
  EXPECT_EQ(std::get<SgdState>(cfg.MakeOptimizer(params)).learning_rate, 0.5);
}

}  // namespace
}  // namespace rnnem
