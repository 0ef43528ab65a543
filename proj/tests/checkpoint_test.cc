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

#include "rnnem/checkpoint.h"

#include <cstring>
#include <filesystem>

#include "gtest/gtest.h"
#include "json.hpp"
#include "rnnem/rng.h"

namespace rnnem {
namespace {

Checkpoint MakeCheckpoint(CellKind kind, bool adadelta) {
  TaggerDims dims;
  dims.vocab_size = 6;
  dims.embed_dim = 3;
  dims.hidden = 4;
  dims.labels = 3;
  dims.slot_dim = 2;
  dims.slot_count = 3;
  Rng rng(21);
  Checkpoint ckpt;
  ckpt.model = InitTagger(kind, dims, rng, 0.25);
  // Make the accumulators non-trivial so their round trip is exercised.
  if (adadelta) {
    AdaDeltaState ada = AdaDeltaState::ForParams(ckpt.model.params.Tensors());
    for (auto* group : {&ada.mean_sq_grad, &ada.mean_sq_delta})
      for (Tensor& t : *group)
        for (double& v : t.values()) v = rng.Uniform();
    ckpt.optimizer = ada;
  } else {
    ckpt.optimizer = SgdState{0.0625};
  }
  ckpt.word_vocab = Vocabulary::WithSpecialTokens();
  for (const char* w : {"a", "b", "c", "d"}) ckpt.word_vocab.Add(w);
  for (const char* l : {"O", "B-x", "I-x"}) ckpt.label_vocab.Add(l);
  ckpt.config_text = "cell=" + std::string(CellKindName(kind)) + "\n";
  ckpt.epochs_completed = 7;
  return ckpt;
}

// Rewrites the JSON header of a serialized checkpoint.
std::string EditHeader(const std::string& bytes,
                       const std::function<void(nlohmann::json&)>& edit) {
  std::uint64_t len = 0;
  for (int i = 0; i < 8; ++i)
    len |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[12 + i]))
           << (8 * i);
  nlohmann::json header = nlohmann::json::parse(bytes.substr(20, len));
  edit(header);
  const std::string text = header.dump();
  std::string out = bytes.substr(0, 12);
  for (int i = 0; i < 8; ++i)
    out.push_back(static_cast<char>((text.size() >> (8 * i)) & 0xff));
  return out + text + bytes.substr(20 + len);
}

class CheckpointKindTest : public ::testing::TestWithParam<CellKind> {};

TEST_P(CheckpointKindTest, SerializeIsIdempotentAndBitExact) {
  for (bool adadelta : {true, false}) {
    const Checkpoint ckpt = MakeCheckpoint(GetParam(), adadelta);
    const std::string first = SerializeCheckpoint(ckpt);
    const Checkpoint loaded = DeserializeCheckpoint(first);
    EXPECT_EQ(SerializeCheckpoint(loaded), first);
    EXPECT_EQ(loaded.model.kind, GetParam());
    EXPECT_EQ(loaded.model.memory_init, 0.25);
    EXPECT_EQ(loaded.word_vocab, ckpt.word_vocab);
    EXPECT_EQ(loaded.label_vocab, ckpt.label_vocab);
    EXPECT_EQ(loaded.config_text, ckpt.config_text);
    EXPECT_EQ(loaded.epochs_completed, 7u);
    const auto a = ckpt.model.params.Tensors();
    const auto b = loaded.model.params.Tensors();
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(*a[i], *b[i]);
    EXPECT_EQ(loaded.optimizer.index(), ckpt.optimizer.index());
    if (adadelta) {
      const auto& x = std::get<AdaDeltaState>(ckpt.optimizer);
      const auto& y = std::get<AdaDeltaState>(loaded.optimizer);
      EXPECT_EQ(x.mean_sq_grad, y.mean_sq_grad);
      EXPECT_EQ(x.mean_sq_delta, y.mean_sq_delta);
      EXPECT_EQ(x.rho, y.rho);
    } else {
      EXPECT_EQ(std::get<SgdState>(loaded.optimizer).learning_rate, 0.0625);
    }
  }
}

TEST_P(CheckpointKindTest, LoadedModelForwardIsIdentical) {
  const Checkpoint ckpt = MakeCheckpoint(GetParam(), true);
  const auto path = std::filesystem::temp_directory_path() /
                    ("rnnem_ckpt_" + std::string(CellKindName(GetParam())));
  SaveCheckpoint(ckpt, path);
  const Checkpoint loaded = LoadCheckpoint(path);
  std::filesystem::remove(path);
  const std::vector<int> words = {2, 5, 3, 4};
  const std::vector<int> labels = {0, 1, 2, 0};
  const ForwardResult a =
      ForwardSequence(ckpt.model, words, labels, ckpt.model.InitialState());
  const ForwardResult b =
      ForwardSequence(loaded.model, words, labels, loaded.model.InitialState());
  EXPECT_EQ(a.loss.total_nll, b.loss.total_nll);
  for (std::size_t t = 0; t < words.size(); ++t) EXPECT_EQ(a.probs[t], b.probs[t]);
}

INSTANTIATE_TEST_SUITE_P(AllCells, CheckpointKindTest,
                         ::testing::ValuesIn(kAllCellKinds),
                         [](const auto& info) {
                           return std::string(CellKindName(info.param));
                         });

TEST(CheckpointTest, CorruptMagicIsFormatError) {
  std::string bytes = SerializeCheckpoint(MakeCheckpoint(CellKind::kRnnEm, true));
  bytes[0] = 'X';
  EXPECT_THROW(DeserializeCheckpoint(bytes), FormatError);
}

TEST(CheckpointTest, VersionMismatchIsFormatError) {
  std::string bytes = SerializeCheckpoint(MakeCheckpoint(CellKind::kRnnEm, true));
  bytes[8] = 2;
  try {
    DeserializeCheckpoint(bytes);
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("version"), std::string::npos) << e.what();
  }
}

TEST(CheckpointTest, TruncationAtAnyPointIsFormatError) {
  const std::string bytes =
      SerializeCheckpoint(MakeCheckpoint(CellKind::kLstm, true));
  for (std::size_t cut : {std::size_t{0}, std::size_t{5}, std::size_t{15},
                          std::size_t{40}, bytes.size() / 2, bytes.size() - 1}) {
    EXPECT_THROW(DeserializeCheckpoint(bytes.substr(0, cut)), FormatError) << cut;
  }
  EXPECT_THROW(DeserializeCheckpoint(bytes + "x"), FormatError);
}

TEST(CheckpointTest, InconsistentDimsAreFormatError) {
  const std::string bytes =
      SerializeCheckpoint(MakeCheckpoint(CellKind::kRnnEm, true));
  EXPECT_NO_THROW(DeserializeCheckpoint(EditHeader(bytes, [](nlohmann::json&) {})));
  EXPECT_THROW(DeserializeCheckpoint(EditHeader(
                   bytes, [](nlohmann::json& h) { h["dims"]["hidden"] = 5; })),
               FormatError);
  EXPECT_THROW(DeserializeCheckpoint(EditHeader(
                   bytes, [](nlohmann::json& h) { h.erase("word_vocab"); })),
               FormatError);
  EXPECT_THROW(DeserializeCheckpoint(EditHeader(
                   bytes, [](nlohmann::json& h) { h["cell_kind"] = "lstm"; })),
               FormatError);
}

TEST(CheckpointTest, MissingFileIsCleanError) {
  EXPECT_THROW(LoadCheckpoint("/nonexistent/model.ckpt"), std::runtime_error);
}

}  // namespace
}  // namespace rnnem
