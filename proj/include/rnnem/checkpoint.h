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

#ifndef RNNEM_CHECKPOINT_H_
#define RNNEM_CHECKPOINT_H_

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "rnnem/corpus.h"
#include "rnnem/optim.h"
#include "rnnem/tagger.h"

namespace rnnem {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File layout:
//   8 bytes   magic "RNNEMCKP"
//   u32 LE    format version
//   u64 LE    header length H
//   H bytes   JSON header: cell kind, dims, vocabularies, optimizer
//             hyperparameters, tensor names and shapes, config text
//   blocks    every tensor as rows*cols little-endian IEEE-754 doubles, model
//             tensors first, then optimizer accumulators
inline constexpr std::string_view kCheckpointMagic = "RNNEMCKP";
inline constexpr std::uint32_t kCheckpointVersion = 1;

struct Checkpoint {
  TaggerModel model;
  OptimizerState optimizer = SgdState{};
  Vocabulary word_vocab;
  Vocabulary label_vocab;
  // Training configuration in key=value form; informational.
  std::string config_text;
  std::size_t epochs_completed = 0;
};

std::string SerializeCheckpoint(const Checkpoint& ckpt);
// Throws FormatError on bad magic, version mismatch, truncation, trailing
// bytes, or tensors inconsistent with the recorded dims.
Checkpoint DeserializeCheckpoint(std::string_view bytes);

void SaveCheckpoint(const Checkpoint& ckpt, const std::filesystem::path& path);
Checkpoint LoadCheckpoint(const std::filesystem::path& path);

}  // namespace rnnem

#endif  // RNNEM_CHECKPOINT_H_
