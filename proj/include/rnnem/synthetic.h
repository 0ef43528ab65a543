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

#ifndef RNNEM_SYNTHETIC_H_
#define RNNEM_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rnnem/corpus.h"

namespace rnnem {

// Long-dependency slot-filling task. Every sentence holds exactly one
// trigger word and, dependency_distance positions later, one slot-marker
// word. The marker's label is a fixed function of which trigger appeared;
// the trigger itself is labelled O. Remaining positions are filler words
// (O) or entity words whose label depends only on the word itself.
struct SynthConfig {
  std::uint64_t seed = 2015;
  std::size_t vocab_size = 40;
  // Includes O. Split into ceil((L-1)/2) slot labels and the rest entity
  // labels; at least 4 so there are two or more slot labels.
  std::size_t label_count = 9;
  std::size_t min_length = 14;
  std::size_t max_length = 20;
  std::size_t min_distance = 8;
  std::size_t max_distance = 12;
  std::size_t train_size = 2000;
  std::size_t test_size = 500;
  // Probability that a free position holds an entity word.
  double entity_rate = 0.1;

  // Throws std::invalid_argument describing the first inconsistency.
  void Validate() const;
};

// Token roles of the synthetic lexicon.
struct SynthLayout {
  std::vector<std::string> triggers;  // triggers[i] selects slot_label_of[i]
  std::vector<std::string> markers;
  std::vector<std::string> entities;  // entities[j] carries entity_label_of[j]
  std::vector<std::string> fillers;
  std::vector<std::string> slot_label_of;
  std::vector<std::string> entity_label_of;
  std::string null_label = "O";
};

SynthLayout MakeSynthLayout(const SynthConfig& cfg);

struct SynthCorpora {
  Corpus train;
  Corpus test;
  SynthLayout layout;
};

// Deterministic in cfg. Train and test are drawn from independent streams;
// test sentences that also occur in train are redrawn.
SynthCorpora GenerateSynthetic(const SynthConfig& cfg);

}  // namespace rnnem

#endif  // RNNEM_SYNTHETIC_H_
