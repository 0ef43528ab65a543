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

#include "rnnem/synthetic.h"

#include <set>
#include <stdexcept>

#include "rnnem/rng.h"

namespace rnnem {

namespace {

constexpr std::size_t kMarkerCount = 2;

std::size_t SlotLabelCount(std::size_t label_count) {
  return label_count / 2;  // ceil((L - 1) / 2)
}

}  // namespace

void SynthConfig::Validate() const {
  auto fail = [](const std::string& msg) {
    throw std::invalid_argument("synthetic config: " + msg);
  };
  if (label_count < 4) fail("label_count must be at least 4");
  if (min_length == 0 || min_length > max_length) {
    fail("sentence length range is empty");
  }
  if (min_distance == 0 || min_distance > max_distance) {
    fail("dependency distance range is empty");
  }
  if (max_distance >= min_length) {
    fail("max dependency distance must be below the minimum sentence length");
  }
  const std::size_t slots = SlotLabelCount(label_count);
  const std::size_t entities = 2 * (label_count - 1 - slots);
  if (vocab_size < slots + kMarkerCount + entities + 4) {
    fail("vocab_size " + std::to_string(vocab_size) +
         " leaves fewer than 4 filler words");
  }
  if (train_size == 0) fail("train_size must be positive");
  if (entity_rate < 0.0 || entity_rate > 1.0) fail("entity_rate outside [0,1]");
}

SynthLayout MakeSynthLayout(const SynthConfig& cfg) {
  cfg.Validate();
  SynthLayout layout;
  const std::size_t slots = SlotLabelCount(cfg.label_count);
  const std::size_t entity_labels = cfg.label_count - 1 - slots;

  std::vector<std::string> slot_labels;
  for (std::size_t k = 0; k < slots; ++k) {
    slot_labels.push_back("B-arg" + std::to_string(k));
  }
  // Trigger -> label assignment is a seeded permutation.
  Rng rng = Rng(cfg.seed).Fork(0);
  for (std::size_t i = slots; i > 1; --i) {
    std::swap(slot_labels[i - 1], slot_labels[rng.UniformInt(i)]);
  }
  for (std::size_t k = 0; k < slots; ++k) {
    layout.triggers.push_back("t" + std::to_string(k));
    layout.slot_label_of.push_back(slot_labels[k]);
  }
  for (std::size_t k = 0; k < kMarkerCount; ++k) {
    layout.markers.push_back("m" + std::to_string(k));
  }
  for (std::size_t j = 0; j < 2 * entity_labels; ++j) {
    layout.entities.push_back("e" + std::to_string(j));
    layout.entity_label_of.push_back("B-ent" + std::to_string(j / 2));
  }
  const std::size_t fillers = cfg.vocab_size - layout.triggers.size() -
                              layout.markers.size() - layout.entities.size();
  for (std::size_t j = 0; j < fillers; ++j) {
    layout.fillers.push_back("w" + std::to_string(j));
  }
  return layout;
}

namespace {

struct RawSentence {
  std::vector<std::string> tokens;
  std::vector<std::string> labels;
};

RawSentence DrawSentence(const SynthConfig& cfg, const SynthLayout& layout,
                         Rng& rng) {
  const auto length = static_cast<std::size_t>(rng.UniformRange(
      static_cast<std::int64_t>(cfg.min_length),
      static_cast<std::int64_t>(cfg.max_length)));
  const auto distance = static_cast<std::size_t>(rng.UniformRange(
      static_cast<std::int64_t>(cfg.min_distance),
      static_cast<std::int64_t>(cfg.max_distance)));
  const auto trigger_pos = static_cast<std::size_t>(
      rng.UniformInt(length - distance));
  const std::size_t marker_pos = trigger_pos + distance;
  const std::size_t trigger = rng.UniformInt(layout.triggers.size());
  const std::size_t marker = rng.UniformInt(layout.markers.size());

  RawSentence s;
  for (std::size_t t = 0; t < length; ++t) {
    if (t == trigger_pos) {
      s.tokens.push_back(layout.triggers[trigger]);
      s.labels.push_back(layout.null_label);
    } else if (t == marker_pos) {
      s.tokens.push_back(layout.markers[marker]);
      s.labels.push_back(layout.slot_label_of[trigger]);
    } else if (!layout.entities.empty() && rng.Bernoulli(cfg.entity_rate)) {
      const std::size_t e = rng.UniformInt(layout.entities.size());
      s.tokens.push_back(layout.entities[e]);
      s.labels.push_back(layout.entity_label_of[e]);
    } else {
      s.tokens.push_back(layout.fillers[rng.UniformInt(layout.fillers.size())]);
      s.labels.push_back(layout.null_label);
    }
  }
  return s;
}

void Append(Corpus& corpus, const RawSentence& raw) {
  TaggedSequence seq;
  for (std::size_t t = 0; t < raw.tokens.size(); ++t) {
    seq.words.push_back(*corpus.word_vocab.Find(raw.tokens[t]));
    seq.labels.push_back(*corpus.label_vocab.Find(raw.labels[t]));
    seq.raw_tokens.push_back(raw.tokens[t]);
  }
  corpus.sequences.push_back(std::move(seq));
}

}  // namespace

SynthCorpora GenerateSynthetic(const SynthConfig& cfg) {
  SynthCorpora out;
  out.layout = MakeSynthLayout(cfg);
  const SynthLayout& layout = out.layout;

  // The whole lexicon is indexed up front so both splits share one vocabulary
  // independent of which words happen to be drawn.
  Vocabulary words = Vocabulary::WithSpecialTokens();
  for (const auto* group :
       {&layout.triggers, &layout.markers, &layout.entities, &layout.fillers}) {
    for (const auto& w : *group) words.Add(w);
  }
  Vocabulary labels;
  labels.Add(layout.null_label);
  for (std::size_t k = 0; k < layout.triggers.size(); ++k) {
    labels.Add("B-arg" + std::to_string(k));
  }
  for (const auto& l : layout.entity_label_of) labels.Add(l);

  out.train.word_vocab = words;
  out.train.label_vocab = labels;
  out.test.word_vocab = words;
  out.test.label_vocab = labels;

  Rng train_rng = Rng(cfg.seed).Fork(1);
  std::set<std::vector<std::string>> seen;
  for (std::size_t i = 0; i < cfg.train_size; ++i) {
    RawSentence s = DrawSentence(cfg, layout, train_rng);
    seen.insert(s.tokens);
    Append(out.train, s);
  }
  Rng test_rng = Rng(cfg.seed).Fork(2);
  for (std::size_t i = 0; i < cfg.test_size; ++i) {
    RawSentence s;
    do {
      s = DrawSentence(cfg, layout, test_rng);
    } while (seen.contains(s.tokens));
    Append(out.test, s);
  }
  return out;
}

}  // namespace rnnem
