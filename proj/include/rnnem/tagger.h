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

#ifndef RNNEM_TAGGER_H_
#define RNNEM_TAGGER_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rnnem/cells.h"
#include "rnnem/rng.h"
#include "rnnem/special_tokens.h"
#include "rnnem/tensor.h"

namespace rnnem {

struct TaggerDims {
  std::size_t vocab_size = 0;  // including <pad> and <unk>
  std::size_t embed_dim = 100;
  std::size_t hidden = 100;
  std::size_t labels = 0;
  std::size_t slot_dim = 40;
  std::size_t slot_count = 8;
  // Context half-width: the input at t concatenates words t-window..t+window.
  std::size_t window = 1;

  std::size_t input_dim() const { return (2 * window + 1) * embed_dim; }
  CellDims cell_dims() const {
    return CellDims{input_dim(), hidden, slot_dim, slot_count};
  }
};

struct TaggerParams {
  Tensor embeddings;     // vocab_size x embed_dim
  CellParams cell;
  Tensor output_weight;  // labels x hidden
  Tensor output_bias;    // labels x 1

  template <typename F>
  void ForEach(F&& f) {
    ForEachImpl(*this, f);
  }
  template <typename F>
  void ForEach(F&& f) const {
    ForEachImpl(*this, f);
  }

  // Stable, unique names: "embeddings", "cell.<name>", "output_weight",
  // "output_bias".
  std::vector<std::string> Names() const;
  std::vector<Tensor*> Tensors();
  std::vector<const Tensor*> Tensors() const;
  std::size_t Count() const;

  TaggerParams ZerosLike() const;
  void SetZero();

 private:
  template <typename Self, typename F>
  static void ForEachImpl(Self& self, F& f) {
    f(std::string("embeddings"), self.embeddings);
    ForEachTensor(self.cell, [&](std::string_view name, auto& t) {
      f("cell." + std::string(name), t);
    });
    f(std::string("output_weight"), self.output_weight);
    f(std::string("output_bias"), self.output_bias);
  }
};

struct TaggerModel {
  CellKind kind = CellKind::kRnnEm;
  TaggerDims dims;
  double memory_init = ExternalMemory::kDefaultInitValue;
  TaggerParams params;
  // Bumped whenever params change; guards against backward on a stale cache.
  std::uint64_t version = 0;

  void MarkUpdated() { ++version; }
  CellState InitialState() const {
    return rnnem::InitialState(kind, dims.cell_dims(), memory_init);
  }
  // Throws ShapeError if any tensor disagrees with dims.
  void Validate() const;
};

// Embeddings uniform in +-sqrt(3 / embed_dim) (unit expected squared norm),
// cell weights per InitParams, output weights Glorot-uniform, zero biases.
TaggerModel InitTagger(CellKind kind, const TaggerDims& dims, Rng& rng,
                       double memory_init = ExternalMemory::kDefaultInitValue);

// Concatenated embeddings of words t-k..t+k; positions outside the sentence
// use the <pad> row.
Tensor WindowInput(std::span<const int> words, std::size_t t, std::size_t k,
                   const Tensor& embeddings);

struct SequenceLoss {
  double total_nll = 0.0;  // nats, summed over timesteps
  double per_word_nll = 0.0;
  std::size_t token_count = 0;
};

struct SequenceCache {
  const TaggerModel* model = nullptr;
  std::uint64_t version = 0;
  std::vector<int> words;
  std::vector<int> labels;
  std::vector<StepCache> steps;
  std::vector<Tensor> hidden;
  std::vector<Tensor> probs;
};

struct ForwardResult {
  std::vector<Tensor> probs;
  CellState final_state;
  SequenceLoss loss;
  SequenceCache cache;
};

// Runs the tagger over one sentence starting from init_state. labels must be
// empty (no loss) or the same length as words.
ForwardResult ForwardSequence(const TaggerModel& model,
                              std::span<const int> words,
                              std::span<const int> labels,
                              const CellState& init_state,
                              bool keep_cache = true);

// Accumulates d(total_nll)/d(params) into grads. The incoming state is
// treated as a constant. Throws ContractError on a stale or empty cache.
void BackwardSequence(const TaggerModel& model, const SequenceCache& cache,
                      TaggerParams& grads);
TaggerParams BackwardSequence(const TaggerModel& model,
                              const SequenceCache& cache);

// Per-timestep argmax labels. state is advanced past the sentence.
std::vector<int> Predict(const TaggerModel& model, std::span<const int> words,
                         CellState& state);

}  // namespace rnnem

#endif  // RNNEM_TAGGER_H_
