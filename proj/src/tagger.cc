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

#include "rnnem/tagger.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rnnem {

std::vector<std::string> TaggerParams::Names() const {
  std::vector<std::string> names;
  ForEach([&](const std::string& name, const Tensor&) { names.push_back(name); });
  return names;
}

std::vector<Tensor*> TaggerParams::Tensors() {
  std::vector<Tensor*> out;
  ForEach([&](const std::string&, Tensor& t) { out.push_back(&t); });
  return out;
}

std::vector<const Tensor*> TaggerParams::Tensors() const {
  std::vector<const Tensor*> out;
  ForEach([&](const std::string&, const Tensor& t) { out.push_back(&t); });
  return out;
}

std::size_t TaggerParams::Count() const {
  std::size_t total = 0;
  ForEach([&](const std::string&, const Tensor& t) { total += t.size(); });
  return total;
}

TaggerParams TaggerParams::ZerosLike() const {
  TaggerParams out = *this;
  out.SetZero();
  return out;
}

void TaggerParams::SetZero() {
  ForEach([](const std::string&, Tensor& t) { t.SetZero(); });
}

void TaggerModel::Validate() const {
  if (params.embeddings.rows() != dims.vocab_size ||
      params.embeddings.cols() != dims.embed_dim) {
    throw ShapeError("embeddings are " + params.embeddings.ShapeString() +
                     ", expected " + std::to_string(dims.vocab_size) + "x" +
                     std::to_string(dims.embed_dim));
  }
  if (KindOf(params.cell) != kind) {
    throw ShapeError("cell parameters are for " +
                     std::string(CellKindName(KindOf(params.cell))) +
                     " but the model is " + std::string(CellKindName(kind)));
  }
  ValidateParams(params.cell, dims.cell_dims());
  if (params.output_weight.rows() != dims.labels ||
      params.output_weight.cols() != dims.hidden ||
      params.output_bias.rows() != dims.labels ||
      params.output_bias.cols() != 1) {
    throw ShapeError("output layer " + params.output_weight.ShapeString() +
                     "/" + params.output_bias.ShapeString() +
                     " does not match labels x hidden");
  }
}

TaggerModel InitTagger(CellKind kind, const TaggerDims& dims, Rng& rng,
                       double memory_init) {
  if (dims.vocab_size < 2 || dims.embed_dim == 0 || dims.hidden == 0 ||
      dims.labels == 0) {
    throw ContractError("tagger dimensions must be positive");
  }
  TaggerModel model;
  model.kind = kind;
  model.dims = dims;
  model.memory_init = memory_init;
  model.params.embeddings = Tensor(dims.vocab_size, dims.embed_dim);
  const double e = std::sqrt(3.0 / static_cast<double>(dims.embed_dim));
  for (double& v : model.params.embeddings.values()) v = rng.Uniform(-e, e);
  model.params.cell = InitParams(kind, dims.cell_dims(), rng);
  model.params.output_weight = Tensor(dims.labels, dims.hidden);
  const double r =
      std::sqrt(6.0 / static_cast<double>(dims.labels + dims.hidden));
  for (double& v : model.params.output_weight.values()) v = rng.Uniform(-r, r);
  model.params.output_bias = Tensor::Vector(dims.labels);
  return model;
}

Tensor WindowInput(std::span<const int> words, std::size_t t, std::size_t k,
                   const Tensor& embeddings) {
  if (t >= words.size()) {
    throw std::out_of_range("window position " + std::to_string(t) +
                            " outside sentence of length " +
                            std::to_string(words.size()));
  }
  const std::size_t d = embeddings.cols();
  Tensor x = Tensor::Vector((2 * k + 1) * d);
  const auto len = static_cast<std::ptrdiff_t>(words.size());
  std::size_t offset = 0;
  for (std::ptrdiff_t pos = static_cast<std::ptrdiff_t>(t) -
                            static_cast<std::ptrdiff_t>(k);
       pos <= static_cast<std::ptrdiff_t>(t + k); ++pos, offset += d) {
    const int word = (pos < 0 || pos >= len) ? kPadIndex : words[pos];
    if (word < 0 || static_cast<std::size_t>(word) >= embeddings.rows()) {
      throw std::out_of_range("word index " + std::to_string(word) +
                              " outside vocabulary of size " +
                              std::to_string(embeddings.rows()));
    }
    const auto row = embeddings.row(static_cast<std::size_t>(word));
    std::copy(row.begin(), row.end(), x.data() + offset);
  }
  return x;
}

namespace {

// Softmax of the output logits plus -log p(label) computed via log-sum-exp.
double OutputDistribution(const TaggerModel& model, const Tensor& h, int label,
                          Tensor& probs) {
  Tensor logits = model.params.output_bias;
  MatVecAccumulate(model.params.output_weight, h.values(), logits.values());
  probs = Softmax(logits);
  if (label < 0) return 0.0;
  const double max =
      *std::max_element(logits.values().begin(), logits.values().end());
  double sum = 0.0;
  for (double v : logits.values()) sum += std::exp(v - max);
  return max + std::log(sum) - logits[static_cast<std::size_t>(label)];
}

}  // namespace

ForwardResult ForwardSequence(const TaggerModel& model,
                              std::span<const int> words,
                              std::span<const int> labels,
                              const CellState& init_state, bool keep_cache) {
  if (words.empty()) throw ContractError("cannot tag an empty sentence");
  if (!labels.empty() && labels.size() != words.size()) {
    throw ContractError("sentence has " + std::to_string(words.size()) +
                        " words but " + std::to_string(labels.size()) +
                        " labels");
  }
  for (int label : labels) {
    if (label < 0 || static_cast<std::size_t>(label) >= model.dims.labels) {
      throw std::out_of_range("label index " + std::to_string(label) +
                              " outside label set of size " +
                              std::to_string(model.dims.labels));
    }
  }

  ForwardResult result;
  const std::size_t len = words.size();
  result.probs.resize(len);
  SequenceCache& cache = result.cache;
  if (keep_cache) {
    cache.model = &model;
    cache.version = model.version;
    cache.words.assign(words.begin(), words.end());
    cache.labels.assign(labels.begin(), labels.end());
    cache.steps.resize(len);
    cache.hidden.resize(len);
  }

  CellState state = init_state;
  double total = 0.0;
  for (std::size_t t = 0; t < len; ++t) {
    const Tensor x =
        WindowInput(words, t, model.dims.window, model.params.embeddings);
    state = StepForward(model.params.cell, state, x,
                        keep_cache ? &cache.steps[t] : nullptr, t);
    const int label = labels.empty() ? -1 : labels[t];
    total += OutputDistribution(model, state.h, label, result.probs[t]);
    if (keep_cache) cache.hidden[t] = state.h;
  }
  if (keep_cache) cache.probs = result.probs;
  result.final_state = std::move(state);
  if (!labels.empty()) {
    result.loss.total_nll = total;
    result.loss.token_count = len;
    result.loss.per_word_nll = total / static_cast<double>(len);
  }
  return result;
}

void BackwardSequence(const TaggerModel& model, const SequenceCache& cache,
                      TaggerParams& grads) {
  if (cache.model == nullptr || cache.steps.empty()) {
    throw ContractError("backward_sequence needs the cache of a forward pass");
  }
  if (cache.model != &model || cache.version != model.version) {
    throw ContractError(
        "stale cache: parameters changed since the forward pass");
  }
  if (cache.labels.size() != cache.words.size()) {
    throw ContractError("backward_sequence needs a labelled forward pass");
  }
  const std::size_t len = cache.words.size();
  const std::size_t d = model.dims.embed_dim;
  const std::size_t k = model.dims.window;

  StateGrad grad_next;
  StateGrad grad_prev;
  Tensor grad_x;
  Tensor d_logits;
  for (std::size_t step = len; step-- > 0;) {
    d_logits = cache.probs[step];
    d_logits[static_cast<std::size_t>(cache.labels[step])] -= 1.0;
    AddOuter(d_logits.values(), cache.hidden[step].values(),
             grads.output_weight);
    grads.output_bias += d_logits;
    const Tensor d_h = MatTVec(model.params.output_weight, d_logits);

    StepBackward(model.params.cell, cache.steps[step], d_h, grad_next,
                 grads.cell, grad_prev, grad_x);

    std::size_t offset = 0;
    for (std::ptrdiff_t pos = static_cast<std::ptrdiff_t>(step) -
                              static_cast<std::ptrdiff_t>(k);
         pos <= static_cast<std::ptrdiff_t>(step + k); ++pos, offset += d) {
      const int word = (pos < 0 || pos >= static_cast<std::ptrdiff_t>(len))
                           ? kPadIndex
                           : cache.words[static_cast<std::size_t>(pos)];
      auto row = grads.embeddings.row(static_cast<std::size_t>(word));
      for (std::size_t j = 0; j < d; ++j) row[j] += grad_x[offset + j];
    }
    std::swap(grad_next, grad_prev);
  }
}

TaggerParams BackwardSequence(const TaggerModel& model,
                              const SequenceCache& cache) {
  TaggerParams grads = model.params.ZerosLike();
  BackwardSequence(model, cache, grads);
  return grads;
}

std::vector<int> Predict(const TaggerModel& model, std::span<const int> words,
                         CellState& state) {
  ForwardResult result = ForwardSequence(model, words, {}, state, false);
  std::vector<int> out;
  out.reserve(words.size());
  for (const Tensor& p : result.probs) {
    out.push_back(static_cast<int>(
        std::max_element(p.values().begin(), p.values().end()) -
        p.values().begin()));
  }
  state = std::move(result.final_state);
  return out;
}

}  // namespace rnnem
