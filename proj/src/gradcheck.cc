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

#include "rnnem/gradcheck.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <utility>

#include "rnnem/rng.h"

namespace rnnem {

double RelativeError(double analytic, double numeric, double floor) {
  const double denom = std::max({std::abs(analytic), std::abs(numeric), floor});
  return std::abs(analytic - numeric) / denom;
}

namespace {

double SentenceNll(const TaggerModel& model, std::span<const int> words,
                   std::span<const int> labels, const CellState& init) {
  return ForwardSequence(model, words, labels, init, false).loss.total_nll;
}

}  // namespace

GradCheckReport CheckTaggerGradients(const TaggerModel& model,
                                     std::span<const int> words,
                                     std::span<const int> labels,
                                     const CellState& init_state,
                                     const GradCheckOptions& options) {
  GradCheckReport report;
  report.kind = model.kind;
  report.dims = model.dims;

  ForwardResult fwd = ForwardSequence(model, words, labels, init_state);
  TaggerParams analytic = BackwardSequence(model, fwd.cache);

  const std::vector<std::string> names = analytic.Names();
  std::vector<Tensor*> grads = analytic.Tensors();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == options.corrupt_tensor) {
      for (double& g : grads[i]->values()) g += 1e-2 * (1.0 + std::abs(g));
    }
  }

  // Coordinate selection: one per tensor, then uniform over everything.
  std::vector<std::size_t> sizes;
  for (const Tensor* g : grads) sizes.push_back(g->size());
  const std::size_t total =
      std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
  std::set<std::pair<std::size_t, std::size_t>> coords;
  if (options.sampled_coords == 0 || options.sampled_coords >= total) {
    for (std::size_t i = 0; i < sizes.size(); ++i)
      for (std::size_t j = 0; j < sizes[i]; ++j) coords.emplace(i, j);
  } else {
    Rng rng = Rng(options.seed).Fork(0x6772616463686bULL);
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      if (sizes[i] > 0) coords.emplace(i, rng.UniformInt(sizes[i]));
    }
    while (coords.size() < options.sampled_coords) {
      std::size_t flat = rng.UniformInt(total);
      std::size_t i = 0;
      while (flat >= sizes[i]) flat -= sizes[i++];
      coords.emplace(i, flat);
    }
  }

  TaggerModel probe = model;
  std::vector<Tensor*> values = probe.params.Tensors();
  report.tensors.resize(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) report.tensors[i].name = names[i];

  for (const auto& [i, j] : coords) {
    double& v = (*values[i])[j];
    const double saved = v;
    v = saved + options.step;
    const double up = SentenceNll(probe, words, labels, init_state);
    v = saved - options.step;
    const double down = SentenceNll(probe, words, labels, init_state);
    v = saved;
    const double numeric = (up - down) / (2.0 * options.step);
    const double err =
        RelativeError((*grads[i])[j], numeric, options.denominator_floor);
    TensorCheck& check = report.tensors[i];
    ++check.coords_checked;
    check.worst_relative_error = std::max(check.worst_relative_error, err);
  }
  for (TensorCheck& check : report.tensors) {
    check.pass = check.worst_relative_error < options.tolerance;
    report.pass = report.pass && check.pass;
    report.worst_relative_error =
        std::max(report.worst_relative_error, check.worst_relative_error);
  }
  return report;
}

GradCheckReport RunGradCheck(CellKind kind, const GradCheckOptions& options) {
  Rng rng(options.seed);
  TaggerDims dims;
  dims.vocab_size = 8;
  dims.labels = 4;
  dims.window = 1;
  dims.embed_dim = static_cast<std::size_t>(rng.UniformRange(2, 4));
  dims.hidden = static_cast<std::size_t>(rng.UniformRange(2, 5));
  dims.slot_dim = static_cast<std::size_t>(rng.UniformRange(2, 4));
  dims.slot_count = static_cast<std::size_t>(rng.UniformRange(1, 3));

  TaggerModel model = InitTagger(kind, dims, rng);
  // Nonzero biases so every bias path is exercised away from zero.
  model.params.ForEach([&](const std::string& name, Tensor& t) {
    if (name.ends_with("bias")) {
      for (double& v : t.values()) v = rng.Uniform(-0.5, 0.5);
    }
  });

  std::vector<int> words(options.sequence_length);
  std::vector<int> labels(options.sequence_length);
  for (std::size_t t = 0; t < words.size(); ++t) {
    words[t] = static_cast<int>(rng.UniformRange(kUnkIndex, dims.vocab_size - 1));
    labels[t] = static_cast<int>(rng.UniformInt(dims.labels));
  }

  CellState init = model.InitialState();
  if (init.memory) {
    Tensor contents(dims.slot_dim, dims.slot_count);
    for (double& v : contents.values()) v = rng.Uniform(-1.0, 1.0);
    Tensor weight = Tensor::Vector(dims.slot_count);
    double sum = 0.0;
    for (double& v : weight.values()) sum += (v = rng.Uniform(0.1, 1.0));
    weight *= 1.0 / sum;
    init.memory->SetContents(std::move(contents));
    init.memory->SetWeight(std::move(weight));
  }
  return CheckTaggerGradients(model, words, labels, init, options);
}

}  // namespace rnnem
