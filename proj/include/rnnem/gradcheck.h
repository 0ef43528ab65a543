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

#ifndef RNNEM_GRADCHECK_H_
#define RNNEM_GRADCHECK_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rnnem/cells.h"
#include "rnnem/tagger.h"

namespace rnnem {

struct GradCheckOptions {
  std::uint64_t seed = 1234;
  std::size_t sequence_length = 6;
  // Coordinates compared per run; every tensor contributes at least one.
  // Zero means every coordinate.
  std::size_t sampled_coords = 200;
  double step = 1e-5;
  double tolerance = 1e-4;
  // Denominator floor of the relative error, so that coordinates whose true
  // gradient is ~0 are judged on absolute error.
  double denominator_floor = 1e-6;
  // Test hook: perturbs the analytic gradient of this tensor.
  std::string corrupt_tensor;
};

struct TensorCheck {
  std::string name;
  std::size_t coords_checked = 0;
  double worst_relative_error = 0.0;
  bool pass = true;
};

struct GradCheckReport {
  CellKind kind = CellKind::kRnnEm;
  TaggerDims dims;
  std::vector<TensorCheck> tensors;  // one entry per parameter tensor
  double worst_relative_error = 0.0;
  bool pass = true;
};

double RelativeError(double analytic, double numeric, double floor);

// Compares BackwardSequence against central differences of the sentence NLL.
GradCheckReport CheckTaggerGradients(const TaggerModel& model,
                                     std::span<const int> words,
                                     std::span<const int> labels,
                                     const CellState& init_state,
                                     const GradCheckOptions& options);

// Draws a small random configuration (hidden <= 5, slot_dim <= 4,
// slot_count <= 3, embed_dim <= 4), a random model, sentence and, for
// RNN-EM, a random non-trivial starting memory; then checks gradients.
GradCheckReport RunGradCheck(CellKind kind, const GradCheckOptions& options);

}  // namespace rnnem

#endif  // RNNEM_GRADCHECK_H_
