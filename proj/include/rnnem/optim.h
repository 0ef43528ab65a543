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

#ifndef RNNEM_OPTIM_H_
#define RNNEM_OPTIM_H_

#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "rnnem/tensor.h"

namespace rnnem {

// AdaDelta accumulators, one pair per parameter tensor:
//   E[g^2]  <- rho E[g^2] + (1 - rho) g^2
//   dx       = -sqrt(E[dx^2] + eps) / sqrt(E[g^2] + eps) * g
//   E[dx^2] <- rho E[dx^2] + (1 - rho) dx^2
struct AdaDeltaState {
  double rho = 0.95;
  double eps = 1e-6;
  std::vector<Tensor> mean_sq_grad;
  std::vector<Tensor> mean_sq_delta;

  // Zero accumulators shaped like params.
  static AdaDeltaState ForParams(std::span<const Tensor* const> params,
                                 double rho = 0.95, double eps = 1e-6);
};

struct SgdState {
  double learning_rate = 0.1;
};

using OptimizerState = std::variant<AdaDeltaState, SgdState>;

std::string_view OptimizerName(const OptimizerState& state);

// Updates params in place. Throws ShapeError when the lists disagree and
// NumericError (before touching anything) on a non-finite gradient.
void AdaDeltaStep(std::span<Tensor* const> params,
                  std::span<const Tensor* const> grads, AdaDeltaState& state);
void SgdStep(std::span<Tensor* const> params,
             std::span<const Tensor* const> grads, const SgdState& state);
void ApplyUpdate(std::span<Tensor* const> params,
                 std::span<const Tensor* const> grads, OptimizerState& state);

struct ClipConfig {
  bool enabled = false;
  double max_norm = 5.0;
};

double GlobalNorm(std::span<const Tensor* const> grads);

// Rescales all gradients by max_norm / norm when the global L2 norm exceeds
// max_norm. Returns the norm before clipping.
double ClipGradients(std::span<Tensor* const> grads, const ClipConfig& cfg);

}  // namespace rnnem

#endif  // RNNEM_OPTIM_H_
