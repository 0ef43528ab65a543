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

#include "rnnem/optim.h"

#include <cmath>
#include <string>

namespace rnnem {

AdaDeltaState AdaDeltaState::ForParams(std::span<const Tensor* const> params,
                                       double rho, double eps) {
  AdaDeltaState state;
  state.rho = rho;
  state.eps = eps;
  for (const Tensor* p : params) {
    state.mean_sq_grad.emplace_back(p->rows(), p->cols());
    state.mean_sq_delta.emplace_back(p->rows(), p->cols());
  }
  return state;
}

std::string_view OptimizerName(const OptimizerState& state) {
  return std::holds_alternative<AdaDeltaState>(state) ? "adadelta" : "sgd";
}

namespace {

void CheckLists(std::span<Tensor* const> params,
                std::span<const Tensor* const> grads) {
  if (params.size() != grads.size()) {
    throw ShapeError("optimizer got " + std::to_string(params.size()) +
                     " parameters but " + std::to_string(grads.size()) +
                     " gradients");
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    CheckSameShape(*params[i], *grads[i], "optimizer parameter/gradient");
    if (!grads[i]->AllFinite()) {
      throw NumericError("non-finite gradient in parameter tensor " +
                         std::to_string(i));
    }
  }
}

}  // namespace

void AdaDeltaStep(std::span<Tensor* const> params,
                  std::span<const Tensor* const> grads, AdaDeltaState& state) {
  CheckLists(params, grads);
  if (state.mean_sq_grad.size() != params.size() ||
      state.mean_sq_delta.size() != params.size()) {
    throw ShapeError("AdaDelta state tracks " +
                     std::to_string(state.mean_sq_grad.size()) +
                     " tensors, got " + std::to_string(params.size()));
  }
  const double rho = state.rho;
  const double eps = state.eps;
  for (std::size_t i = 0; i < params.size(); ++i) {
    Tensor& p = *params[i];
    const Tensor& g = *grads[i];
    Tensor& eg2 = state.mean_sq_grad[i];
    Tensor& edx2 = state.mean_sq_delta[i];
    CheckSameShape(p, eg2, "AdaDelta accumulator");
    CheckSameShape(p, edx2, "AdaDelta accumulator");
    for (std::size_t j = 0; j < p.size(); ++j) {
      eg2[j] = rho * eg2[j] + (1.0 - rho) * g[j] * g[j];
      const double dx = -std::sqrt(edx2[j] + eps) / std::sqrt(eg2[j] + eps) * g[j];
      edx2[j] = rho * edx2[j] + (1.0 - rho) * dx * dx;
      p[j] += dx;
    }
  }
}

void SgdStep(std::span<Tensor* const> params,
             std::span<const Tensor* const> grads, const SgdState& state) {
  CheckLists(params, grads);
  for (std::size_t i = 0; i < params.size(); ++i) {
    Tensor& p = *params[i];
    const Tensor& g = *grads[i];
    for (std::size_t j = 0; j < p.size(); ++j) p[j] -= state.learning_rate * g[j];
  }
}

void ApplyUpdate(std::span<Tensor* const> params,
                 std::span<const Tensor* const> grads, OptimizerState& state) {
  if (auto* ada = std::get_if<AdaDeltaState>(&state)) {
    AdaDeltaStep(params, grads, *ada);
  } else {
    SgdStep(params, grads, std::get<SgdState>(state));
  }
}

double GlobalNorm(std::span<const Tensor* const> grads) {
  double sum = 0.0;
  for (const Tensor* g : grads) sum += SquaredNorm(g->values());
  return std::sqrt(sum);
}

double ClipGradients(std::span<Tensor* const> grads, const ClipConfig& cfg) {
  double sum = 0.0;
  for (const Tensor* g : grads) sum += SquaredNorm(g->values());
  const double norm = std::sqrt(sum);
  if (cfg.enabled && norm > cfg.max_norm) {
    const double scale = cfg.max_norm / norm;
    for (Tensor* g : grads) *g *= scale;
  }
  return norm;
}

}  // namespace rnnem
