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

#include "cell_util.h"
#include "rnnem/cells.h"

namespace rnnem {

using internal::Affine2;

CellState GrnnForward(const GrnnParams& p, const CellState& state,
                      const Tensor& x, GrnnCache* cache,
                      std::size_t timestep) {
  internal::CheckInput(p.candidate_input_weight, x);
  const Tensor& h_prev = state.h;
  Tensor reset = Affine2(p.reset_input_weight, x, p.reset_recurrent_weight,
                         h_prev, p.reset_bias);
  internal::SigmoidInPlace(reset);
  Tensor update = Affine2(p.update_input_weight, x, p.update_recurrent_weight,
                          h_prev, p.update_bias);
  internal::SigmoidInPlace(update);
  Tensor gated_prev = Hadamard(reset, h_prev);
  Tensor candidate =
      Affine2(p.candidate_input_weight, x, p.candidate_recurrent_weight,
              gated_prev, p.candidate_bias);
  internal::TanhInPlace(candidate);

  CellState next;
  next.h = Tensor::Vector(h_prev.size());
  for (std::size_t i = 0; i < h_prev.size(); ++i) {
    next.h[i] = (1.0 - update[i]) * h_prev[i] + update[i] * candidate[i];
  }
  internal::CheckFiniteHidden(next.h, timestep);
  if (cache != nullptr) {
    cache->x = x;
    cache->h_prev = h_prev;
    cache->reset = std::move(reset);
    cache->update = std::move(update);
    cache->gated_prev = std::move(gated_prev);
    cache->candidate = std::move(candidate);
    cache->h = next.h;
  }
  return next;
}

void GrnnBackward(const GrnnParams& p, const GrnnCache& c,
                  const Tensor& grad_h, const StateGrad& grad_next,
                  GrnnParams& grads, StateGrad& grad_prev, Tensor& grad_x) {
  const std::size_t hidden = c.h.size();
  Tensor d_h = grad_h;
  if (!grad_next.h.empty()) d_h += grad_next.h;

  grad_prev = StateGrad{};
  grad_prev.h = Tensor::Vector(hidden);
  grad_x = Tensor::Vector(c.x.size());

  Tensor d_cand_pre = Tensor::Vector(hidden);
  Tensor d_update_pre = Tensor::Vector(hidden);
  for (std::size_t i = 0; i < hidden; ++i) {
    const double z = c.update[i];
    grad_prev.h[i] += d_h[i] * (1.0 - z);
    d_cand_pre[i] = d_h[i] * z * (1.0 - c.candidate[i] * c.candidate[i]);
    d_update_pre[i] = d_h[i] * (c.candidate[i] - c.h_prev[i]) * z * (1.0 - z);
  }

  Tensor d_gated_prev = Tensor::Vector(hidden);
  internal::Affine2Backward(d_cand_pre, c.x, c.gated_prev,
                            p.candidate_input_weight,
                            p.candidate_recurrent_weight,
                            grads.candidate_input_weight,
                            grads.candidate_recurrent_weight,
                            grads.candidate_bias, grad_x, d_gated_prev);

  Tensor d_reset_pre = Tensor::Vector(hidden);
  for (std::size_t i = 0; i < hidden; ++i) {
    grad_prev.h[i] += d_gated_prev[i] * c.reset[i];
    const double r = c.reset[i];
    d_reset_pre[i] = d_gated_prev[i] * c.h_prev[i] * r * (1.0 - r);
  }

  internal::Affine2Backward(d_reset_pre, c.x, c.h_prev, p.reset_input_weight,
                            p.reset_recurrent_weight, grads.reset_input_weight,
                            grads.reset_recurrent_weight, grads.reset_bias,
                            grad_x, grad_prev.h);
  internal::Affine2Backward(d_update_pre, c.x, c.h_prev, p.update_input_weight,
                            p.update_recurrent_weight,
                            grads.update_input_weight,
                            grads.update_recurrent_weight, grads.update_bias,
                            grad_x, grad_prev.h);
}

}  // namespace rnnem
