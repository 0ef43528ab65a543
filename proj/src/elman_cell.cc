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

CellState ElmanForward(const ElmanParams& p, const CellState& state,
                       const Tensor& x, ElmanCache* cache,
                       std::size_t timestep) {
  internal::CheckInput(p.input_weight, x);
  CellState next;
  next.h = Affine2(p.input_weight, x, p.recurrent_weight, state.h, p.bias);
  internal::TanhInPlace(next.h);
  internal::CheckFiniteHidden(next.h, timestep);
  if (cache != nullptr) {
    cache->x = x;
    cache->h_prev = state.h;
    cache->h = next.h;
  }
  return next;
}

void ElmanBackward(const ElmanParams& p, const ElmanCache& cache,
                   const Tensor& grad_h, const StateGrad& grad_next,
                   ElmanParams& grads, StateGrad& grad_prev, Tensor& grad_x) {
  Tensor d_pre = grad_h;
  if (!grad_next.h.empty()) d_pre += grad_next.h;
  for (std::size_t i = 0; i < d_pre.size(); ++i) {
    d_pre[i] *= 1.0 - cache.h[i] * cache.h[i];
  }
  grad_prev = StateGrad{};
  grad_prev.h = Tensor::Vector(cache.h_prev.size());
  grad_x = Tensor::Vector(cache.x.size());
  internal::Affine2Backward(d_pre, cache.x, cache.h_prev, p.input_weight,
                            p.recurrent_weight, grads.input_weight,
                            grads.recurrent_weight, grads.bias, grad_x,
                            grad_prev.h);
}

}  // namespace rnnem
