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

#include <cmath>

#include "cell_util.h"
#include "rnnem/cells.h"

namespace rnnem {

using internal::Affine2;

CellState LstmForward(const LstmParams& p, const CellState& state,
                      const Tensor& x, LstmCache* cache,
                      std::size_t timestep) {
  internal::CheckInput(p.candidate_input_weight, x);
  if (!state.cell) throw ContractError("lstm state is missing its cell vector");
  const Tensor& h_prev = state.h;
  const Tensor& c_prev = *state.cell;

  Tensor in_gate = Affine2(p.in_gate_input_weight, x,
                           p.in_gate_recurrent_weight, h_prev, p.in_gate_bias);
  internal::SigmoidInPlace(in_gate);
  Tensor forget_gate =
      Affine2(p.forget_gate_input_weight, x, p.forget_gate_recurrent_weight,
              h_prev, p.forget_gate_bias);
  internal::SigmoidInPlace(forget_gate);
  Tensor out_gate = Affine2(p.out_gate_input_weight, x,
                            p.out_gate_recurrent_weight, h_prev,
                            p.out_gate_bias);
  internal::SigmoidInPlace(out_gate);
  Tensor candidate =
      Affine2(p.candidate_input_weight, x, p.candidate_recurrent_weight,
              h_prev, p.candidate_bias);
  internal::TanhInPlace(candidate);

  const std::size_t hidden = h_prev.size();
  CellState next;
  next.cell = Tensor::Vector(hidden);
  next.h = Tensor::Vector(hidden);
  Tensor tanh_c = Tensor::Vector(hidden);
  for (std::size_t i = 0; i < hidden; ++i) {
    (*next.cell)[i] = forget_gate[i] * c_prev[i] + in_gate[i] * candidate[i];
    tanh_c[i] = std::tanh((*next.cell)[i]);
    next.h[i] = out_gate[i] * tanh_c[i];
  }
  internal::CheckFiniteHidden(next.h, timestep);
  if (cache != nullptr) {
    cache->x = x;
    cache->h_prev = h_prev;
    cache->c_prev = c_prev;
    cache->in_gate = std::move(in_gate);
    cache->forget_gate = std::move(forget_gate);
    cache->out_gate = std::move(out_gate);
    cache->candidate = std::move(candidate);
    cache->c = *next.cell;
    cache->tanh_c = std::move(tanh_c);
    cache->h = next.h;
  }
  return next;
}

void LstmBackward(const LstmParams& p, const LstmCache& c,
                  const Tensor& grad_h, const StateGrad& grad_next,
                  LstmParams& grads, StateGrad& grad_prev, Tensor& grad_x) {
  const std::size_t hidden = c.h.size();
  Tensor d_h = grad_h;
  if (!grad_next.h.empty()) d_h += grad_next.h;

  Tensor d_in = Tensor::Vector(hidden);
  Tensor d_forget = Tensor::Vector(hidden);
  Tensor d_out = Tensor::Vector(hidden);
  Tensor d_cand = Tensor::Vector(hidden);
  grad_prev = StateGrad{};
  grad_prev.h = Tensor::Vector(hidden);
  grad_prev.cell = Tensor::Vector(hidden);
  grad_x = Tensor::Vector(c.x.size());

  for (std::size_t i = 0; i < hidden; ++i) {
    double d_c = d_h[i] * c.out_gate[i] * (1.0 - c.tanh_c[i] * c.tanh_c[i]);
    if (!grad_next.cell.empty()) d_c += grad_next.cell[i];
    const double o = c.out_gate[i];
    const double in = c.in_gate[i];
    const double f = c.forget_gate[i];
    const double g = c.candidate[i];
    d_out[i] = d_h[i] * c.tanh_c[i] * o * (1.0 - o);
    d_in[i] = d_c * g * in * (1.0 - in);
    d_forget[i] = d_c * c.c_prev[i] * f * (1.0 - f);
    d_cand[i] = d_c * in * (1.0 - g * g);
    grad_prev.cell[i] = d_c * f;
  }

  internal::Affine2Backward(d_in, c.x, c.h_prev, p.in_gate_input_weight,
                            p.in_gate_recurrent_weight,
                            grads.in_gate_input_weight,
                            grads.in_gate_recurrent_weight, grads.in_gate_bias,
                            grad_x, grad_prev.h);
  internal::Affine2Backward(d_forget, c.x, c.h_prev,
                            p.forget_gate_input_weight,
                            p.forget_gate_recurrent_weight,
                            grads.forget_gate_input_weight,
                            grads.forget_gate_recurrent_weight,
                            grads.forget_gate_bias, grad_x, grad_prev.h);
  internal::Affine2Backward(d_out, c.x, c.h_prev, p.out_gate_input_weight,
                            p.out_gate_recurrent_weight,
                            grads.out_gate_input_weight,
                            grads.out_gate_recurrent_weight,
                            grads.out_gate_bias, grad_x, grad_prev.h);
  internal::Affine2Backward(d_cand, c.x, c.h_prev, p.candidate_input_weight,
                            p.candidate_recurrent_weight,
                            grads.candidate_input_weight,
                            grads.candidate_recurrent_weight,
                            grads.candidate_bias, grad_x, grad_prev.h);
}

}  // namespace rnnem
