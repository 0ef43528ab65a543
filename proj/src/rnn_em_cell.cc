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
#include "rnnem/external_memory.h"

namespace rnnem {

CellState RnnEmForward(const RnnEmParams& p, const CellState& state,
                       const Tensor& x, RnnEmCache* cache,
                       std::size_t timestep) {
  internal::CheckInput(p.input_weight, x);
  if (!state.memory) {
    throw ContractError("rnn_em state is missing its external memory");
  }
  const ExternalMemory& mem = *state.memory;

  // c_t = M_{t-1} w_{t-1}
  Tensor read = Read(mem);
  Tensor h = internal::Affine2(p.input_weight, x, p.read_weight, read, p.bias);
  internal::TanhInPlace(h);
  internal::CheckFiniteHidden(h, timestep);

  Addressing addressing = Address(mem, p.addressing, h);
  const GateValue gate = InterpolationGate(p.addressing, h);
  Tensor weight = InterpolateWeight(mem.weight(), addressing.weight_hat, gate.g);

  CellState next;
  if (cache != nullptr) {
    next.memory = Write(mem, p.addressing, h, weight, &cache->write);
    cache->x = x;
    cache->contents_prev = mem.contents();
    cache->weight_prev = mem.weight();
    cache->read = std::move(read);
    cache->h = h;
    cache->addressing = std::move(addressing);
    cache->gate = gate;
    cache->weight = std::move(weight);
  } else {
    next.memory = Write(mem, p.addressing, h, weight);
  }
  next.h = std::move(h);
  return next;
}

void RnnEmBackward(const RnnEmParams& p, const RnnEmCache& c,
                   const Tensor& grad_h, const StateGrad& grad_next,
                   RnnEmParams& grads, StateGrad& grad_prev, Tensor& grad_x) {
  const std::size_t m = c.contents_prev.rows();
  const std::size_t n = c.contents_prev.cols();

  Tensor d_h = grad_h;
  if (!grad_next.h.empty()) d_h += grad_next.h;
  Tensor d_weight =
      grad_next.weight.empty() ? Tensor::Vector(n) : grad_next.weight;
  const Tensor d_contents_next =
      grad_next.memory.empty() ? Tensor(m, n) : grad_next.memory;

  grad_prev = StateGrad{};
  grad_prev.h = Tensor::Vector(c.h.size());
  grad_prev.memory = Tensor(m, n);
  grad_prev.weight = Tensor::Vector(n);

  WriteBackward(p.addressing, c.contents_prev, c.h, c.weight, c.write,
                d_contents_next, grads.addressing, d_h, grad_prev.memory,
                d_weight);

  Tensor d_weight_hat = Tensor::Vector(n);
  double d_gate = 0.0;
  InterpolateBackward(c.weight_prev, c.addressing.weight_hat, c.gate.g,
                      d_weight, grad_prev.weight, d_weight_hat, d_gate);
  GateBackward(p.addressing, c.h, c.gate, d_gate, grads.addressing, d_h);
  AddressBackward(p.addressing, c.contents_prev, c.h, c.addressing,
                  d_weight_hat, grads.addressing, d_h, grad_prev.memory);

  Tensor d_pre = d_h;
  for (std::size_t i = 0; i < d_pre.size(); ++i) {
    d_pre[i] *= 1.0 - c.h[i] * c.h[i];
  }
  grad_x = Tensor::Vector(c.x.size());
  Tensor d_read = Tensor::Vector(m);
  internal::Affine2Backward(d_pre, c.x, c.read, p.input_weight, p.read_weight,
                            grads.input_weight, grads.read_weight, grads.bias,
                            grad_x, d_read);
  ReadBackward(c.contents_prev, c.weight_prev, d_read, grad_prev.memory,
               grad_prev.weight);
}

}  // namespace rnnem
