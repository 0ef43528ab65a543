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

#ifndef RNNEM_SRC_CELL_UTIL_H_
#define RNNEM_SRC_CELL_UTIL_H_

#include <cmath>
#include <string>
#include <utility>

#include "rnnem/cells.h"
#include "rnnem/tensor.h"

namespace rnnem::internal {

// W_x x + W_h h + b
inline Tensor Affine2(const Tensor& wx, const Tensor& x, const Tensor& wh,
                      const Tensor& h, const Tensor& b) {
  Tensor out = b;
  MatVecAccumulate(wx, x.values(), out.values());
  MatVecAccumulate(wh, h.values(), out.values());
  return out;
}

// Accumulates parameter and input gradients of Affine2 given the gradient
// d_pre of its output.
inline void Affine2Backward(const Tensor& d_pre, const Tensor& x,
                            const Tensor& h, const Tensor& wx, const Tensor& wh,
                            Tensor& g_wx, Tensor& g_wh, Tensor& g_b,
                            Tensor& d_x, Tensor& d_h) {
  AddOuter(d_pre.values(), x.values(), g_wx);
  AddOuter(d_pre.values(), h.values(), g_wh);
  g_b += d_pre;
  MatTVecAccumulate(wx, d_pre.values(), d_x.values());
  MatTVecAccumulate(wh, d_pre.values(), d_h.values());
}

inline void SigmoidInPlace(Tensor& t) {
  for (double& v : t.values()) v = Sigmoid(v);
}

inline void TanhInPlace(Tensor& t) {
  for (double& v : t.values()) v = std::tanh(v);
}

inline void CheckInput(const Tensor& w, const Tensor& x) {
  if (!x.is_vector() || x.rows() != w.cols()) {
    throw ShapeError("cell input " + x.ShapeString() +
                     " does not fit input weight " + w.ShapeString());
  }
}

inline void CheckFiniteHidden(const Tensor& h, std::size_t timestep) {
  if (!h.AllFinite()) {
    throw NumericError("non-finite hidden activation at timestep " +
                       std::to_string(timestep));
  }
}

template <typename Cache>
const Cache& CacheAs(const StepCache& cache, const char* kind) {
  const Cache* c = std::get_if<Cache>(&cache);
  if (c == nullptr) {
    throw ContractError(std::string("step_backward for ") + kind +
                        " called without a matching forward cache");
  }
  return *c;
}

}  // namespace rnnem::internal

#endif  // RNNEM_SRC_CELL_UTIL_H_
