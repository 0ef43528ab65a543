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

#ifndef RNNEM_CELLS_H_
#define RNNEM_CELLS_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "rnnem/external_memory.h"
#include "rnnem/rng.h"
#include "rnnem/tensor.h"

namespace rnnem {

enum class CellKind { kSimpleRnn, kLstm, kGrnn, kRnnEm };

inline constexpr CellKind kAllCellKinds[] = {
    CellKind::kSimpleRnn, CellKind::kLstm, CellKind::kGrnn, CellKind::kRnnEm};

std::string_view CellKindName(CellKind kind);
// Accepts simple_rnn, lstm, grnn, rnn_em. Throws std::invalid_argument.
CellKind ParseCellKind(std::string_view name);

struct CellDims {
  std::size_t input = 0;       // windowed embedding length
  std::size_t hidden = 0;      // p
  std::size_t slot_dim = 0;    // m, RNN-EM only
  std::size_t slot_count = 0;  // n, RNN-EM only
};

// h = tanh(W_xh x + W_hh h_prev + b)
struct ElmanParams {
  Tensor input_weight;
  Tensor recurrent_weight;
  Tensor bias;

  template <typename Self, typename F>
  static void ForEach(Self& self, F&& f) {
    f(std::string_view("input_weight"), self.input_weight);
    f(std::string_view("recurrent_weight"), self.recurrent_weight);
    f(std::string_view("bias"), self.bias);
  }
};

// Input, forget and output gates plus a tanh candidate; no peepholes.
struct LstmParams {
  Tensor in_gate_input_weight, in_gate_recurrent_weight, in_gate_bias;
  Tensor forget_gate_input_weight, forget_gate_recurrent_weight,
      forget_gate_bias;
  Tensor out_gate_input_weight, out_gate_recurrent_weight, out_gate_bias;
  Tensor candidate_input_weight, candidate_recurrent_weight, candidate_bias;

  template <typename Self, typename F>
  static void ForEach(Self& self, F&& f) {
    f(std::string_view("in_gate_input_weight"), self.in_gate_input_weight);
    f(std::string_view("in_gate_recurrent_weight"),
      self.in_gate_recurrent_weight);
    f(std::string_view("in_gate_bias"), self.in_gate_bias);
    f(std::string_view("forget_gate_input_weight"),
      self.forget_gate_input_weight);
    f(std::string_view("forget_gate_recurrent_weight"),
      self.forget_gate_recurrent_weight);
    f(std::string_view("forget_gate_bias"), self.forget_gate_bias);
    f(std::string_view("out_gate_input_weight"), self.out_gate_input_weight);
    f(std::string_view("out_gate_recurrent_weight"),
      self.out_gate_recurrent_weight);
    f(std::string_view("out_gate_bias"), self.out_gate_bias);
    f(std::string_view("candidate_input_weight"), self.candidate_input_weight);
    f(std::string_view("candidate_recurrent_weight"),
      self.candidate_recurrent_weight);
    f(std::string_view("candidate_bias"), self.candidate_bias);
  }
};

// Gated recurrent network with reset gate r and update gate z:
//   candidate = tanh(W_xh x + W_hh (r .* h_prev) + b_h)
//   h = (1 - z) .* h_prev + z .* candidate
struct GrnnParams {
  Tensor candidate_input_weight, candidate_recurrent_weight, candidate_bias;
  Tensor reset_input_weight, reset_recurrent_weight, reset_bias;
  Tensor update_input_weight, update_recurrent_weight, update_bias;

  template <typename Self, typename F>
  static void ForEach(Self& self, F&& f) {
    f(std::string_view("candidate_input_weight"), self.candidate_input_weight);
    f(std::string_view("candidate_recurrent_weight"),
      self.candidate_recurrent_weight);
    f(std::string_view("candidate_bias"), self.candidate_bias);
    f(std::string_view("reset_input_weight"), self.reset_input_weight);
    f(std::string_view("reset_recurrent_weight"), self.reset_recurrent_weight);
    f(std::string_view("reset_bias"), self.reset_bias);
    f(std::string_view("update_input_weight"), self.update_input_weight);
    f(std::string_view("update_recurrent_weight"),
      self.update_recurrent_weight);
    f(std::string_view("update_bias"), self.update_bias);
  }
};

// Elman network whose recurrent input is a read from external memory:
//   h = tanh(W_ih x + W_c c + b),  c = M_{t-1} w_{t-1}
struct RnnEmParams {
  Tensor input_weight;  // p x input
  Tensor read_weight;   // p x m
  Tensor bias;          // p
  AddressingParams addressing;

  template <typename Self, typename F>
  static void ForEach(Self& self, F&& f) {
    f(std::string_view("input_weight"), self.input_weight);
    f(std::string_view("read_weight"), self.read_weight);
    f(std::string_view("bias"), self.bias);
    self.addressing.ForEach(f);
  }
};

using CellParams =
    std::variant<ElmanParams, LstmParams, GrnnParams, RnnEmParams>;

CellKind KindOf(const CellParams& params);

// Calls f(name, tensor) for every parameter tensor in a fixed order.
template <typename F>
void ForEachTensor(CellParams& params, F&& f) {
  std::visit([&](auto& p) { std::decay_t<decltype(p)>::ForEach(p, f); },
             params);
}
template <typename F>
void ForEachTensor(const CellParams& params, F&& f) {
  std::visit([&](const auto& p) { std::decay_t<decltype(p)>::ForEach(p, f); },
             params);
}

CellParams ZeroParams(CellKind kind, const CellDims& dims);
CellParams ZerosLike(const CellParams& params);
// Throws ShapeError naming the first tensor that does not fit dims.
void ValidateParams(const CellParams& params, const CellDims& dims);

// Glorot-uniform weights in [-r, r], r = sqrt(6 / (fan_in + fan_out)),
// zero biases. Throws ContractError on nonpositive dims.
CellParams InitParams(CellKind kind, const CellDims& dims, Rng& rng);

// Total scalar count over all cell tensors, biases included.
std::size_t CountParams(const CellParams& params);
std::size_t CountParams(CellKind kind, const CellDims& dims);

// Hidden size whose CountParams(kind, dims) is closest to target, with every
// other field of dims held fixed. Ties go to the smaller size.
std::size_t MatchHiddenSize(CellKind kind, CellDims dims, std::size_t target);

struct CellState {
  Tensor h;
  std::optional<Tensor> cell;              // LSTM
  std::optional<ExternalMemory> memory;    // RNN-EM
};

CellState InitialState(CellKind kind, const CellDims& dims,
                       double memory_init = ExternalMemory::kDefaultInitValue);

// Gradient with respect to a CellState. Unused members stay empty.
struct StateGrad {
  Tensor h;
  Tensor cell;
  Tensor memory;
  Tensor weight;

  static StateGrad Zeros(const CellState& like);
};

struct ElmanCache {
  Tensor x, h_prev, h;
};

struct LstmCache {
  Tensor x, h_prev, c_prev;
  Tensor in_gate, forget_gate, out_gate, candidate;
  Tensor c, tanh_c, h;
};

struct GrnnCache {
  Tensor x, h_prev;
  Tensor reset, update, gated_prev, candidate, h;
};

struct RnnEmCache {
  Tensor x;
  Tensor contents_prev, weight_prev;
  Tensor read;
  Tensor h;
  Addressing addressing;
  GateValue gate;
  Tensor weight;
  WriteTrace write;
};

using StepCache =
    std::variant<std::monostate, ElmanCache, LstmCache, GrnnCache, RnnEmCache>;

// Advances the recurrence by one timestep. When cache is non-null the
// intermediates needed by StepBackward are stored there. For RNN-EM the
// order is read -> hidden -> address -> interpolate -> write. Throws
// NumericError naming the timestep if the hidden activity is not finite.
CellState StepForward(const CellParams& params, const CellState& state,
                      const Tensor& x, StepCache* cache = nullptr,
                      std::size_t timestep = 0);

// Backpropagates through one step. grad_h is the gradient reaching h_t from
// outside the recurrence (the output layer); grad_next is the gradient with
// respect to the state this step produced. Parameter gradients accumulate
// into grads; grad_prev and grad_x are overwritten.
void StepBackward(const CellParams& params, const StepCache& cache,
                  const Tensor& grad_h, const StateGrad& grad_next,
                  CellParams& grads, StateGrad& grad_prev, Tensor& grad_x);

}  // namespace rnnem

#endif  // RNNEM_CELLS_H_
