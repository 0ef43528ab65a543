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

#include "rnnem/cells.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cell_util.h"

namespace rnnem {

// Per-kind entry points, defined in the *_cell.cc files.
CellState ElmanForward(const ElmanParams&, const CellState&, const Tensor&,
                       ElmanCache*, std::size_t);
void ElmanBackward(const ElmanParams&, const ElmanCache&, const Tensor&,
                   const StateGrad&, ElmanParams&, StateGrad&, Tensor&);
CellState LstmForward(const LstmParams&, const CellState&, const Tensor&,
                      LstmCache*, std::size_t);
void LstmBackward(const LstmParams&, const LstmCache&, const Tensor&,
                  const StateGrad&, LstmParams&, StateGrad&, Tensor&);
CellState GrnnForward(const GrnnParams&, const CellState&, const Tensor&,
                      GrnnCache*, std::size_t);
void GrnnBackward(const GrnnParams&, const GrnnCache&, const Tensor&,
                  const StateGrad&, GrnnParams&, StateGrad&, Tensor&);
CellState RnnEmForward(const RnnEmParams&, const CellState&, const Tensor&,
                       RnnEmCache*, std::size_t);
void RnnEmBackward(const RnnEmParams&, const RnnEmCache&, const Tensor&,
                   const StateGrad&, RnnEmParams&, StateGrad&, Tensor&);

std::string_view CellKindName(CellKind kind) {
  switch (kind) {
    case CellKind::kSimpleRnn:
      return "simple_rnn";
    case CellKind::kLstm:
      return "lstm";
    case CellKind::kGrnn:
      return "grnn";
    case CellKind::kRnnEm:
      return "rnn_em";
  }
  return "unknown";
}

CellKind ParseCellKind(std::string_view name) {
  for (CellKind kind : kAllCellKinds) {
    if (CellKindName(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown cell kind '" + std::string(name) +
                              "' (expected simple_rnn, lstm, grnn or rnn_em)");
}

CellKind KindOf(const CellParams& params) {
  switch (params.index()) {
    case 0:
      return CellKind::kSimpleRnn;
    case 1:
      return CellKind::kLstm;
    case 2:
      return CellKind::kGrnn;
    default:
      return CellKind::kRnnEm;
  }
}

namespace {

void SetGate(std::size_t in, std::size_t p, Tensor& wx, Tensor& wh,
             Tensor& b) {
  wx = Tensor(p, in);
  wh = Tensor(p, p);
  b = Tensor::Vector(p);
}

}  // namespace

CellParams ZeroParams(CellKind kind, const CellDims& dims) {
  const std::size_t in = dims.input;
  const std::size_t p = dims.hidden;
  switch (kind) {
    case CellKind::kSimpleRnn: {
      ElmanParams e;
      SetGate(in, p, e.input_weight, e.recurrent_weight, e.bias);
      return e;
    }
    case CellKind::kLstm: {
      LstmParams l;
      SetGate(in, p, l.in_gate_input_weight, l.in_gate_recurrent_weight,
              l.in_gate_bias);
      SetGate(in, p, l.forget_gate_input_weight,
              l.forget_gate_recurrent_weight, l.forget_gate_bias);
      SetGate(in, p, l.out_gate_input_weight, l.out_gate_recurrent_weight,
              l.out_gate_bias);
      SetGate(in, p, l.candidate_input_weight, l.candidate_recurrent_weight,
              l.candidate_bias);
      return l;
    }
    case CellKind::kGrnn: {
      GrnnParams g;
      SetGate(in, p, g.candidate_input_weight, g.candidate_recurrent_weight,
              g.candidate_bias);
      SetGate(in, p, g.reset_input_weight, g.reset_recurrent_weight,
              g.reset_bias);
      SetGate(in, p, g.update_input_weight, g.update_recurrent_weight,
              g.update_bias);
      return g;
    }
    case CellKind::kRnnEm: {
      RnnEmParams r;
      r.input_weight = Tensor(p, in);
      r.read_weight = Tensor(p, dims.slot_dim);
      r.bias = Tensor::Vector(p);
      r.addressing = AddressingParams::Zeros(p, dims.slot_dim, dims.slot_count);
      return r;
    }
  }
  throw std::invalid_argument("unknown cell kind");
}

CellParams ZerosLike(const CellParams& params) {
  CellParams out = params;
  ForEachTensor(out, [](std::string_view, Tensor& t) { t.SetZero(); });
  return out;
}

void ValidateParams(const CellParams& params, const CellDims& dims) {
  const CellParams expected = ZeroParams(KindOf(params), dims);
  std::vector<const Tensor*> want;
  ForEachTensor(expected,
                [&](std::string_view, const Tensor& t) { want.push_back(&t); });
  std::size_t i = 0;
  ForEachTensor(params, [&](std::string_view name, const Tensor& t) {
    if (!t.SameShape(*want[i])) {
      throw ShapeError(std::string(CellKindName(KindOf(params))) +
                       " parameter " + std::string(name) + " is " +
                       t.ShapeString() + ", expected " +
                       want[i]->ShapeString());
    }
    ++i;
  });
}

CellParams InitParams(CellKind kind, const CellDims& dims, Rng& rng) {
  if (dims.input == 0 || dims.hidden == 0 ||
      (kind == CellKind::kRnnEm && (dims.slot_dim == 0 || dims.slot_count == 0))) {
    throw ContractError("cell dimensions must be positive");
  }
  CellParams params = ZeroParams(kind, dims);
  ForEachTensor(params, [&](std::string_view name, Tensor& t) {
    if (name.ends_with("bias")) return;
    const double r =
        std::sqrt(6.0 / static_cast<double>(t.rows() + t.cols()));
    for (double& v : t.values()) v = rng.Uniform(-r, r);
  });
  return params;
}

std::size_t CountParams(const CellParams& params) {
  std::size_t total = 0;
  ForEachTensor(params,
                [&](std::string_view, const Tensor& t) { total += t.size(); });
  return total;
}

std::size_t CountParams(CellKind kind, const CellDims& dims) {
  return CountParams(ZeroParams(kind, dims));
}

std::size_t MatchHiddenSize(CellKind kind, CellDims dims, std::size_t target) {
  std::size_t best = 1;
  std::size_t best_gap = static_cast<std::size_t>(-1);
  // Counts grow monotonically in the hidden size, so stop once past target.
  for (std::size_t p = 1;; ++p) {
    dims.hidden = p;
    const std::size_t count = CountParams(kind, dims);
    const std::size_t gap = count > target ? count - target : target - count;
    if (gap < best_gap) {
      best_gap = gap;
      best = p;
    }
    if (count >= target) break;
  }
  return best;
}

CellState InitialState(CellKind kind, const CellDims& dims,
                       double memory_init) {
  CellState state;
  state.h = Tensor::Vector(dims.hidden);
  if (kind == CellKind::kLstm) state.cell = Tensor::Vector(dims.hidden);
  if (kind == CellKind::kRnnEm) {
    state.memory = ExternalMemory(dims.slot_dim, dims.slot_count, memory_init);
  }
  return state;
}

StateGrad StateGrad::Zeros(const CellState& like) {
  StateGrad g;
  g.h = Tensor(like.h.rows(), like.h.cols());
  if (like.cell) g.cell = Tensor(like.cell->rows(), like.cell->cols());
  if (like.memory) {
    g.memory = Tensor(like.memory->slot_dim(), like.memory->slot_count());
    g.weight = Tensor::Vector(like.memory->slot_count());
  }
  return g;
}

namespace {

template <typename C>
C* CacheSlot(StepCache* cache) {
  if (cache == nullptr) return nullptr;
  return &cache->emplace<C>();
}

}  // namespace

CellState StepForward(const CellParams& params, const CellState& state,
                      const Tensor& x, StepCache* cache,
                      std::size_t timestep) {
  switch (KindOf(params)) {
    case CellKind::kSimpleRnn:
      return ElmanForward(std::get<ElmanParams>(params), state, x,
                          CacheSlot<ElmanCache>(cache), timestep);
    case CellKind::kLstm:
      return LstmForward(std::get<LstmParams>(params), state, x,
                         CacheSlot<LstmCache>(cache), timestep);
    case CellKind::kGrnn:
      return GrnnForward(std::get<GrnnParams>(params), state, x,
                         CacheSlot<GrnnCache>(cache), timestep);
    case CellKind::kRnnEm:
      return RnnEmForward(std::get<RnnEmParams>(params), state, x,
                          CacheSlot<RnnEmCache>(cache), timestep);
  }
  throw std::invalid_argument("unknown cell kind");
}

void StepBackward(const CellParams& params, const StepCache& cache,
                  const Tensor& grad_h, const StateGrad& grad_next,
                  CellParams& grads, StateGrad& grad_prev, Tensor& grad_x) {
  if (params.index() != grads.index()) {
    throw ContractError("gradient accumulator kind does not match parameters");
  }
  switch (KindOf(params)) {
    case CellKind::kSimpleRnn:
      ElmanBackward(std::get<ElmanParams>(params),
                    internal::CacheAs<ElmanCache>(cache, "simple_rnn"), grad_h,
                    grad_next, std::get<ElmanParams>(grads), grad_prev, grad_x);
      return;
    case CellKind::kLstm:
      LstmBackward(std::get<LstmParams>(params),
                   internal::CacheAs<LstmCache>(cache, "lstm"), grad_h,
                   grad_next, std::get<LstmParams>(grads), grad_prev, grad_x);
      return;
    case CellKind::kGrnn:
      GrnnBackward(std::get<GrnnParams>(params),
                   internal::CacheAs<GrnnCache>(cache, "grnn"), grad_h,
                   grad_next, std::get<GrnnParams>(grads), grad_prev, grad_x);
      return;
    case CellKind::kRnnEm:
      RnnEmBackward(std::get<RnnEmParams>(params),
                    internal::CacheAs<RnnEmCache>(cache, "rnn_em"), grad_h,
                    grad_next, std::get<RnnEmParams>(grads), grad_prev, grad_x);
      return;
  }
}

}  // namespace rnnem
