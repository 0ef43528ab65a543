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

#include "rnnem/external_memory.h"

#include <cmath>
#include <string>
#include <vector>

namespace rnnem {

AddressingParams AddressingParams::Zeros(std::size_t hidden,
                                         std::size_t slot_dim,
                                         std::size_t slot_count) {
  AddressingParams p;
  p.key_weight = Tensor(slot_dim, hidden);
  p.key_bias = Tensor::Vector(slot_dim);
  p.sharpen_weight = Tensor(1, hidden);
  p.sharpen_bias = Tensor(1, 1);
  p.gate_weight = Tensor(1, hidden);
  p.gate_bias = Tensor(1, 1);
  p.content_weight = Tensor(slot_dim, hidden);
  p.content_bias = Tensor::Vector(slot_dim);
  p.erase_weight = Tensor(slot_count, hidden);
  p.erase_bias = Tensor::Vector(slot_count);
  return p;
}

void AddressingParams::Validate(std::size_t hidden, std::size_t slot_dim,
                                std::size_t slot_count) const {
  const AddressingParams expected = Zeros(hidden, slot_dim, slot_count);
  std::vector<const Tensor*> want;
  expected.ForEach([&](std::string_view, const Tensor& t) { want.push_back(&t); });
  std::size_t i = 0;
  ForEach([&](std::string_view name, const Tensor& t) {
    if (!t.SameShape(*want[i])) {
      throw ShapeError("addressing parameter " + std::string(name) + " is " +
                       t.ShapeString() + ", expected " +
                       want[i]->ShapeString());
    }
    ++i;
  });
}

ExternalMemory::ExternalMemory(std::size_t slot_dim, std::size_t slot_count,
                               double init_value)
    : contents_(slot_dim, slot_count),
      weight_(Tensor::Vector(slot_count)),
      init_value_(init_value) {
  if (slot_dim == 0 || slot_count == 0) {
    throw ContractError("external memory needs positive slot_dim and slot_count");
  }
  Reset();
}

Tensor ExternalMemory::Slot(std::size_t c) const {
  Tensor slot = Tensor::Vector(slot_dim());
  for (std::size_t i = 0; i < slot_dim(); ++i) slot[i] = contents_(i, c);
  return slot;
}

void ExternalMemory::SetContents(Tensor contents) {
  CheckSameShape(contents, contents_, "ExternalMemory::SetContents");
  contents_ = std::move(contents);
}

void ExternalMemory::SetWeight(Tensor weight) {
  CheckSameShape(weight, weight_, "ExternalMemory::SetWeight");
  if (!OnSimplex(weight)) {
    throw ContractError("read weight must lie on the probability simplex");
  }
  weight_ = std::move(weight);
}

void ExternalMemory::Reset() {
  contents_.Fill(init_value_);
  weight_.Fill(1.0 / static_cast<double>(weight_.size()));
}

bool OnSimplex(const Tensor& w, double tol) {
  double sum = 0.0;
  for (double v : w.values()) {
    if (!(v >= -tol)) return false;
    sum += v;
  }
  return std::abs(sum - 1.0) <= tol;
}

namespace {

// Affine map W h + b with W having a single row.
double ScalarProjection(const Tensor& w, const Tensor& b, const Tensor& h) {
  return Dot(w.row(0), h.values()) + b[0];
}

Tensor Affine(const Tensor& w, const Tensor& b, const Tensor& h) {
  Tensor out = b;
  MatVecAccumulate(w, h.values(), out.values());
  return out;
}

void CheckHidden(const AddressingParams& params, const Tensor& h) {
  if (!h.is_vector() || h.rows() != params.key_weight.cols()) {
    throw ShapeError("hidden vector " + h.ShapeString() +
                     " does not fit addressing weights " +
                     params.key_weight.ShapeString());
  }
}

}  // namespace

Addressing Address(const ExternalMemory& mem, const AddressingParams& params,
                   const Tensor& h) {
  CheckHidden(params, h);
  if (params.key_weight.rows() != mem.slot_dim()) {
    throw ShapeError("key dimension " + params.key_weight.ShapeString() +
                     " does not match slot dimension " +
                     std::to_string(mem.slot_dim()));
  }
  Addressing a;
  a.key = Affine(params.key_weight, params.key_bias, h);
  a.sharpen_pre = ScalarProjection(params.sharpen_weight, params.sharpen_bias, h);
  a.beta = Softplus(a.sharpen_pre);
  const std::size_t n = mem.slot_count();
  a.similarity = Tensor::Vector(n);
  Tensor scaled = Tensor::Vector(n);
  for (std::size_t c = 0; c < n; ++c) {
    a.similarity[c] = Cosine(a.key, mem.Slot(c));
    scaled[c] = a.beta * a.similarity[c];
  }
  a.weight_hat = Softmax(scaled);
  return a;
}

GateValue InterpolationGate(const AddressingParams& params, const Tensor& h) {
  CheckHidden(params, h);
  GateValue gate;
  gate.pre = ScalarProjection(params.gate_weight, params.gate_bias, h);
  gate.g = Sigmoid(gate.pre);
  return gate;
}

Tensor InterpolateWeight(const Tensor& w_prev, const Tensor& w_hat, double g) {
  if (!(g >= 0.0 && g <= 1.0)) {
    throw ContractError("interpolation coefficient " + std::to_string(g) +
                        " is outside [0, 1]");
  }
  CheckSameShape(w_prev, w_hat, "interpolate_weight");
  Tensor w = w_prev;
  for (std::size_t c = 0; c < w.size(); ++c) {
    w[c] = (1.0 - g) * w_prev[c] + g * w_hat[c];
  }
  return w;
}

Tensor Read(const ExternalMemory& mem) {
  return MatVec(mem.contents(), mem.weight());
}

ExternalMemory Write(const ExternalMemory& mem, const AddressingParams& params,
                     const Tensor& h, const Tensor& w, WriteTrace* trace) {
  CheckHidden(params, h);
  CheckSameShape(w, mem.weight(), "write weight");
  if (params.content_weight.rows() != mem.slot_dim() ||
      params.erase_weight.rows() != mem.slot_count()) {
    throw ShapeError("write projections " +
                     params.content_weight.ShapeString() + "/" +
                     params.erase_weight.ShapeString() +
                     " do not match memory " + mem.contents().ShapeString());
  }
  WriteTrace local;
  WriteTrace& t = trace ? *trace : local;
  t.content = Affine(params.content_weight, params.content_bias, h);
  t.erase_pre = Affine(params.erase_weight, params.erase_bias, h);
  t.erase = Elementwise(Activation::kSigmoid, t.erase_pre);
  t.forget = Tensor::Vector(mem.slot_count());
  for (std::size_t c = 0; c < mem.slot_count(); ++c) {
    t.forget[c] = 1.0 - w[c] * t.erase[c];
  }

  Tensor next = mem.contents();
  const std::size_t m = mem.slot_dim();
  const std::size_t n = mem.slot_count();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t c = 0; c < n; ++c) {
      // Slots with zero weight are left bit-identical.
      if (w[c] == 0.0) continue;
      next(i, c) = t.forget[c] * next(i, c) + w[c] * t.content[i];
    }
  }
  ExternalMemory out = mem;
  out.SetContents(std::move(next));
  out.SetWeight(w);
  return out;
}

ExternalMemory Reset(ExternalMemory mem) {
  mem.Reset();
  return mem;
}

void ReadBackward(const Tensor& contents_prev, const Tensor& weight_prev,
                  const Tensor& d_read, Tensor& d_contents_prev,
                  Tensor& d_weight_prev) {
  AddOuter(d_read.values(), weight_prev.values(), d_contents_prev);
  MatTVecAccumulate(contents_prev, d_read.values(), d_weight_prev.values());
}

void AddressBackward(const AddressingParams& params,
                     const Tensor& contents_prev, const Tensor& h,
                     const Addressing& fwd, const Tensor& d_weight_hat,
                     AddressingParams& grads, Tensor& d_h,
                     Tensor& d_contents_prev) {
  const std::size_t m = contents_prev.rows();
  const std::size_t n = contents_prev.cols();

  // Softmax over z = beta * s.
  const double inner = Dot(d_weight_hat.values(), fwd.weight_hat.values());
  Tensor d_z = Tensor::Vector(n);
  for (std::size_t c = 0; c < n; ++c) {
    d_z[c] = fwd.weight_hat[c] * (d_weight_hat[c] - inner);
  }
  const double d_beta = Dot(d_z.values(), fwd.similarity.values());
  const double d_sharpen_pre = d_beta * Sigmoid(fwd.sharpen_pre);

  // Cosine similarities.
  const Tensor& k = fwd.key;
  const double k_norm = Norm(k.values());
  Tensor d_key = Tensor::Vector(m);
  Tensor slot = Tensor::Vector(m);
  for (std::size_t c = 0; c < n; ++c) {
    const double d_s = fwd.beta * d_z[c];
    if (d_s == 0.0) continue;
    for (std::size_t i = 0; i < m; ++i) slot[i] = contents_prev(i, c);
    const double slot_norm = Norm(slot.values());
    const double num = Dot(k.values(), slot.values());
    const double den = k_norm * slot_norm + kCosineEpsilon;
    const double ratio = num / (den * den);
    for (std::size_t i = 0; i < m; ++i) {
      double dk = slot[i] / den;
      if (k_norm > 0.0) dk -= ratio * slot_norm * k[i] / k_norm;
      d_key[i] += d_s * dk;
      double dm = k[i] / den;
      if (slot_norm > 0.0) dm -= ratio * k_norm * slot[i] / slot_norm;
      d_contents_prev(i, c) += d_s * dm;
    }
  }

  AddOuter(d_key.values(), h.values(), grads.key_weight);
  grads.key_bias += d_key;
  MatTVecAccumulate(params.key_weight, d_key.values(), d_h.values());

  const double sp[1] = {d_sharpen_pre};
  AddOuter(sp, h.values(), grads.sharpen_weight);
  grads.sharpen_bias[0] += d_sharpen_pre;
  MatTVecAccumulate(params.sharpen_weight, sp, d_h.values());
}

void InterpolateBackward(const Tensor& w_prev, const Tensor& w_hat, double g,
                         const Tensor& d_w, Tensor& d_w_prev, Tensor& d_w_hat,
                         double& d_g) {
  for (std::size_t c = 0; c < d_w.size(); ++c) {
    d_w_prev[c] += (1.0 - g) * d_w[c];
    d_w_hat[c] += g * d_w[c];
    d_g += d_w[c] * (w_hat[c] - w_prev[c]);
  }
}

void GateBackward(const AddressingParams& params, const Tensor& h,
                  const GateValue& gate, double d_g, AddressingParams& grads,
                  Tensor& d_h) {
  const double d_pre[1] = {d_g * gate.g * (1.0 - gate.g)};
  AddOuter(d_pre, h.values(), grads.gate_weight);
  grads.gate_bias[0] += d_pre[0];
  MatTVecAccumulate(params.gate_weight, d_pre, d_h.values());
}

void WriteBackward(const AddressingParams& params, const Tensor& contents_prev,
                   const Tensor& h, const Tensor& w, const WriteTrace& fwd,
                   const Tensor& d_contents_next, AddressingParams& grads,
                   Tensor& d_h, Tensor& d_contents_prev, Tensor& d_w) {
  const std::size_t m = contents_prev.rows();
  const std::size_t n = contents_prev.cols();
  Tensor d_content = Tensor::Vector(m);
  Tensor d_erase_pre = Tensor::Vector(n);
  for (std::size_t c = 0; c < n; ++c) {
    double d_forget = 0.0;
    double d_wc = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double up = d_contents_next(i, c);
      d_contents_prev(i, c) += fwd.forget[c] * up;
      d_forget += up * contents_prev(i, c);
      d_content[i] += up * w[c];
      d_wc += up * fwd.content[i];
    }
    // f = 1 - w .* e
    d_wc -= d_forget * fwd.erase[c];
    const double d_erase = -d_forget * w[c];
    d_erase_pre[c] = d_erase * fwd.erase[c] * (1.0 - fwd.erase[c]);
    d_w[c] += d_wc;
  }
  AddOuter(d_content.values(), h.values(), grads.content_weight);
  grads.content_bias += d_content;
  MatTVecAccumulate(params.content_weight, d_content.values(), d_h.values());
  AddOuter(d_erase_pre.values(), h.values(), grads.erase_weight);
  grads.erase_bias += d_erase_pre;
  MatTVecAccumulate(params.erase_weight, d_erase_pre.values(), d_h.values());
}

}  // namespace rnnem
