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

#ifndef RNNEM_EXTERNAL_MEMORY_H_
#define RNNEM_EXTERNAL_MEMORY_H_

#include <cstddef>
#include <string_view>

#include "rnnem/tensor.h"

namespace rnnem {

// Projections from the hidden activity h (length p) to the quantities that
// drive memory access: key k (m), sharpening beta (scalar), interpolation
// gate g (scalar), new content v (m) and erase vector e (n).
struct AddressingParams {
  Tensor key_weight;      // m x p
  Tensor key_bias;        // m x 1
  Tensor sharpen_weight;  // 1 x p
  Tensor sharpen_bias;    // 1 x 1
  Tensor gate_weight;     // 1 x p
  Tensor gate_bias;       // 1 x 1
  Tensor content_weight;  // m x p
  Tensor content_bias;    // m x 1
  Tensor erase_weight;    // n x p
  Tensor erase_bias;      // n x 1

  static AddressingParams Zeros(std::size_t hidden, std::size_t slot_dim,
                                std::size_t slot_count);

  // Throws ShapeError unless every tensor fits (hidden, slot_dim, slot_count).
  void Validate(std::size_t hidden, std::size_t slot_dim,
                std::size_t slot_count) const;

  template <typename F>
  void ForEach(F&& f) {
    ForEachImpl(*this, f);
  }
  template <typename F>
  void ForEach(F&& f) const {
    ForEachImpl(*this, f);
  }

 private:
  template <typename Self, typename F>
  static void ForEachImpl(Self& self, F& f) {
    f(std::string_view("key_weight"), self.key_weight);
    f(std::string_view("key_bias"), self.key_bias);
    f(std::string_view("sharpen_weight"), self.sharpen_weight);
    f(std::string_view("sharpen_bias"), self.sharpen_bias);
    f(std::string_view("gate_weight"), self.gate_weight);
    f(std::string_view("gate_bias"), self.gate_bias);
    f(std::string_view("content_weight"), self.content_weight);
    f(std::string_view("content_bias"), self.content_bias);
    f(std::string_view("erase_weight"), self.erase_weight);
    f(std::string_view("erase_bias"), self.erase_bias);
  }
};

// Memory matrix of n slots, each an m-vector stored as a column, together
// with the read weight of the previous step.
class ExternalMemory {
 public:
  static constexpr double kDefaultInitValue = 0.1;

  ExternalMemory() = default;
  ExternalMemory(std::size_t slot_dim, std::size_t slot_count,
                 double init_value = kDefaultInitValue);

  std::size_t slot_dim() const { return contents_.rows(); }
  std::size_t slot_count() const { return contents_.cols(); }
  double init_value() const { return init_value_; }

  // m x n.
  const Tensor& contents() const { return contents_; }
  // Read weight w_{t-1}, n x 1.
  const Tensor& weight() const { return weight_; }

  Tensor Slot(std::size_t c) const;

  void SetContents(Tensor contents);
  // Throws ContractError unless weight lies on the probability simplex.
  void SetWeight(Tensor weight);

  // Fills every slot with init_value and makes the weight uniform.
  void Reset();

  friend bool operator==(const ExternalMemory&,
                         const ExternalMemory&) = default;

 private:
  Tensor contents_;
  Tensor weight_;
  double init_value_ = kDefaultInitValue;
};

// True when all elements are >= -tol and they sum to 1 within tol.
bool OnSimplex(const Tensor& w, double tol = 1e-9);

// Content-based addressing against the memory as it stands.
struct Addressing {
  Tensor key;          // k = W_k h + b_k
  double sharpen_pre;  // W_beta h + b_beta
  double beta;         // softplus(sharpen_pre) > 0
  Tensor similarity;   // cosine(k, M(:,c)) per slot
  Tensor weight_hat;   // softmax(beta * similarity)
};

Addressing Address(const ExternalMemory& mem, const AddressingParams& params,
                   const Tensor& h);

struct GateValue {
  double pre;
  double g;  // sigmoid(pre), strictly inside (0, 1)
};
GateValue InterpolationGate(const AddressingParams& params, const Tensor& h);

// w = (1 - g) w_prev + g w_hat. Throws ContractError when g is outside [0,1].
Tensor InterpolateWeight(const Tensor& w_prev, const Tensor& w_hat, double g);

// c = M w_prev, using the memory and weight left by the previous step.
Tensor Read(const ExternalMemory& mem);

struct WriteTrace {
  Tensor content;    // v = W_v h + b_v
  Tensor erase_pre;  // W_he h + b_he
  Tensor erase;      // e = sigmoid(erase_pre)
  Tensor forget;     // f = 1 - w .* e
};

// M'(:,c) = f(c) M(:,c) + w(c) v, and w becomes the stored weight.
ExternalMemory Write(const ExternalMemory& mem, const AddressingParams& params,
                     const Tensor& h, const Tensor& w,
                     WriteTrace* trace = nullptr);

ExternalMemory Reset(ExternalMemory mem);

// Backward passes. Each accumulates into its output references (callers
// zero them first).

void ReadBackward(const Tensor& contents_prev, const Tensor& weight_prev,
                  const Tensor& d_read, Tensor& d_contents_prev,
                  Tensor& d_weight_prev);

void AddressBackward(const AddressingParams& params,
                     const Tensor& contents_prev, const Tensor& h,
                     const Addressing& fwd, const Tensor& d_weight_hat,
                     AddressingParams& grads, Tensor& d_h,
                     Tensor& d_contents_prev);

void InterpolateBackward(const Tensor& w_prev, const Tensor& w_hat, double g,
                         const Tensor& d_w, Tensor& d_w_prev,
                         Tensor& d_w_hat, double& d_g);

void GateBackward(const AddressingParams& params, const Tensor& h,
                  const GateValue& gate, double d_g, AddressingParams& grads,
                  Tensor& d_h);

void WriteBackward(const AddressingParams& params, const Tensor& contents_prev,
                   const Tensor& h, const Tensor& w, const WriteTrace& fwd,
                   const Tensor& d_contents_next, AddressingParams& grads,
                   Tensor& d_h, Tensor& d_contents_prev, Tensor& d_w);

}  // namespace rnnem

#endif  // RNNEM_EXTERNAL_MEMORY_H_
