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

// Straight-line scalar evaluation of one external-memory step, written with
// plain loops over std::vector so it shares no arithmetic with the library.

#ifndef RNNEM_TESTS_RNN_EM_REFERENCE_H_
#define RNNEM_TESTS_RNN_EM_REFERENCE_H_

#include <cmath>
#include <cstddef>
#include <vector>

#include "rnnem/cells.h"

namespace rnnem {
namespace reference {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;  // row-major

inline Mat ToMat(const Tensor& t) {
  Mat m(t.rows(), Vec(t.cols()));
  for (std::size_t r = 0; r < t.rows(); ++r)
    for (std::size_t c = 0; c < t.cols(); ++c) m[r][c] = t(r, c);
  return m;
}

inline Vec ToVec(const Tensor& t) { return Vec(t.values().begin(), t.values().end()); }

struct StepOut {
  Vec read;
  Vec h;
  Vec key;
  double beta = 0.0;
  Vec weight_hat;
  double g = 0.0;
  Vec weight;
  Mat memory;  // m x n
};

inline double Logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Row r of W times v plus b[r].
inline double AffineRow(const Mat& w, const Vec& v, std::size_t r, double b) {
  double s = b;
  for (std::size_t k = 0; k < v.size(); ++k) s += w[r][k] * v[k];
  return s;
}

inline StepOut Step(const RnnEmParams& p, const Vec& x, const Mat& memory,
                    const Vec& w_prev) {
  const std::size_t m = memory.size();
  const std::size_t n = w_prev.size();
  const Mat w_in = ToMat(p.input_weight);
  const Mat w_read = ToMat(p.read_weight);
  const Vec b = ToVec(p.bias);
  const AddressingParams& a = p.addressing;
  const Mat wk = ToMat(a.key_weight), wb = ToMat(a.sharpen_weight),
            wg = ToMat(a.gate_weight), wv = ToMat(a.content_weight),
            we = ToMat(a.erase_weight);
  const Vec bk = ToVec(a.key_bias), bv = ToVec(a.content_bias),
            be = ToVec(a.erase_bias);
  const double bb = a.sharpen_bias[0], bg = a.gate_bias[0];

  StepOut out;
  out.read.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) out.read[i] += memory[i][j] * w_prev[j];

  const std::size_t hidden = b.size();
  out.h.resize(hidden);
  for (std::size_t r = 0; r < hidden; ++r) {
    double s = AffineRow(w_in, x, r, b[r]);
    for (std::size_t i = 0; i < m; ++i) s += w_read[r][i] * out.read[i];
    out.h[r] = std::tanh(s);
  }

  out.key.resize(m);
  for (std::size_t i = 0; i < m; ++i) out.key[i] = AffineRow(wk, out.h, i, bk[i]);
  out.beta = std::log(1.0 + std::exp(AffineRow(wb, out.h, 0, bb)));

  double key_norm = 0.0;
  for (double v : out.key) key_norm += v * v;
  key_norm = std::sqrt(key_norm);
  Vec scores(n);
  for (std::size_t j = 0; j < n; ++j) {
    double dot = 0.0, col = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      dot += out.key[i] * memory[i][j];
      col += memory[i][j] * memory[i][j];
    }
    scores[j] = out.beta * dot / (key_norm * std::sqrt(col) + 1e-8);
  }
  double z = 0.0;
  for (double s : scores) z += std::exp(s);
  out.weight_hat.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.weight_hat[j] = std::exp(scores[j]) / z;

  out.g = Logistic(AffineRow(wg, out.h, 0, bg));
  out.weight.resize(n);
  for (std::size_t j = 0; j < n; ++j)
    out.weight[j] = (1.0 - out.g) * w_prev[j] + out.g * out.weight_hat[j];

  out.memory = memory;
  for (std::size_t j = 0; j < n; ++j) {
    const double erase = Logistic(AffineRow(we, out.h, j, be[j]));
    const double forget = 1.0 - out.weight[j] * erase;
    for (std::size_t i = 0; i < m; ++i) {
      const double content = AffineRow(wv, out.h, i, bv[i]);
      out.memory[i][j] = memory[i][j] * forget + content * out.weight[j];
    }
  }
  return out;
}

}  // namespace reference
}  // namespace rnnem

#endif  // RNNEM_TESTS_RNN_EM_REFERENCE_H_
