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

#include "rnnem/tensor.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rnnem {

Tensor::Tensor(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    std::ostringstream msg;
    msg << "tensor data length " << data_.size() << " does not match shape "
        << rows_ << "x" << cols_;
    throw ShapeError(msg.str());
  }
}

Tensor Tensor::FromRows(
    std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<double> data;
  data.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw ShapeError("ragged rows in Tensor::FromRows");
    data.insert(data.end(), row.begin(), row.end());
  }
  return Tensor(r, c, std::move(data));
}

Tensor Tensor::ColumnVector(std::initializer_list<double> values) {
  return Tensor(values.size(), 1, std::vector<double>(values));
}

Tensor Tensor::ColumnVector(std::span<const double> values) {
  return Tensor(values.size(), 1,
                std::vector<double>(values.begin(), values.end()));
}

Tensor Tensor::Identity(std::size_t n) {
  Tensor t(n, n);
  for (std::size_t i = 0; i < n; ++i) t(i, i) = 1.0;
  return t;
}

void Tensor::Fill(double value) { std::fill(data_.begin(), data_.end(), value); }

bool Tensor::AllFinite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

std::string Tensor::ShapeString() const {
  return std::to_string(rows_) + "x" + std::to_string(cols_);
}

Tensor& Tensor::operator+=(const Tensor& other) {
  CheckSameShape(*this, other, "operator+=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Tensor& Tensor::operator-=(const Tensor& other) {
  CheckSameShape(*this, other, "operator-=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Tensor& Tensor::operator*=(double scale) {
  for (double& v : data_) v *= scale;
  return *this;
}

Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
Tensor operator*(double s, Tensor a) { return a *= s; }

void CheckSameShape(const Tensor& a, const Tensor& b, const char* what) {
  if (!a.SameShape(b)) {
    throw ShapeError(std::string(what) + ": shape mismatch " +
                     a.ShapeString() + " vs " + b.ShapeString());
  }
}

namespace {

void CheckFinite(const Tensor& t, const char* what) {
  if (!t.AllFinite()) {
    throw NumericError(std::string(what) + " produced a non-finite value");
  }
}

}  // namespace

Tensor MatMul(const Tensor& a, const Tensor& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("matmul: cannot multiply " + a.ShapeString() + " by " +
                     b.ShapeString());
  }
  Tensor out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double* out_row = out.data() + i * out.cols();
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      const double* b_row = b.data() + k * b.cols();
      for (std::size_t j = 0; j < b.cols(); ++j) out_row[j] += aik * b_row[j];
    }
  }
  CheckFinite(out, "matmul");
  return out;
}

Tensor MatVec(const Tensor& a, const Tensor& x) {
  if (!x.is_vector() || a.cols() != x.rows()) {
    throw ShapeError("matvec: cannot multiply " + a.ShapeString() + " by " +
                     x.ShapeString());
  }
  Tensor y = Tensor::Vector(a.rows());
  MatVecAccumulate(a, x.values(), y.values());
  return y;
}

void MatVecAccumulate(const Tensor& a, std::span<const double> x,
                      std::span<double> y) {
  if (x.size() != a.cols() || y.size() != a.rows()) {
    throw ShapeError("matvec: operand lengths " + std::to_string(x.size()) +
                     "/" + std::to_string(y.size()) + " do not fit " +
                     a.ShapeString());
  }
  const std::size_t cols = a.cols();
  const double* p = a.data();
  for (std::size_t i = 0; i < a.rows(); ++i, p += cols) {
    double sum = 0.0;
    for (std::size_t j = 0; j < cols; ++j) sum += p[j] * x[j];
    y[i] += sum;
  }
}

Tensor MatTVec(const Tensor& a, const Tensor& x) {
  if (!x.is_vector() || a.rows() != x.rows()) {
    throw ShapeError("matTvec: cannot multiply transpose of " +
                     a.ShapeString() + " by " + x.ShapeString());
  }
  Tensor y = Tensor::Vector(a.cols());
  MatTVecAccumulate(a, x.values(), y.values());
  return y;
}

void MatTVecAccumulate(const Tensor& a, std::span<const double> x,
                       std::span<double> y) {
  if (x.size() != a.rows() || y.size() != a.cols()) {
    throw ShapeError("matTvec: operand lengths " + std::to_string(x.size()) +
                     "/" + std::to_string(y.size()) + " do not fit " +
                     a.ShapeString());
  }
  const std::size_t cols = a.cols();
  const double* p = a.data();
  for (std::size_t i = 0; i < a.rows(); ++i, p += cols) {
    const double xi = x[i];
    if (xi == 0.0) continue;
    for (std::size_t j = 0; j < cols; ++j) y[j] += p[j] * xi;
  }
}

void AddOuter(std::span<const double> x, std::span<const double> y,
              Tensor& acc, double scale) {
  if (x.size() != acc.rows() || y.size() != acc.cols()) {
    throw ShapeError("outer product " + std::to_string(x.size()) + "x" +
                     std::to_string(y.size()) + " does not fit " +
                     acc.ShapeString());
  }
  const std::size_t cols = acc.cols();
  double* p = acc.data();
  for (std::size_t i = 0; i < acc.rows(); ++i, p += cols) {
    const double xi = scale * x[i];
    if (xi == 0.0) continue;
    for (std::size_t j = 0; j < cols; ++j) p[j] += xi * y[j];
  }
}

Tensor Transpose(const Tensor& a) {
  Tensor t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

Tensor Hadamard(const Tensor& a, const Tensor& b) {
  CheckSameShape(a, b, "hadamard");
  Tensor out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= b[i];
  return out;
}

double Dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw ShapeError("dot: length " + std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double SquaredNorm(std::span<const double> a) { return Dot(a, a); }

double Norm(std::span<const double> a) { return std::sqrt(SquaredNorm(a)); }

double MaxAbs(const Tensor& a) {
  double m = 0.0;
  for (double v : a.values()) m = std::max(m, std::abs(v));
  return m;
}

double Sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double Softplus(double x) {
  if (x > 30.0) return x;
  if (x < -30.0) return std::exp(x);
  return std::log1p(std::exp(x));
}

namespace {

double Apply(Activation kind, double x) {
  switch (kind) {
    case Activation::kSigmoid:
      return Sigmoid(x);
    case Activation::kTanh:
      return std::tanh(x);
    case Activation::kSoftplus:
      return Softplus(x);
    case Activation::kIdentity:
      return x;
  }
  return x;
}

double Derivative(Activation kind, double x) {
  switch (kind) {
    case Activation::kSigmoid: {
      const double s = Sigmoid(x);
      return s * (1.0 - s);
    }
    case Activation::kTanh: {
      const double t = std::tanh(x);
      return 1.0 - t * t;
    }
    case Activation::kSoftplus:
      return Sigmoid(x);
    case Activation::kIdentity:
      return 1.0;
  }
  return 1.0;
}

}  // namespace

Tensor Elementwise(Activation kind, const Tensor& x) {
  Tensor out = x;
  for (double& v : out.values()) v = Apply(kind, v);
  return out;
}

Tensor ElementwiseGrad(Activation kind, const Tensor& x,
                       const Tensor& upstream) {
  CheckSameShape(x, upstream, "elementwise_grad");
  Tensor out = upstream;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= Derivative(kind, x[i]);
  return out;
}

Tensor Softmax(const Tensor& x) {
  if (x.empty()) throw ShapeError("softmax of an empty vector");
  const double max = *std::max_element(x.values().begin(), x.values().end());
  Tensor out = x;
  double sum = 0.0;
  for (double& v : out.values()) {
    v = std::exp(v - max);
    sum += v;
  }
  for (double& v : out.values()) v /= sum;
  return out;
}

double Cosine(std::span<const double> u, std::span<const double> v) {
  return Dot(u, v) / (Norm(u) * Norm(v) + kCosineEpsilon);
}

double Cosine(const Tensor& u, const Tensor& v) {
  return Cosine(u.values(), v.values());
}

}  // namespace rnnem
