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

#ifndef RNNEM_TENSOR_H_
#define RNNEM_TENSOR_H_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rnnem {

// Raised when operand shapes do not conform.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when a computation produces NaN or Inf.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a documented precondition is violated by the caller.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Dense row-major matrix of doubles. Vectors are column vectors (n x 1).
class Tensor {
 public:
  Tensor() = default;
  Tensor(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Tensor(std::size_t rows, std::size_t cols, std::vector<double> data);

  static Tensor Vector(std::size_t n, double fill = 0.0) {
    return Tensor(n, 1, fill);
  }
  static Tensor FromRows(
      std::initializer_list<std::initializer_list<double>> rows);
  static Tensor ColumnVector(std::initializer_list<double> values);
  static Tensor ColumnVector(std::span<const double> values);
  static Tensor Identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }
  bool is_vector() const { return cols_ == 1; }
  bool SameShape(const Tensor& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  double& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }
  std::span<double> row(std::size_t r) {
    return std::span<double>(data_).subspan(r * cols_, cols_);
  }
  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(data_).subspan(r * cols_, cols_);
  }

  void Fill(double value);
  void SetZero() { Fill(0.0); }
  bool AllFinite() const;
  std::string ShapeString() const;

  Tensor& operator+=(const Tensor& other);
  Tensor& operator-=(const Tensor& other);
  Tensor& operator*=(double scale);

  friend bool operator==(const Tensor& a, const Tensor& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Tensor operator+(Tensor a, const Tensor& b);
Tensor operator-(Tensor a, const Tensor& b);
Tensor operator*(double s, Tensor a);

// Throws ShapeError mentioning `what` unless a and b have identical shape.
void CheckSameShape(const Tensor& a, const Tensor& b, const char* what);

// Standard matrix product. Throws ShapeError naming both shapes when
// a.cols() != b.rows(), NumericError if the result is not finite.
Tensor MatMul(const Tensor& a, const Tensor& b);

// y = a * x for a column vector x.
Tensor MatVec(const Tensor& a, const Tensor& x);
// y += a * x.
void MatVecAccumulate(const Tensor& a, std::span<const double> x,
                      std::span<double> y);
// y = a^T * x.
Tensor MatTVec(const Tensor& a, const Tensor& x);
// y += a^T * x.
void MatTVecAccumulate(const Tensor& a, std::span<const double> x,
                       std::span<double> y);
// acc += scale * x * y^T.
void AddOuter(std::span<const double> x, std::span<const double> y,
              Tensor& acc, double scale = 1.0);

Tensor Transpose(const Tensor& a);
Tensor Hadamard(const Tensor& a, const Tensor& b);
double Dot(std::span<const double> a, std::span<const double> b);
double Norm(std::span<const double> a);
double SquaredNorm(std::span<const double> a);
double MaxAbs(const Tensor& a);

enum class Activation { kSigmoid, kTanh, kSoftplus, kIdentity };

double Sigmoid(double x);
// log(1 + exp(x)) evaluated without overflow.
double Softplus(double x);

Tensor Elementwise(Activation kind, const Tensor& x);
// upstream * f'(x), elementwise.
Tensor ElementwiseGrad(Activation kind, const Tensor& x,
                       const Tensor& upstream);

// Max-shifted softmax over a vector. Throws ShapeError on empty input.
Tensor Softmax(const Tensor& x);

// Added to the cosine denominator so the similarity is defined for zero
// vectors.
inline constexpr double kCosineEpsilon = 1e-8;

// u.v / (|u||v| + kCosineEpsilon).
double Cosine(std::span<const double> u, std::span<const double> v);
double Cosine(const Tensor& u, const Tensor& v);

}  // namespace rnnem

#endif  // RNNEM_TENSOR_H_
