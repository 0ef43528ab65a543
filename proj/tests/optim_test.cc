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

#include "rnnem/optim.h"

#include <cmath>
#include <limits>

#include "gtest/gtest.h"

namespace rnnem {
namespace {

TEST(AdaDeltaTest, FirstTwoStepsMatchScalarRecurrence) {
  const double rho = 0.95, eps = 1e-6;
  Tensor x = Tensor::ColumnVector({0.5, -1.0});
  const Tensor g1 = Tensor::ColumnVector({0.2, -3.0});
  const Tensor g2 = Tensor::ColumnVector({-0.1, 0.4});
  std::vector<Tensor*> params = {&x};
  std::vector<const Tensor*> grads1 = {&g1}, grads2 = {&g2};
  AdaDeltaState state = AdaDeltaState::ForParams(
      std::vector<const Tensor*>{&x}, rho, eps);

  double ref_x[2] = {0.5, -1.0};
  double eg[2] = {0, 0}, ed[2] = {0, 0};
  for (const Tensor* g : {&g1, &g2}) {
    for (int i = 0; i < 2; ++i) {
      const double gi = (*g)[i];
      eg[i] = rho * eg[i] + (1 - rho) * gi * gi;
      const double dx = -std::sqrt(ed[i] + eps) / std::sqrt(eg[i] + eps) * gi;
      ed[i] = rho * ed[i] + (1 - rho) * dx * dx;
      ref_x[i] += dx;
    }
    AdaDeltaStep(params, g == &g1 ? grads1 : grads2, state);
    for (int i = 0; i < 2; ++i) {
      EXPECT_NEAR(x[i], ref_x[i], 1e-15);
      EXPECT_NEAR(state.mean_sq_grad[0][i], eg[i], 1e-18);
      EXPECT_NEAR(state.mean_sq_delta[0][i], ed[i], 1e-18);
    }
  }
}

TEST(AdaDeltaTest, FirstStepClosedForm) {
  Tensor x = Tensor::ColumnVector({0.0});
  const Tensor g = Tensor::ColumnVector({2.0});
  std::vector<Tensor*> params = {&x};
  std::vector<const Tensor*> grads = {&g};
  OptimizerState state = AdaDeltaState::ForParams(
      std::vector<const Tensor*>{&x});
  ApplyUpdate(params, grads, state);
  const double want = -std::sqrt(1e-6) / std::sqrt(0.05 * 4.0 + 1e-6) * 2.0;
  EXPECT_NEAR(x[0], want, 1e-17);
  EXPECT_EQ(OptimizerName(state), "adadelta");
}

TEST(SgdTest, StepIsScaledGradient) {
  Tensor x = Tensor::ColumnVector({1.0, 2.0});
  const Tensor g = Tensor::ColumnVector({0.5, -1.0});
  std::vector<Tensor*> params = {&x};
  std::vector<const Tensor*> grads = {&g};
  OptimizerState state = SgdState{0.1};
  ApplyUpdate(params, grads, state);
  EXPECT_DOUBLE_EQ(x[0], 0.95);
  EXPECT_DOUBLE_EQ(x[1], 2.1);
  EXPECT_EQ(OptimizerName(state), "sgd");
}

TEST(OptimTest, NonFiniteGradientLeavesParamsUntouched) {
  Tensor a = Tensor::ColumnVector({1.0});
  Tensor b = Tensor::ColumnVector({2.0});
  const Tensor ga = Tensor::ColumnVector({0.5});
  const Tensor gb =
      Tensor::ColumnVector({std::numeric_limits<double>::infinity()});
  std::vector<Tensor*> params = {&a, &b};
  std::vector<const Tensor*> grads = {&ga, &gb};
  OptimizerState state = AdaDeltaState::ForParams(
      std::vector<const Tensor*>{&a, &b});
  EXPECT_THROW(ApplyUpdate(params, grads, state), NumericError);
  EXPECT_EQ(a[0], 1.0);
  EXPECT_EQ(b[0], 2.0);
  OptimizerState sgd = SgdState{};
  EXPECT_THROW(ApplyUpdate(params, grads, sgd), NumericError);
  EXPECT_EQ(a[0], 1.0);
}

TEST(OptimTest, ShapeMismatchIsRejected) {
  Tensor a = Tensor::ColumnVector({1.0});
  const Tensor g = Tensor::ColumnVector({1.0, 2.0});
  std::vector<Tensor*> params = {&a};
  std::vector<const Tensor*> grads = {&g};
  OptimizerState state = SgdState{};
  EXPECT_THROW(ApplyUpdate(params, grads, state), ShapeError);
}

TEST(ClipTest, RescalesToMaxNorm) {
  Tensor a = Tensor::ColumnVector({3.0});
  Tensor b = Tensor::ColumnVector({4.0});
  std::vector<Tensor*> grads = {&a, &b};
  EXPECT_DOUBLE_EQ(GlobalNorm(std::vector<const Tensor*>{&a, &b}), 5.0);
  const double before = ClipGradients(grads, ClipConfig{true, 1.0});
  EXPECT_DOUBLE_EQ(before, 5.0);
  EXPECT_NEAR(a[0], 0.6, 1e-15);
  EXPECT_NEAR(b[0], 0.8, 1e-15);
}

TEST(ClipTest, NeverIncreasesNormAndDisabledIsNoOp) {
  Tensor a = Tensor::ColumnVector({0.3, -0.4});
  std::vector<Tensor*> grads = {&a};
  ClipGradients(grads, ClipConfig{true, 5.0});
  EXPECT_EQ(a, Tensor::ColumnVector({0.3, -0.4}));
  Tensor big = Tensor::ColumnVector({30.0, 40.0});
  std::vector<Tensor*> g2 = {&big};
  ClipGradients(g2, ClipConfig{});
  EXPECT_EQ(big, Tensor::ColumnVector({30.0, 40.0}));
  EXPECT_FALSE(ClipConfig{}.enabled);
}

}  // namespace
}  // namespace rnnem
