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

#include <cmath>

#include "gtest/gtest.h"
#include "rnn_em_reference.h"
#include "rnnem/cells.h"
#include "rnnem/rng.h"

namespace rnnem {
namespace {

struct Case {
  std::uint64_t seed;
  CellDims dims;
};

class RnnEmOracleTest : public ::testing::TestWithParam<Case> {};

TEST_P(RnnEmOracleTest, StepMatchesStraightLineReference) {
  const Case c = GetParam();
  Rng rng(c.seed);
  CellParams params = InitParams(CellKind::kRnnEm, c.dims, rng);
  ForEachTensor(params, [&](std::string_view, Tensor& t) {
    for (double& v : t.values()) v = rng.Uniform(-1.0, 1.0);
  });
  const auto& em = std::get<RnnEmParams>(params);

  CellState state = InitialState(CellKind::kRnnEm, c.dims);
  Tensor contents(c.dims.slot_dim, c.dims.slot_count);
  for (double& v : contents.values()) v = rng.Uniform(-1.0, 1.0);
  state.memory->SetContents(contents);
  Tensor w = Tensor::Vector(c.dims.slot_count);
  double total = 0.0;
  for (double& v : w.values()) total += (v = rng.Uniform(0.05, 1.0));
  w *= 1.0 / total;
  state.memory->SetWeight(w);

  // Several chained steps so the carried memory is exercised too.
  reference::Mat ref_mem = reference::ToMat(contents);
  reference::Vec ref_w = reference::ToVec(w);
  for (int t = 0; t < 4; ++t) {
    Tensor x = Tensor::Vector(c.dims.input);
    for (double& v : x.values()) v = rng.Uniform(-1.0, 1.0);
    StepCache cache;
    const CellState next = StepForward(params, state, x, &cache);
    const auto& rc = std::get<RnnEmCache>(cache);
    const reference::StepOut ref =
        reference::Step(em, reference::ToVec(x), ref_mem, ref_w);

    for (std::size_t i = 0; i < ref.read.size(); ++i)
      EXPECT_NEAR(rc.read[i], ref.read[i], 1e-12);
    for (std::size_t r = 0; r < ref.h.size(); ++r)
      EXPECT_NEAR(next.h[r], ref.h[r], 1e-12);
    for (std::size_t i = 0; i < ref.key.size(); ++i)
      EXPECT_NEAR(rc.addressing.key[i], ref.key[i], 1e-12);
    EXPECT_NEAR(rc.addressing.beta, ref.beta, 1e-12);
    EXPECT_NEAR(rc.gate.g, ref.g, 1e-12);
    for (std::size_t j = 0; j < ref.weight.size(); ++j) {
      EXPECT_NEAR(rc.addressing.weight_hat[j], ref.weight_hat[j], 1e-12);
      EXPECT_NEAR(next.memory->weight()[j], ref.weight[j], 1e-12);
      for (std::size_t i = 0; i < ref.memory.size(); ++i)
        EXPECT_NEAR(next.memory->contents()(i, j), ref.memory[i][j], 1e-12);
    }
    state = next;
    ref_mem = ref.memory;
    ref_w = ref.weight;
  }
}

INSTANTIATE_TEST_SUITE_P(
    Shapes, RnnEmOracleTest,
    ::testing::Values(Case{1, {3, 4, 2, 3}}, Case{2, {5, 2, 4, 1}},
                      Case{3, {1, 5, 3, 2}}, Case{4, {6, 3, 1, 4}},
                      Case{5, {4, 6, 5, 8}}));

}  // namespace
}  // namespace rnnem
