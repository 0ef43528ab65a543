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

#include "rnnem/gradcheck.h"

#include <set>

#include "gtest/gtest.h"
#include "rnnem/rng.h"

namespace rnnem {
namespace {

TEST(RelativeErrorTest, Definition) {
  EXPECT_DOUBLE_EQ(RelativeError(1.0, 1.0, 1e-6), 0.0);
  EXPECT_DOUBLE_EQ(RelativeError(2.0, 1.0, 1e-6), 0.5);
  EXPECT_DOUBLE_EQ(RelativeError(-1.0, 1.0, 1e-6), 2.0);
  // Below the floor the error is absolute over the floor.
  EXPECT_DOUBLE_EQ(RelativeError(1e-9, 0.0, 1e-6), 1e-3);
  EXPECT_DOUBLE_EQ(RelativeError(0.0, 0.0, 1e-6), 0.0);
}

class GradCheckKindTest : public ::testing::TestWithParam<CellKind> {};

TEST_P(GradCheckKindTest, PassesOnSeveralRandomConfigs) {
  for (std::uint64_t seed : {101u, 202u, 303u}) {
    GradCheckOptions opts;
    opts.seed = seed;
    const GradCheckReport report = RunGradCheck(GetParam(), opts);
    EXPECT_TRUE(report.pass) << CellKindName(GetParam()) << " seed " << seed
                             << " worst " << report.worst_relative_error;
    EXPECT_LT(report.worst_relative_error, 1e-4);
    EXPECT_LE(report.dims.hidden, 5u);
    EXPECT_LE(report.dims.slot_dim, 4u);
    EXPECT_LE(report.dims.slot_count, 3u);
  }
}

TEST_P(GradCheckKindTest, ReportListsEveryTensorOnce) {
  GradCheckOptions opts;
  opts.seed = 9;
  opts.sampled_coords = 0;
  const GradCheckReport report = RunGradCheck(GetParam(), opts);
  Rng rng(0);
  const TaggerModel like = InitTagger(GetParam(), report.dims, rng);
  const auto names = like.params.Names();
  ASSERT_EQ(report.tensors.size(), names.size());
  std::size_t coords = 0;
  for (std::size_t i = 0; i < names.size(); ++i) {
    EXPECT_EQ(report.tensors[i].name, names[i]);
    coords += report.tensors[i].coords_checked;
  }
  EXPECT_EQ(coords, like.params.Count());
}

TEST_P(GradCheckKindTest, CorruptedTensorIsReported) {
  GradCheckOptions opts;
  opts.seed = 5;
  opts.corrupt_tensor = "output_weight";
  const GradCheckReport report = RunGradCheck(GetParam(), opts);
  EXPECT_FALSE(report.pass);
  for (const TensorCheck& t : report.tensors) {
    EXPECT_EQ(t.pass, t.name != "output_weight") << t.name;
  }
}

INSTANTIATE_TEST_SUITE_P(AllCells, GradCheckKindTest,
                         ::testing::ValuesIn(kAllCellKinds),
                         [](const auto& info) {
                           return std::string(CellKindName(info.param));
                         });

TEST(GradCheckTest, CorruptingACellTensorNamesIt) {
  GradCheckOptions opts;
  opts.corrupt_tensor = "cell.erase_weight";
  const GradCheckReport report = RunGradCheck(CellKind::kRnnEm, opts);
  EXPECT_FALSE(report.pass);
  std::set<std::string> failed;
  for (const TensorCheck& t : report.tensors)
    if (!t.pass) failed.insert(t.name);
  EXPECT_EQ(failed, std::set<std::string>{"cell.erase_weight"});
}

}  // namespace
}  // namespace rnnem
