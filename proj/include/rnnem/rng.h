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

#ifndef RNNEM_RNG_H_
#define RNNEM_RNG_H_

#include <cstdint>
#include <random>

namespace rnnem {

// Seeded generator with a platform-independent draw sequence. Only the raw
// 64-bit output of mt19937_64 is used; the conversions below are spelled out
// so no implementation-defined distribution is involved.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t NextU64() { return engine_(); }

  // Uniform in [0, 1) with 53 bits of precision.
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  // Uniform integer in [0, n). n must be positive.
  std::uint64_t UniformInt(std::uint64_t n);
  // Uniform integer in [lo, hi], inclusive.
  std::int64_t UniformRange(std::int64_t lo, std::int64_t hi);

  bool Bernoulli(double p) { return Uniform() < p; }

  // Derives an independent child generator; used to give each sub-task its
  // own stream without disturbing the parent's sequence length.
  Rng Fork(std::uint64_t salt);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace rnnem

#endif  // RNNEM_RNG_H_
