/*
 * Copyright 2026 The goc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef GOC_RNG_H_
#define GOC_RNG_H_

#include <array>
#include <cstdint>
#include <limits>

namespace goc {

// Philox4x32-10 block function (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key);

// Counter-based random stream. The key is the run seed; the upper half of the
// counter is the substream id, the lower half is the block position. Two
// streams with the same (seed, substream) produce identical sequences and
// streams with different substream ids never overlap.
//
// Satisfies UniformRandomBitGenerator so it can drive <random> distributions.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t substream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t substream() const { return substream_; }

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t substream_;
  std::uint64_t position_ = 0;
  std::array<std::uint32_t, 4> block_{};
  int lane_ = 2;  // 64-bit lanes consumed in the current block
};

}  // namespace goc

#endif  // GOC_RNG_H_
