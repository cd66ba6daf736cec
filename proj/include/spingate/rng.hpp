/* Copyright 2026 The spingate Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef SPINGATE_RNG_HPP
#define SPINGATE_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

namespace spingate {

// SplitMix64 output function (Steele, Lea, Flood / Java SplittableRandom).
inline constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// Counter-based generator: value n of stream `seed` is
// splitmix64_mix(seed + (n+1)*golden).  Streams are cheap to jump and
// the same bits come back for the same (seed, n) on every platform,
// which is what the reproducibility contracts below rely on.
class SplitMix64 {
public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next_u64() {
    state_ += kGolden;
    return splitmix64_mix(state_);
  }

  // uniform double in [0, 1) with 53 random bits
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // standard normal via Box-Muller; consumes exactly two uniforms per call
  // (fixed consumption keeps streams alignment-stable across refactors)
  double next_gaussian() {
    // (u64>>11 + 1) * 2^-53 lies in (0, 1], so the log() argument is never 0
    const double u1 =
        (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

private:
  std::uint64_t state_;
};

// Seed of realization k within an ensemble keyed by master_seed.
// Documented mixing function: mix(master ^ mix(golden*(k+1))).
inline constexpr std::uint64_t realization_seed(std::uint64_t master_seed,
                                                std::uint64_t k) {
  return splitmix64_mix(master_seed ^ splitmix64_mix(kGolden * (k + 1)));
}

// Independent named substream of a master seed (frequency draws, fresh
// evaluation blocks, ...).  tag values are small enumerators chosen by the
// caller; (tag, index) pairs never collide with realization_seed streams
// because of the added constant.
inline constexpr std::uint64_t derived_seed(std::uint64_t master_seed,
                                            std::uint64_t tag,
                                            std::uint64_t index = 0) {
  std::uint64_t h = splitmix64_mix(master_seed + 0x6A09E667F3BCC909ULL);
  h = splitmix64_mix(h ^ (kGolden * (tag + 1)));
  return splitmix64_mix(h + kGolden * index);
}

} // namespace spingate

#endif // SPINGATE_RNG_HPP
