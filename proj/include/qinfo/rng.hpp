// Copyright 2026 The qinfo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QINFO_RNG_HPP
#define QINFO_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

namespace qinfo {

/// Seed value for a simulation run. Identical seeds reproduce identical
/// simulation traces bit-exactly.
struct RngSeed {
  std::uint64_t value = 0;
};

/// xoshiro256** 1.0 (Blackman & Vigna, 2018), seeded through SplitMix64.
///
/// The generator is spelled out here rather than taken from a library so the
/// bit stream is pinned by this file alone and reproducible on any platform:
///
///   SplitMix64:  z  = (state += 0x9E3779B97F4A7C15)
///                z  = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///                z  = (z ^ (z >> 27)) * 0x94D049BB133111EB
///                out = z ^ (z >> 31)
///   xoshiro256**: out = rotl(s1 * 5, 7) * 9, followed by the linear
///                state transition with shifts 17/45.
///
/// The four xoshiro words are the first four SplitMix64 outputs for the
/// seed. Doubles take the top 53 bits: (next() >> 11) * 2^-53.
///
/// All stochastic operations in this library receive a generator explicitly;
/// there is no global randomness. A generator is single-owner: one per
/// simulation run. Parallel batches use independently seeded generators
/// (seed = base_seed + trial_index).
class Rng {
 public:
  explicit Rng(RngSeed seed) {
    std::uint64_t sm = seed.value;
    for (int i = 0; i < 4; ++i) {
      sm += 0x9E3779B97F4A7C15ULL;
      std::uint64_t z = sm;
      z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
      z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
      s_[i] = z ^ (z >> 31);
    }
  }

  explicit Rng(std::uint64_t seed) : Rng(RngSeed{seed}) {}

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1) with 53 bits of precision.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Fair bit (top bit of the next word).
  int next_bit() { return static_cast<int>(next_u64() >> 63); }

  /// Uniform integer in [0, bound), bias-free via rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  /// Standard normal via Box-Muller; consumes two doubles per call.
  double next_gaussian() {
    const double u1 = 1.0 - next_double();  // (0, 1], keeps log finite
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4];
};

}  // namespace qinfo

#endif  // QINFO_RNG_HPP
