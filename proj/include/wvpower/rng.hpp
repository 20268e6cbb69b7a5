// Copyright 2026 The wvpower Authors
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

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace wvpower {

/// Seed of a reproducible random stream.
///
/// A (seed, stream) pair names one independent sequence. Parallel Monte Carlo
/// work derives one stream per chunk of sample indices, so results do not
/// depend on how chunks are scheduled onto threads.
struct RandomSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  constexpr RandomSeed with_stream(std::uint64_t s) const noexcept { return {seed, s}; }
  friend constexpr bool operator==(const RandomSeed&, const RandomSeed&) = default;
};

// SplitMix64 finalizer (Steele, Lea & Flood).
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t state) noexcept : state_(state) {}

  constexpr std::uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    return splitmix64_mix(state_);
  }

 private:
  std::uint64_t state_;
};

/// xoshiro256** 1.0 (Blackman & Vigna), seeded through SplitMix64.
///
/// This is the only generator used by the library. Output is fully specified
/// by the algorithm, so sequences are identical across platforms and compilers.
/// Satisfies UniformRandomBitGenerator.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr Xoshiro256(RandomSeed seed) noexcept : s_{} {
    SplitMix64 sm(splitmix64_mix(seed.seed) ^ splitmix64_mix(seed.stream ^ 0xD1B54A32D192ED03ULL));
    for (auto& word : s_) word = sm.next();
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept {
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

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> s_;
};

/// Uniform double on (0, 1]: 53 random bits, shifted away from zero.
template <class Engine>
double uniform_open_closed(Engine& engine) {
  return static_cast<double>((engine() >> 11) + 1) * 0x1.0p-53;
}

/// Uniform double on [0, 1).
template <class Engine>
double uniform_closed_open(Engine& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

/// Unit exponential by inversion, -ln U with U in (0, 1].
template <class Engine>
double unit_exponential(Engine& engine) {
  return 0.0 - std::log(uniform_open_closed(engine));  // +0.0 at U = 1
}

}  // namespace wvpower
