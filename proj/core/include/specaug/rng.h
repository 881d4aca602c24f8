// Copyright 2026 The specaug Authors.
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

#ifndef SPECAUG_RNG_H_
#define SPECAUG_RNG_H_

#include <cstdint>

namespace specaug {

// SplitMix64 output function applied to an already-advanced state.
constexpr std::uint64_t SplitMix64Mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// SplitMix64 generator. The whole state is one u64, so copying a generator
// forks an identical stream; all sampling functions take it by reference
// and advance it explicitly.
class SplitMix64 {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

  constexpr explicit SplitMix64(std::uint64_t state = 0) : state_(state) {}

  constexpr std::uint64_t Next() {
    state_ += kGamma;
    return SplitMix64Mix(state_);
  }

  constexpr std::uint64_t state() const { return state_; }

  friend constexpr bool operator==(const SplitMix64&, const SplitMix64&) = default;

 private:
  std::uint64_t state_;
};

// Unbiased integer in [0, n) by rejection: draws u until
// u < floor(2^64 / n) * n, then returns u mod n. Throws DomainError if n == 0.
std::uint64_t UniformInt(SplitMix64& rng, std::uint64_t n);

// Real in the open interval (0, 1) on a grid of 2^53 points.
double UniformOpenUnit(SplitMix64& rng);

// Standard normal via Box-Muller (cosine branch only).
double StandardNormal(SplitMix64& rng);

}  // namespace specaug

#endif  // SPECAUG_RNG_H_
