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

#include "specaug/rng.h"

#include <cmath>
#include <limits>
#include <numbers>

#include "specaug/error.h"

namespace specaug {

std::uint64_t UniformInt(SplitMix64& rng, std::uint64_t n) {
  if (n == 0) throw DomainError("UniformInt: n must be >= 1");
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  // rem = 2^64 mod n; accepted draws are u < 2^64 - rem.
  const std::uint64_t rem = (kMax % n + 1) % n;
  std::uint64_t u = rng.Next();
  if (rem != 0) {
    while (u > kMax - rem) u = rng.Next();
  }
  return u % n;
}

double UniformOpenUnit(SplitMix64& rng) {
  constexpr std::uint64_t kGrid = 1ull << 53;
  return (static_cast<double>(UniformInt(rng, kGrid)) + 0.5) /
         static_cast<double>(kGrid);
}

double StandardNormal(SplitMix64& rng) {
  const double u1 = UniformOpenUnit(rng);
  const double u2 = UniformOpenUnit(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace specaug
