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

#ifndef SPECAUG_VERIFY_H_
#define SPECAUG_VERIFY_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "specaug/rng.h"

namespace specaug {

// Expected number of positions covered by one mask on an axis of the given
// extent: sum over w in {0..max_width}, s in {0..extent-1} of
// min(w, extent - s), divided by (max_width + 1) * extent.
double ExactMaskedMean(int max_width, std::size_t extent);

// Enumeration limit for ExactMaskedMeanMulti.
inline constexpr double kMaxEnumeration = 1e7;

// Expected size of the union of min(count, extent) masks, by enumerating
// every width tuple and every ordered tuple of distinct starts with equal
// weight. Rejection-resampling duplicate starts yields exactly that law.
// Throws DomainError if (max_width+1)^k * extent!/(extent-k)! exceeds
// kMaxEnumeration.
double ExactMaskedMeanMulti(int max_width, int count, std::size_t extent);

struct MaskFractionReport {
  std::optional<double> exact_mean_masked;  // when enumeration is feasible
  double mc_mean = 0.0;
  double mc_stderr = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t distinctness_violations = 0;
};

struct MonteCarloOptions {
  std::uint64_t trials = 1'000'000;
  int workers = 1;
};

// Number of independent RNG shards the trials are split across. Fixed, so
// the result does not depend on the worker count.
inline constexpr int kMonteCarloShards = 16;

// Runs the axis sampler `trials` times and measures the union of masked
// positions. Shard i draws from SplitMix64(ShardSeed(base, i)) where base is
// one draw from rng; shard moments are pooled in shard order.
MaskFractionReport MonteCarloMaskedMean(int max_width, int count,
                                        std::size_t extent, SplitMix64& rng,
                                        const MonteCarloOptions& options = {});

std::uint64_t ShardSeed(std::uint64_t base_seed, std::uint64_t shard_index);

struct VerifyRow {
  std::size_t extent = 0;
  int max_width = 0;
  int count = 0;
  double exact = 0.0;
  double mc_mean = 0.0;
  double mc_stderr = 0.0;
  int attempts = 0;  // 1, or 2 after a rerun
  bool pass = false;
};

struct VerifyGrid {
  std::size_t max_extent = 12;
  int max_width = 6;
  int max_count = 2;
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 0;
  double sigmas = 3.0;
  int workers = 1;
};

// Compares Monte Carlo against the exact oracle for every extent in
// [1, max_extent], width in [0, max_width], count in [1, max_count]. A row
// that misses by more than `sigmas` standard errors is rerun once with a
// fresh stream; it fails only if both runs miss.
std::vector<VerifyRow> RunVerifyGrid(const VerifyGrid& grid);

bool WithinSigmas(double estimate, double stderr_, double exact, double sigmas);

// Tab-separated table with header
// extent, max_width, count, exact, mc_mean, stderr, result.
std::string FormatVerifyTable(const std::vector<VerifyRow>& rows);

}  // namespace specaug

#endif  // SPECAUG_VERIFY_H_
