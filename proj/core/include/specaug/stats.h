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

#ifndef SPECAUG_STATS_H_
#define SPECAUG_STATS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "specaug/feature_matrix.h"

namespace specaug {

// Per-channel population mean and variance over a corpus of frames.
struct CorpusStats {
  std::vector<double> mean;
  std::vector<double> variance;
  std::uint64_t count = 0;  // frames

  std::size_t num_channels() const { return mean.size(); }
};

// Variance below this is treated as this in Standardize.
inline constexpr double kVarianceFloor = 1e-8;

// Single-pass Welford accumulator; partial accumulators merge with Chan's
// pairwise update, so sharded accumulation is valid.
class StatsAccumulator {
 public:
  StatsAccumulator() = default;
  explicit StatsAccumulator(std::size_t num_channels);

  void AddFrame(std::span<const double> frame);
  void Add(const FeatureMatrix& features);
  void Merge(const StatsAccumulator& other);

  std::uint64_t count() const { return count_; }
  // Throws ContractError if no frame was added.
  CorpusStats Finish() const;

 private:
  std::uint64_t count_ = 0;
  std::vector<double> mean_;
  std::vector<double> m2_;
};

// Throws ContractError on an empty corpus or mismatched channel counts.
CorpusStats AccumulateStats(std::span<const FeatureMatrix> corpus);

// (x - mean) / sqrt(max(variance, kVarianceFloor)) per channel; kind becomes
// the standardized variant.
FeatureMatrix Standardize(const FeatureMatrix& features,
                          const CorpusStats& stats);

}  // namespace specaug

#endif  // SPECAUG_STATS_H_
