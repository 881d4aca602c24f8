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

#include "specaug/stats.h"

#include <cmath>
#include <string>

#include "specaug/error.h"

namespace specaug {

StatsAccumulator::StatsAccumulator(std::size_t num_channels)
    : mean_(num_channels, 0.0), m2_(num_channels, 0.0) {}

void StatsAccumulator::AddFrame(std::span<const double> frame) {
  if (count_ == 0 && mean_.empty()) {
    mean_.assign(frame.size(), 0.0);
    m2_.assign(frame.size(), 0.0);
  }
  if (frame.size() != mean_.size()) {
    throw ContractError("frame has " + std::to_string(frame.size()) +
                        " channels, accumulator has " +
                        std::to_string(mean_.size()));
  }
  ++count_;
  const double n = static_cast<double>(count_);
  for (std::size_t c = 0; c < frame.size(); ++c) {
    const double delta = frame[c] - mean_[c];
    mean_[c] += delta / n;
    m2_[c] += delta * (frame[c] - mean_[c]);
  }
}

void StatsAccumulator::Add(const FeatureMatrix& features) {
  for (std::size_t t = 0; t < features.num_frames(); ++t) {
    AddFrame(features.frame(t));
  }
}

void StatsAccumulator::Merge(const StatsAccumulator& other) {
  if (!mean_.empty() && !other.mean_.empty() &&
      other.mean_.size() != mean_.size()) {
    throw ContractError("cannot merge accumulators with different channel counts");
  }
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(count_);
  const double nb = static_cast<double>(other.count_);
  const double n = na + nb;
  for (std::size_t c = 0; c < mean_.size(); ++c) {
    const double delta = other.mean_[c] - mean_[c];
    mean_[c] += delta * nb / n;
    m2_[c] += other.m2_[c] + delta * delta * na * nb / n;
  }
  count_ += other.count_;
}

CorpusStats StatsAccumulator::Finish() const {
  if (count_ == 0) throw ContractError("no frames accumulated");
  CorpusStats stats;
  stats.mean = mean_;
  stats.variance.resize(m2_.size());
  for (std::size_t c = 0; c < m2_.size(); ++c) {
    stats.variance[c] = std::max(0.0, m2_[c] / static_cast<double>(count_));
  }
  stats.count = count_;
  return stats;
}

CorpusStats AccumulateStats(std::span<const FeatureMatrix> corpus) {
  if (corpus.empty()) throw ContractError("cannot accumulate stats of an empty corpus");
  StatsAccumulator acc(corpus.front().num_channels());
  for (const auto& features : corpus) acc.Add(features);
  return acc.Finish();
}

FeatureMatrix Standardize(const FeatureMatrix& features,
                          const CorpusStats& stats) {
  if (stats.count < 1) throw ContractError("stats have zero frames");
  if (stats.mean.size() != features.num_channels() ||
      stats.variance.size() != features.num_channels()) {
    throw ContractError("stats have " + std::to_string(stats.mean.size()) +
                        " channels, features have " +
                        std::to_string(features.num_channels()));
  }
  std::vector<double> inv_std(stats.variance.size());
  for (std::size_t c = 0; c < inv_std.size(); ++c) {
    inv_std[c] = 1.0 / std::sqrt(std::max(stats.variance[c], kVarianceFloor));
  }
  FeatureMatrix out = features;
  for (std::size_t t = 0; t < out.num_frames(); ++t) {
    auto row = out.frame(t);
    for (std::size_t c = 0; c < row.size(); ++c) {
      row[c] = (row[c] - stats.mean[c]) * inv_std[c];
    }
  }
  out.set_kind(StandardizedKind(features.kind()));
  return out;
}

}  // namespace specaug
