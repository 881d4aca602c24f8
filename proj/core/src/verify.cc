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

#include "specaug/verify.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <thread>

#include "specaug/augment.h"
#include "specaug/error.h"

namespace specaug {
namespace {

struct ShardMoments {
  std::uint64_t trials = 0;
  std::uint64_t sum = 0;
  std::uint64_t sum_sq = 0;
  std::uint64_t violations = 0;
};

ShardMoments RunShard(int max_width, int count, std::size_t extent,
                      std::uint64_t seed, std::uint64_t trials) {
  ShardMoments m;
  m.trials = trials;
  AxisMaskSampler sampler(max_width, count, extent, Axis::kTime);
  SplitMix64 rng(seed);
  // Stamp arrays avoid clearing per trial.
  std::vector<std::uint64_t> covered(extent, 0);
  std::vector<std::uint64_t> started(extent, 0);
  for (std::uint64_t trial = 1; trial <= trials; ++trial) {
    const auto& masks = sampler.Sample(rng);
    std::uint64_t masked = 0;
    for (const auto& mask : masks) {
      if (started[mask.start] == trial) ++m.violations;
      started[mask.start] = trial;
      for (std::size_t p = mask.start; p < mask.start + mask.length; ++p) {
        if (covered[p] != trial) {
          covered[p] = trial;
          ++masked;
        }
      }
    }
    m.sum += masked;
    m.sum_sq += masked * masked;
  }
  return m;
}

double EnumerationSize(int max_width, std::size_t k, std::size_t extent) {
  double size = 1.0;
  for (std::size_t i = 0; i < k; ++i) {
    size *= static_cast<double>(max_width + 1) * static_cast<double>(extent - i);
  }
  return size;
}

}  // namespace

double ExactMaskedMean(int max_width, std::size_t extent) {
  if (extent == 0) throw DomainError("extent must be >= 1");
  if (max_width < 0) throw DomainError("max_width must be >= 0");
  std::uint64_t total = 0;
  for (int w = 0; w <= max_width; ++w) {
    for (std::size_t s = 0; s < extent; ++s) {
      total += std::min(static_cast<std::size_t>(w), extent - s);
    }
  }
  return static_cast<double>(total) /
         (static_cast<double>(max_width + 1) * static_cast<double>(extent));
}

double ExactMaskedMeanMulti(int max_width, int count, std::size_t extent) {
  if (extent == 0) throw DomainError("extent must be >= 1");
  if (max_width < 0 || count < 0) {
    throw DomainError("max_width and count must be >= 0");
  }
  const std::size_t k = std::min(static_cast<std::size_t>(count), extent);
  if (k == 0) return 0.0;
  const double size = EnumerationSize(max_width, k, extent);
  if (size > kMaxEnumeration) {
    std::ostringstream msg;
    msg << "enumeration of " << size << " cases exceeds the bound of "
        << kMaxEnumeration << " ((max_width+1)^count * extent!/(extent-count)!)";
    throw DomainError(msg.str());
  }

  std::vector<int> coverage(extent, 0);
  std::vector<bool> used(extent, false);
  std::size_t union_size = 0;
  std::uint64_t total = 0;
  std::uint64_t cases = 0;

  std::function<void(std::size_t)> recurse = [&](std::size_t depth) {
    if (depth == k) {
      total += union_size;
      ++cases;
      return;
    }
    for (int w = 0; w <= max_width; ++w) {
      for (std::size_t s = 0; s < extent; ++s) {
        if (used[s]) continue;
        used[s] = true;
        const std::size_t end = s + std::min(static_cast<std::size_t>(w), extent - s);
        for (std::size_t p = s; p < end; ++p) {
          if (coverage[p]++ == 0) ++union_size;
        }
        recurse(depth + 1);
        for (std::size_t p = s; p < end; ++p) {
          if (--coverage[p] == 0) --union_size;
        }
        used[s] = false;
      }
    }
  };
  recurse(0);
  return static_cast<double>(total) / static_cast<double>(cases);
}

std::uint64_t ShardSeed(std::uint64_t base_seed, std::uint64_t shard_index) {
  return SplitMix64Mix(base_seed + (shard_index + 1) * SplitMix64::kGamma);
}

MaskFractionReport MonteCarloMaskedMean(int max_width, int count,
                                        std::size_t extent, SplitMix64& rng,
                                        const MonteCarloOptions& options) {
  if (options.trials < 100) {
    throw DomainError("Monte Carlo needs at least 100 trials, got " +
                      std::to_string(options.trials));
  }
  if (extent == 0) throw DomainError("extent must be >= 1");
  // Validates the parameters before any thread starts.
  AxisMaskSampler probe(max_width, count, extent, Axis::kTime);

  const std::uint64_t base = rng.Next();
  std::vector<ShardMoments> shards(kMonteCarloShards);
  auto run = [&](int shard) {
    const std::uint64_t n = options.trials / kMonteCarloShards +
                            (static_cast<std::uint64_t>(shard) <
                                     options.trials % kMonteCarloShards
                                 ? 1
                                 : 0);
    shards[shard] = RunShard(max_width, count, extent,
                             ShardSeed(base, static_cast<std::uint64_t>(shard)), n);
  };
  const int workers = std::clamp(options.workers, 1, kMonteCarloShards);
  if (workers == 1) {
    for (int s = 0; s < kMonteCarloShards; ++s) run(s);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int s = w; s < kMonteCarloShards; s += workers) run(s);
      });
    }
  }

  // Integer moments pool exactly, independent of shard scheduling.
  ShardMoments total;
  for (const auto& s : shards) {
    total.trials += s.trials;
    total.sum += s.sum;
    total.sum_sq += s.sum_sq;
    total.violations += s.violations;
  }
  MaskFractionReport report;
  report.trials = total.trials;
  report.distinctness_violations = total.violations;
  const double n = static_cast<double>(total.trials);
  report.mc_mean = static_cast<double>(total.sum) / n;
  const double ss = static_cast<double>(total.sum_sq) -
                    static_cast<double>(total.sum) * report.mc_mean;
  const double sample_var = std::max(0.0, ss / (n - 1.0));
  report.mc_stderr = std::sqrt(sample_var / n);
  const std::size_t k = std::min(static_cast<std::size_t>(count), extent);
  if (k <= 1) {
    report.exact_mean_masked = k == 0 ? 0.0 : ExactMaskedMean(max_width, extent);
  } else if (EnumerationSize(max_width, k, extent) <= kMaxEnumeration) {
    report.exact_mean_masked = ExactMaskedMeanMulti(max_width, count, extent);
  }
  return report;
}

bool WithinSigmas(double estimate, double stderr_, double exact, double sigmas) {
  // The absolute slack only absorbs rounding when the variance is zero.
  return std::abs(estimate - exact) <= sigmas * stderr_ + 1e-12;
}

std::vector<VerifyRow> RunVerifyGrid(const VerifyGrid& grid) {
  std::vector<VerifyRow> rows;
  SplitMix64 master(grid.seed);
  const MonteCarloOptions options{grid.trials, grid.workers};
  for (std::size_t extent = 1; extent <= grid.max_extent; ++extent) {
    for (int width = 0; width <= grid.max_width; ++width) {
      for (int count = 1; count <= grid.max_count; ++count) {
        VerifyRow row;
        row.extent = extent;
        row.max_width = width;
        row.count = count;
        row.exact = count == 1 ? ExactMaskedMean(width, extent)
                               : ExactMaskedMeanMulti(width, count, extent);
        for (row.attempts = 1; row.attempts <= 2; ++row.attempts) {
          const auto report =
              MonteCarloMaskedMean(width, count, extent, master, options);
          row.mc_mean = report.mc_mean;
          row.mc_stderr = report.mc_stderr;
          row.pass = report.distinctness_violations == 0 &&
                     WithinSigmas(report.mc_mean, report.mc_stderr, row.exact,
                                  grid.sigmas);
          if (row.pass) break;
        }
        row.attempts = std::min(row.attempts, 2);
        rows.push_back(row);
      }
    }
  }
  return rows;
}

std::string FormatVerifyTable(const std::vector<VerifyRow>& rows) {
  std::string out = "extent\tmax_width\tcount\texact\tmc_mean\tstderr\tresult\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%zu\t%d\t%d\t%.6f\t%.6f\t%.6f\t%s%s\n",
                  r.extent, r.max_width, r.count, r.exact, r.mc_mean,
                  r.mc_stderr, r.pass ? "PASS" : "FAIL",
                  r.attempts > 1 ? " (rerun)" : "");
    out += buf;
  }
  return out;
}

}  // namespace specaug
