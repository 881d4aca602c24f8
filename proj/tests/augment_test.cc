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

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "specaug/augment.h"
#include "specaug/error.h"
#include "specaug/rng.h"
#include "specaug/verify.h"
#include "test_util.h"

namespace specaug {
namespace {

using ::specaug::testing::BitIdentical;
using ::specaug::testing::Constant;

// 0.999 quantiles of the chi-square distribution, df = 1..10 (from scipy).
constexpr std::array<double, 10> kChiSquare999 = {
    10.828, 13.816, 16.266, 18.467, 20.515,
    22.458, 24.322, 26.124, 27.877, 29.588};

TEST(SplitMix64Test, KnownOutputs) {
  // Values from an independent evaluation of the recurrence.
  SplitMix64 rng(0);
  EXPECT_EQ(rng.Next(), 0xE220A8397B1DCDAFull);
  EXPECT_EQ(rng.Next(), 0x6E789E6AA1B965F4ull);
  EXPECT_EQ(rng.Next(), 0x06C45D188009454Full);
  EXPECT_EQ(SplitMix64(1).Next(), 0x910A2DEC89025CC1ull);
}

TEST(SplitMix64Test, SameStateSameOutput) {
  const SplitMix64 base(0xdeadbeef);
  SplitMix64 a = base;
  SplitMix64 b = base;
  EXPECT_EQ(a.Next(), b.Next());
  EXPECT_EQ(a, b);
  EXPECT_NE(SplitMix64(0).Next(), SplitMix64(1).Next());
}

TEST(UniformIntTest, SingletonRangeAndDomain) {
  SplitMix64 rng(3);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(UniformInt(rng, 1), 0u);
  EXPECT_THROW(UniformInt(rng, 0), DomainError);
}

TEST(UniformIntTest, PowerOfTwoNeedsNoRejection) {
  SplitMix64 rng(77);
  for (std::uint64_t n : {1ull, 2ull, 8ull, 1ull << 40, 1ull << 63}) {
    SplitMix64 raw = rng;
    const std::uint64_t expected = raw.Next() % n;
    EXPECT_EQ(UniformInt(rng, n), expected);
    EXPECT_EQ(rng, raw);  // exactly one step consumed
  }
}

TEST(UniformIntTest, RejectsTheBiasedTail) {
  // n = 2^63 + 1: 2^64 mod n = 2^63 - 1, so draws above 2^63 are rejected.
  const std::uint64_t n = (1ull << 63) + 1;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    SplitMix64 raw(seed);
    std::uint64_t u = raw.Next();
    while (u > (1ull << 63)) u = raw.Next();
    SplitMix64 rng(seed);
    EXPECT_EQ(UniformInt(rng, n), u % n);
    EXPECT_EQ(rng, raw);
  }
}

TEST(UniformIntTest, DieFrequencies) {
  SplitMix64 rng(2024);
  std::array<int, 6> counts{};
  for (int i = 0; i < 600000; ++i) ++counts[UniformInt(rng, 6)];
  for (int c : counts) EXPECT_NEAR(c, 100000, 1000);
}

TEST(PolicyTest, PresetTuples) {
  EXPECT_EQ(PolicyPreset("libri-best"), (AugmentPolicy{5, 1, 40, 2}));
  EXPECT_EQ(PolicyPreset("iwslt-best"), (AugmentPolicy{4, 1, 40, 2}));
  EXPECT_EQ(PolicyPreset("ld-like"), (AugmentPolicy{27, 2, 100, 2}));
  EXPECT_EQ(PolicyPreset("none"), (AugmentPolicy{0, 0, 0, 0}));
  EXPECT_THROW(PolicyPreset("lb"), ConfigError);
}

TEST(PolicyTest, ParseTuple) {
  EXPECT_EQ(ParsePolicy("5,1,40,2"), PolicyPreset("libri-best"));
  EXPECT_EQ(ParsePolicy(" ld-like "), PolicyPreset("ld-like"));
  EXPECT_EQ(FormatPolicy(ParsePolicy("27,2,100,2")), "27,2,100,2");
  EXPECT_THROW(ParsePolicy("1,2,3"), ConfigError);
  EXPECT_THROW(ParsePolicy("1,2,x,4"), ConfigError);
  EXPECT_THROW(ParsePolicy("1,-2,3,4"), ConfigError);
}

TEST(SampleAxisMasksTest, ZeroWidthMasksAreEmpty) {
  SplitMix64 rng(1);
  const auto draw = SampleAxisMasks(0, 7, 50, Axis::kTime, rng);
  ASSERT_EQ(draw.masks.size(), 7u);
  for (const auto& m : draw.masks) EXPECT_EQ(m.length, 0u);
}

TEST(SampleAxisMasksTest, CountCappedAtExtentGivesPermutation) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    SplitMix64 rng(seed);
    const auto draw = SampleAxisMasks(5, 9, 5, Axis::kFrequency, rng);
    EXPECT_TRUE(draw.capped());
    EXPECT_EQ(draw.requested, 9u);
    ASSERT_EQ(draw.masks.size(), 5u);
    std::vector<std::size_t> starts;
    for (const auto& m : draw.masks) {
      starts.push_back(m.start);
      EXPECT_LE(m.start + m.length, 5u);
      EXPECT_EQ(m.axis, Axis::kFrequency);
    }
    std::ranges::sort(starts);
    EXPECT_EQ(starts, (std::vector<std::size_t>{0, 1, 2, 3, 4}));
  }
}

TEST(SampleAxisMasksTest, FollowsDrawOrderWidthThenStart) {
  // Replays the documented draw order against a raw copy of the stream.
  SplitMix64 rng(99);
  SplitMix64 replay = rng;
  const auto draw = SampleAxisMasks(4, 3, 10, Axis::kTime, rng);
  std::set<std::uint64_t> used;
  for (const auto& m : draw.masks) {
    const std::uint64_t w = UniformInt(replay, 5);
    std::uint64_t s;
    do {
      s = UniformInt(replay, 10);
    } while (used.contains(s));
    used.insert(s);
    EXPECT_EQ(m.start, s);
    EXPECT_EQ(m.length, std::min<std::uint64_t>(w, 10 - s));
  }
  EXPECT_EQ(rng, replay);
}

TEST(SampleAxisMasksTest, MeanMaskedCountMatchesEnumeration) {
  // Exact value 90/50 = 1.8, from the full enumeration.
  SplitMix64 rng(4242);
  AxisMaskSampler sampler(4, 1, 10, Axis::kTime);
  const int trials = 1'000'000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < trials; ++i) {
    const double len = static_cast<double>(sampler.Sample(rng)[0].length);
    sum += len;
    sum_sq += len * len;
  }
  const double mean = sum / trials;
  const double stderr_ = std::sqrt((sum_sq / trials - mean * mean) / trials);
  EXPECT_NEAR(mean, 1.8, 3 * stderr_);
}

TEST(SampleAxisMasksTest, WidthDistributionIsUniform) {
  // Only masks that cannot reach the axis end expose the raw width.
  for (int max_width : {1, 4, 6, 10}) {
    const std::size_t extent = 100;
    SplitMix64 rng(static_cast<std::uint64_t>(max_width) * 1000 + 1);
    AxisMaskSampler sampler(max_width, 1, extent, Axis::kTime);
    std::vector<double> counts(static_cast<std::size_t>(max_width) + 1, 0.0);
    double n = 0;
    while (n < 1'000'000) {
      const auto& m = sampler.Sample(rng)[0];
      if (m.start + static_cast<std::size_t>(max_width) > extent) continue;
      counts[m.length] += 1;
      n += 1;
    }
    const double expected = n / counts.size();
    double chi2 = 0.0;
    for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
    EXPECT_LT(chi2, kChiSquare999[static_cast<std::size_t>(max_width) - 1])
        << "max_width " << max_width;
  }
}

TEST(SamplePolicyMasksTest, CountsPerPreset) {
  SplitMix64 rng(5);
  EXPECT_TRUE(SamplePolicyMasks(PolicyPreset("none"), 100, 40, rng).masks.empty());
  for (const char* preset : {"libri-best", "iwslt-best"}) {
    const auto draw = SamplePolicyMasks(PolicyPreset(preset), 300, 40, rng);
    ASSERT_EQ(draw.masks.size(), 3u);
    EXPECT_EQ(draw.masks[0].axis, Axis::kTime);
    EXPECT_EQ(draw.masks[1].axis, Axis::kTime);
    EXPECT_EQ(draw.masks[2].axis, Axis::kFrequency);
    EXPECT_TRUE(draw.warnings.empty());
  }
  const auto tiny = SamplePolicyMasks(PolicyPreset("ld-like"), 1, 1, rng);
  EXPECT_EQ(tiny.masks.size(), 2u);
  EXPECT_EQ(tiny.warnings.size(), 2u);
}

TEST(SamplePolicyMasksTest, TimeAxisIsSampledFirstOnOneStream) {
  const AugmentPolicy policy{3, 2, 7, 2};
  SplitMix64 rng(123);
  SplitMix64 replay = rng;
  const auto draw = SamplePolicyMasks(policy, 50, 20, rng);
  const auto time = SampleAxisMasks(7, 2, 50, Axis::kTime, replay);
  const auto freq = SampleAxisMasks(3, 2, 20, Axis::kFrequency, replay);
  std::vector<MaskSpec> expected = time.masks;
  expected.insert(expected.end(), freq.masks.begin(), freq.masks.end());
  EXPECT_EQ(draw.masks, expected);
  EXPECT_EQ(rng, replay);
}

TEST(ApplyMasksTest, EmptyListIsIdentity) {
  std::mt19937_64 gen(1);
  const FeatureMatrix in = testing::RandomMatrix(12, 7, gen);
  EXPECT_TRUE(BitIdentical(ApplyMasks(in, {}), in));
}

TEST(ApplyMasksTest, SingleTimeMask) {
  const FeatureMatrix in = Constant(10, 4, 1.0);
  const std::vector<MaskSpec> masks = {{Axis::kTime, 2, 3}};
  const FeatureMatrix out = ApplyMasks(in, masks);
  double ones = 0;
  for (std::size_t t = 0; t < 10; ++t) {
    for (std::size_t c = 0; c < 4; ++c) {
      EXPECT_EQ(out(t, c), (t >= 2 && t < 5) ? 0.0 : 1.0);
      ones += out(t, c);
    }
  }
  EXPECT_EQ(ones, 28);
  EXPECT_EQ(in(3, 0), 1.0);  // input untouched
}

TEST(ApplyMasksTest, OverlappingMasksUnion) {
  const std::vector<MaskSpec> masks = {{Axis::kTime, 0, 5}, {Axis::kTime, 3, 5}};
  const FeatureMatrix out = ApplyMasks(Constant(10, 4, 1.0), masks);
  double ones = 0;
  for (double v : out.data()) ones += v;
  EXPECT_EQ(ones, 8);
  for (std::size_t t = 0; t < 8; ++t) EXPECT_EQ(out(t, 3), 0.0);
}

TEST(ApplyMasksTest, FrequencyMaskAndBounds) {
  const std::vector<MaskSpec> freq = {{Axis::kFrequency, 1, 2}};
  const FeatureMatrix out = ApplyMasks(Constant(3, 4, 2.0), freq);
  for (std::size_t t = 0; t < 3; ++t) {
    EXPECT_EQ(out(t, 0), 2.0);
    EXPECT_EQ(out(t, 1), 0.0);
    EXPECT_EQ(out(t, 2), 0.0);
    EXPECT_EQ(out(t, 3), 2.0);
  }
  const std::vector<MaskSpec> too_long = {{Axis::kFrequency, 3, 2}};
  EXPECT_THROW(ApplyMasks(Constant(3, 4, 2.0), too_long), ContractError);
  const std::vector<MaskSpec> past_end = {{Axis::kTime, 4, 0}};
  EXPECT_THROW(ApplyMasks(Constant(3, 4, 2.0), past_end), ContractError);
  const std::vector<MaskSpec> at_end = {{Axis::kTime, 3, 0}};
  EXPECT_NO_THROW(ApplyMasks(Constant(3, 4, 2.0), at_end));
}

TEST(AugmentTest, DeterministicGivenSeed) {
  std::mt19937_64 gen(2);
  const FeatureMatrix in = testing::RandomMatrix(200, 80, gen);
  SplitMix64 a(31), b(31);
  const auto ra = Augment(in, PolicyPreset("ld-like"), a);
  const auto rb = Augment(in, PolicyPreset("ld-like"), b);
  EXPECT_EQ(ra.draw.masks, rb.draw.masks);
  EXPECT_TRUE(BitIdentical(ra.features, rb.features));
  int time = 0, freq = 0;
  for (const auto& m : ra.draw.masks) ++(m.axis == Axis::kTime ? time : freq);
  EXPECT_EQ(time, 2);
  EXPECT_EQ(freq, 2);
}

TEST(AugmentTest, NonePolicyIsIdentity) {
  std::mt19937_64 gen(9);
  SplitMix64 rng(0);
  for (int i = 0; i < 20; ++i) {
    const FeatureMatrix in = testing::RandomMatrix(1 + i, 1 + 2 * i, gen);
    const SplitMix64 before = rng;
    const auto out = Augment(in, AugmentPolicy{}, rng);
    EXPECT_TRUE(BitIdentical(out.features, in));
    EXPECT_TRUE(out.draw.masks.empty());
    EXPECT_EQ(rng, before);  // nothing drawn
  }
}

TEST(AugmentTest, RandomizedInvariants) {
  std::mt19937_64 gen(77);
  std::uniform_int_distribution<int> dim(1, 60), width(0, 30), count(0, 6);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t frames = dim(gen), channels = dim(gen);
    const FeatureMatrix in = testing::RandomMatrix(frames, channels, gen, 0.5, 2.0);
    const AugmentPolicy policy{width(gen), count(gen), width(gen), count(gen)};
    SplitMix64 rng(gen());
    const auto out = Augment(in, policy, rng);

    std::vector<bool> time_masked(frames), freq_masked(channels);
    std::set<std::size_t> time_starts, freq_starts;
    std::size_t n_time = 0, n_freq = 0;
    for (const auto& m : out.draw.masks) {
      const bool is_time = m.axis == Axis::kTime;
      const std::size_t extent = is_time ? frames : channels;
      ASSERT_LE(m.start + m.length, extent);
      auto& starts = is_time ? time_starts : freq_starts;
      EXPECT_TRUE(starts.insert(m.start).second) << "repeated start";
      for (std::size_t p = m.start; p < m.start + m.length; ++p) {
        (is_time ? time_masked : freq_masked)[p] = true;
      }
      ++(is_time ? n_time : n_freq);
    }
    EXPECT_EQ(n_time, std::min<std::size_t>(policy.time_count, frames));
    EXPECT_EQ(n_freq, std::min<std::size_t>(policy.freq_count, channels));
    for (std::size_t t = 0; t < frames; ++t) {
      for (std::size_t c = 0; c < channels; ++c) {
        const bool masked = time_masked[t] || freq_masked[c];
        if (masked) {
          ASSERT_EQ(out.features(t, c), 0.0);
        } else {
          ASSERT_EQ(out.features(t, c), in(t, c));
        }
      }
    }
  }
}

TEST(MaskSidecarTest, FormatAndParse) {
  const std::vector<MaskSpec> masks = {{Axis::kTime, 12, 30},
                                       {Axis::kFrequency, 3, 0}};
  const std::string text = FormatMaskLines(masks);
  EXPECT_EQ(text, "time\t12\t30\nfrequency\t3\t0\n");
  EXPECT_EQ(ParseMaskLines(text), masks);
  EXPECT_TRUE(ParseMaskLines("").empty());
  EXPECT_THROW(ParseMaskLines("time\t1\n"), FormatError);
  EXPECT_THROW(ParseMaskLines("channel\t1\t2\n"), FormatError);
  EXPECT_THROW(ParseMaskLines("time\t-1\t2\n"), FormatError);
}

}  // namespace
}  // namespace specaug
