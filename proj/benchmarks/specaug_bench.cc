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

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "specaug/augment.h"
#include "specaug/featext.h"
#include "specaug/rng.h"
#include "specaug/stats.h"
#include "specaug/synth.h"
#include "specaug/verify.h"

namespace specaug {
namespace {

void BM_Fft(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 gen(1);
  std::normal_distribution<double> dist;
  std::vector<std::complex<double>> input(n);
  for (auto& v : input) v = dist(gen);
  for (auto _ : state) {
    auto data = input;
    Fft(data);
    benchmark::DoNotOptimize(data.data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Fft)->RangeMultiplier(4)->Range(64, 4096);

void BM_ExtractOneSecond(benchmark::State& state) {
  const PcmSignal signal = SynthesizeUtterance(3, 1.0, 16000);
  const DspConfig cfg = state.range(0) == 0 ? LibriSpeechLikeDsp() : IwsltLikeDsp();
  for (auto _ : state) {
    benchmark::DoNotOptimize(Extract(signal, cfg));
  }
  state.SetLabel(state.range(0) == 0 ? "librispeech-like" : "iwslt-like");
}
BENCHMARK(BM_ExtractOneSecond)->Arg(0)->Arg(1);

void BM_AugmentUtterance(benchmark::State& state) {
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  std::vector<double> data(1000 * 80);
  for (double& v : data) v = dist(gen);
  const FeatureMatrix features(1000, 80, data, 10.0, FeatureKind::kMfcc);
  const AugmentPolicy policy = PolicyPreset("ld-like");
  SplitMix64 rng(3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Augment(features, policy, rng));
  }
}
BENCHMARK(BM_AugmentUtterance);

void BM_SampleMasks(benchmark::State& state) {
  AxisMaskSampler sampler(40, 2, 1000, Axis::kTime);
  SplitMix64 rng(4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sampler.Sample(rng).data());
  }
}
BENCHMARK(BM_SampleMasks);

void BM_MonteCarloRow(benchmark::State& state) {
  const MonteCarloOptions options{static_cast<std::uint64_t>(state.range(0)), 1};
  for (auto _ : state) {
    SplitMix64 rng(5);
    benchmark::DoNotOptimize(MonteCarloMaskedMean(6, 2, 12, rng, options));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarloRow)->Arg(100'000)->Unit(benchmark::kMillisecond);

void BM_AccumulateStats(benchmark::State& state) {
  std::mt19937_64 gen(6);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  std::vector<FeatureMatrix> corpus;
  for (int u = 0; u < 10; ++u) {
    std::vector<double> data(1000 * 40);
    for (double& v : data) v = dist(gen);
    corpus.emplace_back(1000, 40, std::move(data), 10.0, FeatureKind::kLogMel);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(AccumulateStats(corpus));
  }
  state.SetItemsProcessed(state.iterations() * 10'000);
}
BENCHMARK(BM_AccumulateStats);

}  // namespace
}  // namespace specaug

BENCHMARK_MAIN();
