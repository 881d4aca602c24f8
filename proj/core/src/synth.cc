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

#include "specaug/synth.h"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "specaug/error.h"
#include "specaug/rng.h"

namespace specaug {

PcmSignal SynthesizeUtterance(std::uint64_t seed, double seconds, int rate) {
  if (!(seconds > 0.0) || rate <= 0) {
    throw ConfigError("synthetic utterance needs seconds > 0 and rate > 0");
  }
  SplitMix64 rng(seed);
  const double f0 = 100.0 + 150.0 * UniformOpenUnit(rng);
  const double glide = 0.5 + UniformOpenUnit(rng);
  PcmSignal signal;
  signal.sample_rate = rate;
  const auto n = static_cast<std::size_t>(seconds * rate);
  signal.samples.resize(n);
  double phase = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / rate;
    const double f = f0 * (1.0 + 0.3 * std::sin(2.0 * std::numbers::pi * glide * t));
    phase += 2.0 * std::numbers::pi * f / rate;
    double s = 0.0;
    for (int h = 1; h <= 8; ++h) s += std::sin(h * phase) / h;
    const double envelope = 0.5 + 0.5 * std::sin(2.0 * std::numbers::pi * 3.0 * t);
    signal.samples[i] = 0.15 * envelope * s + 0.01 * StandardNormal(rng);
  }
  return signal;
}

Manifest WriteSyntheticCorpus(const std::filesystem::path& dir, int count,
                              double seconds, int rate, std::uint64_t seed) {
  if (count < 1) throw ConfigError("synthetic corpus needs count >= 1");
  std::filesystem::create_directories(dir);
  Manifest manifest;
  for (int i = 0; i < count; ++i) {
    char id[32];
    std::snprintf(id, sizeof(id), "utt%04d", i);
    const std::string file = std::string(id) + ".wav";
    WriteWav(SynthesizeUtterance(DeriveUtteranceSeed(seed, id), seconds, rate),
             dir / file);
    manifest.records.push_back({id, file, std::nullopt});
  }
  WriteManifest(manifest, dir / "manifest.tsv");
  return manifest;
}

}  // namespace specaug
