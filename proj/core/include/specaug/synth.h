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

// Deterministic synthetic speech-like corpora for demos and tests.

#ifndef SPECAUG_SYNTH_H_
#define SPECAUG_SYNTH_H_

#include <cstdint>
#include <filesystem>

#include "specaug/manifest.h"
#include "specaug/wav.h"

namespace specaug {

// A gliding harmonic tone with an amplitude envelope plus a little noise.
PcmSignal SynthesizeUtterance(std::uint64_t seed, double seconds, int rate);

// Writes utt0000.wav ... and manifest.tsv into `dir`. Each file is seeded by
// DeriveUtteranceSeed(seed, id). Returns the manifest.
Manifest WriteSyntheticCorpus(const std::filesystem::path& dir, int count,
                              double seconds, int rate, std::uint64_t seed);

}  // namespace specaug

#endif  // SPECAUG_SYNTH_H_
