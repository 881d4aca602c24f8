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

#ifndef SPECAUG_WAV_H_
#define SPECAUG_WAV_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace specaug {

// Mono PCM audio with samples scaled to [-1, 1].
struct PcmSignal {
  std::vector<double> samples;
  int sample_rate = 0;
};

// Throws ContractError unless the signal is non-empty, finite and has a
// positive rate.
void ValidateSignal(const PcmSignal& signal);

// Decodes a RIFF/WAVE file holding 16-bit mono PCM. Samples are divided by
// 32768. Throws FormatError for malformed containers and UnsupportedError
// (naming the field) for other encodings.
PcmSignal ReadWav(const std::filesystem::path& path);
PcmSignal DecodeWav(std::span<const std::uint8_t> bytes);

// Inverse of ReadWav: samples are scaled by 32768, rounded and clipped to
// int16. Emits a canonical 44-byte header.
void WriteWav(const PcmSignal& signal, const std::filesystem::path& path);
std::vector<std::uint8_t> EncodeWav(const PcmSignal& signal);

}  // namespace specaug

#endif  // SPECAUG_WAV_H_
