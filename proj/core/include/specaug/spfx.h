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

#ifndef SPECAUG_SPFX_H_
#define SPECAUG_SPFX_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "specaug/feature_matrix.h"
#include "specaug/stats.h"

namespace specaug {

// SPFX layout, all integers little-endian:
//
//   offset  size  field
//        0     4  magic "SPFX"
//        4     2  version (u16) = 1
//        6     4  num_channels (u32)
//       10     4  num_frames (u32)
//       14     4  frame_shift_ms (float32)
//       18     1  kind (0 log_mel, 1 mfcc, 2 std log_mel, 3 std mfcc)
//       19     1  reserved, zero
//       20   4TV  payload, float32, time-major
//
// Statistics files share the header with kind = 255, num_frames = 2 and a
// float64 payload (mean row, then variance row) followed by the u64 frame
// count.
inline constexpr std::size_t kSpfxHeaderSize = 20;
inline constexpr std::uint16_t kSpfxVersion = 1;
inline constexpr std::uint8_t kSpfxStatsKind = 255;

std::vector<std::uint8_t> EncodeSpfx(const FeatureMatrix& features);
FeatureMatrix DecodeSpfx(std::span<const std::uint8_t> bytes);

void WriteSpfx(const FeatureMatrix& features, const std::filesystem::path& path);
FeatureMatrix ReadSpfx(const std::filesystem::path& path);

std::vector<std::uint8_t> EncodeStats(const CorpusStats& stats);
CorpusStats DecodeStats(std::span<const std::uint8_t> bytes);
void WriteStats(const CorpusStats& stats, const std::filesystem::path& path);
CorpusStats ReadStats(const std::filesystem::path& path);

// Whole-file helpers shared by the writers.
std::vector<std::uint8_t> ReadFileBytes(const std::filesystem::path& path);
void WriteFileBytes(const std::filesystem::path& path,
                    std::span<const std::uint8_t> bytes);

}  // namespace specaug

#endif  // SPECAUG_SPFX_H_
