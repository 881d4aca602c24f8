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

#ifndef SPECAUG_AUGMENT_H_
#define SPECAUG_AUGMENT_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "specaug/feature_matrix.h"
#include "specaug/rng.h"

namespace specaug {

// Masking policy (F, m_F, R, m_R): maximum width and count of frequency
// masks, then of time masks. Widths are drawn uniformly from {0..max}.
struct AugmentPolicy {
  int freq_max_width = 0;  // F, channels
  int freq_count = 0;      // m_F
  int time_max_width = 0;  // R, frames
  int time_count = 0;      // m_R

  bool is_identity() const { return freq_count == 0 && time_count == 0; }
  friend bool operator==(const AugmentPolicy&, const AugmentPolicy&) = default;
};

// Throws ConfigError if any field is negative.
void ValidatePolicy(const AugmentPolicy& policy);

// Named presets: "none", "libri-best", "iwslt-best", "ld-like".
AugmentPolicy PolicyPreset(std::string_view name);
std::vector<std::string> PolicyPresetNames();
// Either a preset name or an "F,mF,R,mR" tuple.
AugmentPolicy ParsePolicy(std::string_view text);
std::string FormatPolicy(const AugmentPolicy& policy);

enum class Axis : std::uint8_t { kTime, kFrequency };

std::string_view AxisName(Axis axis);

// Zeroes positions [start, start + length) along one axis. length is the
// width after clamping at the axis end, so start + length <= extent.
struct MaskSpec {
  Axis axis = Axis::kTime;
  std::size_t start = 0;
  std::size_t length = 0;

  friend bool operator==(const MaskSpec&, const MaskSpec&) = default;
};

struct AxisMaskDraw {
  std::vector<MaskSpec> masks;
  std::size_t requested = 0;  // count asked for, before capping at extent

  bool capped() const { return masks.size() < requested; }
};

// Reusable sampler for one axis; keeps its scratch buffers between calls.
// SampleAxisMasks is a one-shot wrapper around it.
class AxisMaskSampler {
 public:
  AxisMaskSampler(int max_width, int count, std::size_t extent, Axis axis);

  std::size_t requested() const { return requested_; }
  std::size_t effective_count() const { return effective_; }

  // Result is valid until the next call.
  const std::vector<MaskSpec>& Sample(SplitMix64& rng);

 private:
  std::uint64_t width_choices_;
  std::size_t requested_;
  std::size_t effective_;
  std::size_t extent_;
  Axis axis_;
  std::vector<MaskSpec> masks_;
  std::vector<std::size_t> used_;
  std::vector<std::uint8_t> taken_;  // extent flags, reset via used_
};

// Draws min(count, extent) masks in order. For each: width w uniform on
// {0..max_width}, then start s uniform on {0..extent-1}, redrawn while s was
// already used in this call; length = min(w, extent - s).
AxisMaskDraw SampleAxisMasks(int max_width, int count, std::size_t extent,
                             Axis axis, SplitMix64& rng);

struct MaskDraw {
  std::vector<MaskSpec> masks;        // time masks first, then frequency
  std::vector<std::string> warnings;  // one per capped axis
};

// Time masks (R, m_R over T frames), then frequency masks (F, m_F over nu
// channels), both from the same stream.
MaskDraw SamplePolicyMasks(const AugmentPolicy& policy, std::size_t num_frames,
                           std::size_t num_channels, SplitMix64& rng);

// Returns a copy of features with every masked frame / channel set to 0.
// Throws ContractError if a mask exceeds its axis.
FeatureMatrix ApplyMasks(const FeatureMatrix& features,
                         std::span<const MaskSpec> masks);

struct AugmentResult {
  FeatureMatrix features;
  MaskDraw draw;
};

AugmentResult Augment(const FeatureMatrix& features,
                      const AugmentPolicy& policy, SplitMix64& rng);

// Mask sidecar text: one "axis\tstart\tlength" line per mask, axis being
// "time" or "frequency".
std::string FormatMaskLines(std::span<const MaskSpec> masks);
std::vector<MaskSpec> ParseMaskLines(std::string_view text);

}  // namespace specaug

#endif  // SPECAUG_AUGMENT_H_
