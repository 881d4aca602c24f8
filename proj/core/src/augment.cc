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

#include "specaug/augment.h"

#include <algorithm>
#include <map>
#include <string>

#include "specaug/error.h"
#include "text_util.h"

namespace specaug {
namespace {

const std::map<std::string, AugmentPolicy, std::less<>>& Presets() {
  // Field order: F, m_F, R, m_R.
  static const auto* presets = new std::map<std::string, AugmentPolicy, std::less<>>{
      {"none", {0, 0, 0, 0}},
      {"libri-best", {5, 1, 40, 2}},
      {"iwslt-best", {4, 1, 40, 2}},
      {"ld-like", {27, 2, 100, 2}},
  };
  return *presets;
}

}  // namespace

void ValidatePolicy(const AugmentPolicy& p) {
  if (p.freq_max_width < 0 || p.freq_count < 0 || p.time_max_width < 0 ||
      p.time_count < 0) {
    throw ConfigError("policy fields must be non-negative, got " +
                      FormatPolicy(p));
  }
}

AugmentPolicy PolicyPreset(std::string_view name) {
  const auto& presets = Presets();
  if (auto it = presets.find(name); it != presets.end()) return it->second;
  std::string known;
  for (const auto& [key, _] : presets) known += (known.empty() ? "" : ", ") + key;
  throw ConfigError("unknown policy preset '" + std::string(name) +
                    "' (known: " + known + ")");
}

std::vector<std::string> PolicyPresetNames() {
  std::vector<std::string> names;
  for (const auto& [key, _] : Presets()) names.push_back(key);
  return names;
}

AugmentPolicy ParsePolicy(std::string_view text) {
  text = internal::Trim(text);
  if (text.find(',') == std::string_view::npos) return PolicyPreset(text);
  const auto parts = internal::Split(text, ',');
  if (parts.size() != 4) {
    throw ConfigError("policy '" + std::string(text) +
                      "' must have four fields F,mF,R,mR");
  }
  int fields[4];
  for (int i = 0; i < 4; ++i) {
    const auto v = internal::ParseNumber<int>(parts[i]);
    if (!v) {
      throw ConfigError("policy field " + std::to_string(i + 1) + " '" +
                        std::string(parts[i]) + "' is not an integer");
    }
    fields[i] = *v;
  }
  AugmentPolicy policy{fields[0], fields[1], fields[2], fields[3]};
  ValidatePolicy(policy);
  return policy;
}

std::string FormatPolicy(const AugmentPolicy& p) {
  return std::to_string(p.freq_max_width) + "," + std::to_string(p.freq_count) +
         "," + std::to_string(p.time_max_width) + "," +
         std::to_string(p.time_count);
}

std::string_view AxisName(Axis axis) {
  return axis == Axis::kTime ? "time" : "frequency";
}

AxisMaskSampler::AxisMaskSampler(int max_width, int count, std::size_t extent,
                                 Axis axis)
    : width_choices_(0), requested_(0), effective_(0), extent_(extent), axis_(axis) {
  if (extent == 0) throw ContractError("mask axis extent must be >= 1");
  if (max_width < 0 || count < 0) {
    throw ConfigError("mask width and count must be non-negative");
  }
  width_choices_ = static_cast<std::uint64_t>(max_width) + 1;
  requested_ = static_cast<std::size_t>(count);
  effective_ = std::min(requested_, extent);
  masks_.reserve(effective_);
  used_.reserve(effective_);
  taken_.assign(extent, 0);
}

const std::vector<MaskSpec>& AxisMaskSampler::Sample(SplitMix64& rng) {
  masks_.clear();
  for (std::size_t s : used_) taken_[s] = 0;
  used_.clear();
  for (std::size_t i = 0; i < effective_; ++i) {
    const auto width = static_cast<std::size_t>(UniformInt(rng, width_choices_));
    std::size_t start = 0;
    do {
      start = static_cast<std::size_t>(UniformInt(rng, extent_));
    } while (taken_[start]);
    taken_[start] = 1;
    used_.push_back(start);
    masks_.push_back({axis_, start, std::min(width, extent_ - start)});
  }
  return masks_;
}

AxisMaskDraw SampleAxisMasks(int max_width, int count, std::size_t extent,
                             Axis axis, SplitMix64& rng) {
  AxisMaskSampler sampler(max_width, count, extent, axis);
  AxisMaskDraw draw;
  draw.requested = sampler.requested();
  draw.masks = sampler.Sample(rng);
  return draw;
}

MaskDraw SamplePolicyMasks(const AugmentPolicy& policy, std::size_t num_frames,
                           std::size_t num_channels, SplitMix64& rng) {
  ValidatePolicy(policy);
  MaskDraw out;
  auto time = SampleAxisMasks(policy.time_max_width, policy.time_count,
                              num_frames, Axis::kTime, rng);
  auto freq = SampleAxisMasks(policy.freq_max_width, policy.freq_count,
                              num_channels, Axis::kFrequency, rng);
  if (time.capped()) {
    out.warnings.push_back("time mask count " + std::to_string(time.requested) +
                           " capped at " + std::to_string(num_frames) +
                           " frames");
  }
  if (freq.capped()) {
    out.warnings.push_back("frequency mask count " +
                           std::to_string(freq.requested) + " capped at " +
                           std::to_string(num_channels) + " channels");
  }
  out.masks = std::move(time.masks);
  out.masks.insert(out.masks.end(), freq.masks.begin(), freq.masks.end());
  return out;
}

FeatureMatrix ApplyMasks(const FeatureMatrix& features,
                         std::span<const MaskSpec> masks) {
  const std::size_t frames = features.num_frames();
  const std::size_t channels = features.num_channels();
  for (const auto& m : masks) {
    const std::size_t extent = m.axis == Axis::kTime ? frames : channels;
    if (m.start > extent || m.length > extent - m.start) {
      throw ContractError(std::string(AxisName(m.axis)) + " mask [" +
                          std::to_string(m.start) + ", " +
                          std::to_string(m.start + m.length) +
                          ") exceeds extent " + std::to_string(extent));
    }
  }
  FeatureMatrix out = features;
  for (const auto& m : masks) {
    if (m.axis == Axis::kTime) {
      for (std::size_t t = m.start; t < m.start + m.length; ++t) {
        std::ranges::fill(out.frame(t), 0.0);
      }
    } else {
      for (std::size_t t = 0; t < frames; ++t) {
        auto row = out.frame(t);
        std::fill(row.begin() + static_cast<std::ptrdiff_t>(m.start),
                  row.begin() + static_cast<std::ptrdiff_t>(m.start + m.length),
                  0.0);
      }
    }
  }
  return out;
}

AugmentResult Augment(const FeatureMatrix& features,
                      const AugmentPolicy& policy, SplitMix64& rng) {
  MaskDraw draw = SamplePolicyMasks(policy, features.num_frames(),
                                    features.num_channels(), rng);
  FeatureMatrix masked = ApplyMasks(features, draw.masks);
  return {std::move(masked), std::move(draw)};
}

std::string FormatMaskLines(std::span<const MaskSpec> masks) {
  std::string out;
  for (const auto& m : masks) {
    out += AxisName(m.axis);
    out += '\t' + std::to_string(m.start) + '\t' + std::to_string(m.length) + '\n';
  }
  return out;
}

std::vector<MaskSpec> ParseMaskLines(std::string_view text) {
  std::vector<MaskSpec> masks;
  const auto lines = internal::Lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string where = "mask sidecar line " + std::to_string(i + 1);
    if (internal::Trim(lines[i]).empty()) continue;
    const auto fields = internal::Split(lines[i], '\t');
    if (fields.size() != 3) {
      throw FormatError(where + ": expected axis<TAB>start<TAB>length");
    }
    MaskSpec m;
    if (fields[0] == "time") {
      m.axis = Axis::kTime;
    } else if (fields[0] == "frequency") {
      m.axis = Axis::kFrequency;
    } else {
      throw FormatError(where + ": unknown axis '" + std::string(fields[0]) + "'");
    }
    const auto start = internal::ParseNumber<std::size_t>(fields[1]);
    const auto length = internal::ParseNumber<std::size_t>(fields[2]);
    if (!start || !length) throw FormatError(where + ": bad start or length");
    m.start = *start;
    m.length = *length;
    masks.push_back(m);
  }
  return masks;
}

}  // namespace specaug
