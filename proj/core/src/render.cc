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

#include "specaug/render.h"

#include <algorithm>
#include <cmath>

#include "specaug/spfx.h"

namespace specaug {

std::string RenderMasksPgm(const FeatureMatrix& features,
                           std::span<const MaskSpec> masks) {
  const std::size_t width = features.num_frames();
  const std::size_t height = features.num_channels();
  // Validates mask bounds and yields the mask footprint.
  FeatureMatrix ones(width, height,
                     std::vector<double>(width * height, 1.0), 0.0,
                     features.kind());
  const FeatureMatrix footprint = ApplyMasks(ones, masks);

  const auto data = features.data();
  const auto [lo_it, hi_it] = std::ranges::minmax_element(data);
  const double lo = *lo_it;
  const double hi = *hi_it;

  std::string out = "P2\n" + std::to_string(width) + " " +
                    std::to_string(height) + "\n255\n";
  for (std::size_t r = 0; r < height; ++r) {
    const std::size_t channel = height - 1 - r;
    std::size_t line_len = 0;
    for (std::size_t t = 0; t < width; ++t) {
      int gray = 128;
      if (footprint(t, channel) == 0.0) {
        gray = 0;
      } else if (hi > lo) {
        gray = static_cast<int>(
            std::lround((features(t, channel) - lo) / (hi - lo) * 255.0));
      }
      const std::string token = std::to_string(gray);
      // Plain PGM lines stay within 70 characters.
      if (line_len > 0 && line_len + 1 + token.size() > 70) {
        out += '\n';
        line_len = 0;
      } else if (line_len > 0) {
        out += ' ';
        ++line_len;
      }
      out += token;
      line_len += token.size();
    }
    out += '\n';
  }
  return out;
}

void WriteMasksPgm(const FeatureMatrix& features,
                   std::span<const MaskSpec> masks,
                   const std::filesystem::path& path) {
  const std::string pgm = RenderMasksPgm(features, masks);
  WriteFileBytes(path, std::span(reinterpret_cast<const std::uint8_t*>(pgm.data()),
                                 pgm.size()));
}

std::vector<Panel> FigurePanels(const FeatureMatrix& features,
                                const AugmentPolicy& policy, SplitMix64& rng) {
  const MaskDraw draw = SamplePolicyMasks(policy, features.num_frames(),
                                          features.num_channels(), rng);
  Panel none{"none", {}};
  Panel time{"time", {}};
  Panel freq{"freq", {}};
  for (const auto& m : draw.masks) {
    (m.axis == Axis::kTime ? time : freq).masks.push_back(m);
  }
  Panel both{"both", draw.masks};
  return {none, time, freq, both};
}

std::vector<std::filesystem::path> WriteFigurePanels(
    const FeatureMatrix& features, std::span<const Panel> panels,
    const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> paths;
  for (const auto& panel : panels) {
    auto path = dir / (panel.name + ".pgm");
    WriteMasksPgm(features, panel.masks, path);
    paths.push_back(std::move(path));
  }
  return paths;
}

}  // namespace specaug
