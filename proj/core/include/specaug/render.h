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

#ifndef SPECAUG_RENDER_H_
#define SPECAUG_RENDER_H_

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "specaug/augment.h"
#include "specaug/feature_matrix.h"

namespace specaug {

// Plain PGM (P2) with width T and height nu, highest channel on the top
// row. Gray levels rescale the matrix linearly from [min, max] to [0, 255];
// a constant matrix renders as 128. Cells under any mask are 0.
std::string RenderMasksPgm(const FeatureMatrix& features,
                           std::span<const MaskSpec> masks);
void WriteMasksPgm(const FeatureMatrix& features,
                   std::span<const MaskSpec> masks,
                   const std::filesystem::path& path);

struct Panel {
  std::string name;  // none, time, freq, both
  std::vector<MaskSpec> masks;
};

// Draws one policy sample and splits it into the four panels: no masks,
// time masks only, frequency masks only, and all masks.
std::vector<Panel> FigurePanels(const FeatureMatrix& features,
                                const AugmentPolicy& policy, SplitMix64& rng);

// Writes <dir>/<name>.pgm for every panel; returns the paths in panel order.
std::vector<std::filesystem::path> WriteFigurePanels(
    const FeatureMatrix& features, std::span<const Panel> panels,
    const std::filesystem::path& dir);

}  // namespace specaug

#endif  // SPECAUG_RENDER_H_
