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

#ifndef SPECAUG_PIPELINE_H_
#define SPECAUG_PIPELINE_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "specaug/featext.h"
#include "specaug/manifest.h"
#include "specaug/run_config.h"
#include "specaug/stats.h"

namespace specaug {

// Loads one record: `.spfx` paths are decoded, anything else is read as WAV
// and run through Extract.
FeatureMatrix LoadFeatures(const ManifestRecord& record,
                           const std::filesystem::path& manifest_dir,
                           const DspConfig& dsp);

struct UtteranceResult {
  std::string id;
  std::size_t num_frames = 0;
  std::size_t num_channels = 0;
  std::size_t time_masks = 0;
  std::size_t freq_masks = 0;
  std::vector<std::string> warnings;
  std::optional<std::string> error;
};

struct RunSummary {
  Mode mode = Mode::kEval;
  AugmentPolicy policy;  // effective policy
  std::vector<UtteranceResult> utterances;  // manifest order

  std::size_t processed() const;
  std::size_t failed() const;
  std::size_t masks_drawn() const;
  // 0 when every utterance succeeded, 1 otherwise.
  int exit_code() const { return failed() == 0 ? 0 : 1; }
  // Deterministic text report; also written to <out>/summary.txt.
  std::string Format() const;
};

// For every manifest record: load -> standardize (if config.stats) ->
// augment with SplitMix64(DeriveUtteranceSeed(seed, id)) in train mode ->
// write <out>/<id>.spfx and <out>/<id>.masks. Records are processed by
// config.workers threads; outputs do not depend on the worker count.
// Per-utterance failures are collected; configuration problems (unreadable
// manifest or stats) throw.
RunSummary RunPipeline(const RunConfig& config);

// Accumulates stats over every record of the manifest, in manifest order.
CorpusStats ComputeManifestStats(const std::filesystem::path& manifest_path,
                                 const DspConfig& dsp, int workers = 1);

}  // namespace specaug

#endif  // SPECAUG_PIPELINE_H_
