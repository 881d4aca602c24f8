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

#ifndef SPECAUG_RUN_CONFIG_H_
#define SPECAUG_RUN_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>

#include "specaug/augment.h"
#include "specaug/featext.h"

namespace specaug {

enum class Mode { kTrain, kEval };

Mode ParseMode(std::string_view text);
std::string_view ModeName(Mode mode);

struct RunConfig {
  DspConfig dsp;
  AugmentPolicy policy;
  std::uint64_t seed = 0;
  std::filesystem::path manifest;
  std::filesystem::path output_dir;
  Mode mode = Mode::kEval;
  std::optional<std::filesystem::path> stats;
  int workers = 1;

  // Masks are only ever drawn in train mode.
  AugmentPolicy effective_policy() const {
    return mode == Mode::kTrain ? policy : AugmentPolicy{};
  }
};

// Sets one `key = value` setting; throws ConfigError for unknown keys or
// unparsable values. Keys:
//   features         librispeech-like | iwslt-like (resets all DSP fields)
//   output           log_mel | mfcc
//   pre_emphasis frame_len_ms frame_shift_ms n_fft n_mels n_coeffs
//   log_floor fmin_hz fmax_hz
//   policy           preset name or F,mF,R,mR
//   seed mode manifest out stats workers
void SetRunConfigKey(RunConfig& config, std::string_view key,
                     std::string_view value);

// UTF-8 `key = value` lines, '#' comments. Relative paths are resolved
// against base_dir.
RunConfig ParseRunConfig(std::string_view text,
                         const std::filesystem::path& base_dir = {});
RunConfig ReadRunConfig(const std::filesystem::path& path);

}  // namespace specaug

#endif  // SPECAUG_RUN_CONFIG_H_
