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

#include "specaug/feature_matrix.h"

#include <cmath>
#include <string>
#include <utility>

#include "specaug/error.h"

namespace specaug {

std::string_view FeatureKindName(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::kLogMel:
      return "log_mel";
    case FeatureKind::kMfcc:
      return "mfcc";
    case FeatureKind::kStandardizedLogMel:
      return "standardized_log_mel";
    case FeatureKind::kStandardizedMfcc:
      return "standardized_mfcc";
  }
  return "unknown";
}

bool IsStandardized(FeatureKind kind) {
  return kind == FeatureKind::kStandardizedLogMel ||
         kind == FeatureKind::kStandardizedMfcc;
}

FeatureKind StandardizedKind(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::kLogMel:
      return FeatureKind::kStandardizedLogMel;
    case FeatureKind::kMfcc:
      return FeatureKind::kStandardizedMfcc;
    default:
      return kind;
  }
}

FeatureMatrix::FeatureMatrix(std::size_t num_frames, std::size_t num_channels,
                             std::vector<double> data, double frame_shift_ms,
                             FeatureKind kind)
    : num_frames_(num_frames),
      num_channels_(num_channels),
      data_(std::move(data)),
      frame_shift_ms_(frame_shift_ms),
      kind_(kind) {
  if (num_frames_ == 0 || num_channels_ == 0) {
    throw ContractError("feature matrix needs at least one frame and channel");
  }
  if (data_.size() != num_frames_ * num_channels_) {
    throw ContractError("feature matrix data has " +
                        std::to_string(data_.size()) + " values, expected " +
                        std::to_string(num_frames_ * num_channels_));
  }
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (!std::isfinite(data_[i])) {
      throw ContractError("non-finite feature value at frame " +
                          std::to_string(i / num_channels_) + ", channel " +
                          std::to_string(i % num_channels_));
    }
  }
}

FeatureMatrix::FeatureMatrix(std::size_t num_frames, std::size_t num_channels,
                             double frame_shift_ms, FeatureKind kind)
    : FeatureMatrix(num_frames, num_channels,
                    std::vector<double>(num_frames * num_channels, 0.0),
                    frame_shift_ms, kind) {}

}  // namespace specaug
