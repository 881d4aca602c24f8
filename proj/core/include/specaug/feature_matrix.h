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

#ifndef SPECAUG_FEATURE_MATRIX_H_
#define SPECAUG_FEATURE_MATRIX_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace specaug {

enum class FeatureKind : std::uint8_t {
  kLogMel = 0,
  kMfcc = 1,
  kStandardizedLogMel = 2,
  kStandardizedMfcc = 3,
};

std::string_view FeatureKindName(FeatureKind kind);
bool IsStandardized(FeatureKind kind);
// log_mel -> standardized_log_mel, mfcc -> standardized_mfcc; standardized
// kinds map to themselves.
FeatureKind StandardizedKind(FeatureKind kind);

// T x nu matrix of features stored time-major (row = frame, column =
// channel). Values are held in double precision; the on-disk format is
// float32.
//
// Invariants enforced on construction: T >= 1, nu >= 1, data.size() == T*nu
// and every entry is finite.
class FeatureMatrix {
 public:
  FeatureMatrix(std::size_t num_frames, std::size_t num_channels,
                std::vector<double> data, double frame_shift_ms,
                FeatureKind kind);
  // All-zero matrix.
  FeatureMatrix(std::size_t num_frames, std::size_t num_channels,
                double frame_shift_ms, FeatureKind kind);

  std::size_t num_frames() const { return num_frames_; }
  std::size_t num_channels() const { return num_channels_; }
  double frame_shift_ms() const { return frame_shift_ms_; }
  FeatureKind kind() const { return kind_; }
  void set_kind(FeatureKind kind) { kind_ = kind; }

  double operator()(std::size_t t, std::size_t c) const {
    return data_[t * num_channels_ + c];
  }
  double& operator()(std::size_t t, std::size_t c) {
    return data_[t * num_channels_ + c];
  }

  std::span<const double> frame(std::size_t t) const {
    return {data_.data() + t * num_channels_, num_channels_};
  }
  std::span<double> frame(std::size_t t) {
    return {data_.data() + t * num_channels_, num_channels_};
  }

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  // Exact equality of shape, metadata and every value.
  friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;

 private:
  std::size_t num_frames_;
  std::size_t num_channels_;
  std::vector<double> data_;
  double frame_shift_ms_;
  FeatureKind kind_;
};

}  // namespace specaug

#endif  // SPECAUG_FEATURE_MATRIX_H_
