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

#ifndef SPECAUG_FEATEXT_H_
#define SPECAUG_FEATEXT_H_

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "specaug/feature_matrix.h"
#include "specaug/wav.h"

namespace specaug {

// Front-end parameters. Zero-valued n_fft, fmax_hz and n_coeffs are
// resolved against the signal's sample rate (see ResolveGeometry).
struct DspConfig {
  double pre_emphasis = 0.97;
  double frame_len_ms = 25.0;
  double frame_shift_ms = 10.0;
  int n_fft = 0;          // 0: smallest power of two >= frame length
  int n_mels = 40;
  int n_coeffs = 0;       // 0: same as n_mels
  double log_floor = 1e-10;
  double fmin_hz = 0.0;
  double fmax_hz = 0.0;   // 0: Nyquist
  FeatureKind output = FeatureKind::kLogMel;  // kLogMel or kMfcc
};

// 40-channel log-mel front-end.
DspConfig LibriSpeechLikeDsp();
// 80-coefficient MFCC front-end.
DspConfig IwsltLikeDsp();
// "librispeech-like" or "iwslt-like"; throws ConfigError otherwise.
DspConfig DspPreset(std::string_view name);

// DspConfig with every derived quantity made concrete for one sample rate.
struct FrameGeometry {
  int sample_rate = 0;
  std::size_t frame_len = 0;    // samples
  std::size_t frame_shift = 0;  // samples
  std::size_t n_fft = 0;
  int n_mels = 0;
  int n_coeffs = 0;
  double fmin_hz = 0.0;
  double fmax_hz = 0.0;

  std::size_t num_bins() const { return n_fft / 2 + 1; }
};

// Validates cfg for the given rate; throws ConfigError naming the field.
FrameGeometry ResolveGeometry(const DspConfig& cfg, int sample_rate);

// Number of whole frames in a signal of len samples (0 if len < frame_len).
std::size_t NumFrames(std::size_t len, std::size_t frame_len,
                      std::size_t frame_shift);

// Dense row-major matrix used between DSP stages.
struct RealMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  std::span<const double> row(std::size_t r) const {
    return {values.data() + r * cols, cols};
  }
  std::span<double> row(std::size_t r) {
    return {values.data() + r * cols, cols};
  }
  double operator()(std::size_t r, std::size_t c) const {
    return values[r * cols + c];
  }
};

// In-place iterative radix-2 FFT; data.size() must be a power of two.
void Fft(std::span<std::complex<double>> data);

// Pre-emphasis over the whole signal, framing with the last partial frame
// dropped, Hamming window, zero padding to n_fft. Rows are frames.
RealMatrix FrameAndWindow(const PcmSignal& signal, const DspConfig& cfg);

// One-sided |DFT_k|^2 per row, k = 0..n_fft/2.
RealMatrix PowerSpectrum(const RealMatrix& frames);

// Triangular filters on n_mels+2 mel-spaced edge points mapped to FFT bins.
class MelFilterbank {
 public:
  MelFilterbank(const FrameGeometry& geometry);

  int num_filters() const { return static_cast<int>(edge_bins_.size()) - 2; }
  std::size_t num_bins() const { return num_bins_; }
  // FFT bin at which filter j peaks with weight 1.
  std::size_t center_bin(int j) const { return edge_bins_[j + 1]; }
  const std::vector<std::size_t>& edge_bins() const { return edge_bins_; }
  std::span<const double> weights(int j) const {
    return {weights_.data() + static_cast<std::size_t>(j) * num_bins_,
            num_bins_};
  }

 private:
  std::size_t num_bins_;
  std::vector<std::size_t> edge_bins_;
  std::vector<double> weights_;
};

double HzToMel(double hz);
double MelToHz(double mel);

// log(max(filterbank . power, log_floor)) per frame and filter.
FeatureMatrix MelEnergies(const RealMatrix& power, const DspConfig& cfg,
                          int sample_rate);

// Orthonormal DCT-II basis, n_out rows by n columns.
RealMatrix DctMatrix(std::size_t n_out, std::size_t n);

// Keeps DCT-II coefficients 0..n_coeffs-1 of each log-mel frame.
FeatureMatrix MfccFromLogMel(const FeatureMatrix& logmel, int n_coeffs);

// FrameAndWindow -> PowerSpectrum -> MelEnergies [-> MfccFromLogMel].
FeatureMatrix Extract(const PcmSignal& signal, const DspConfig& cfg);

}  // namespace specaug

#endif  // SPECAUG_FEATEXT_H_
