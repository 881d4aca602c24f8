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

#include "specaug/featext.h"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "specaug/error.h"

namespace specaug {
namespace {

std::size_t MsToSamples(double ms, int sample_rate) {
  return static_cast<std::size_t>(std::llround(ms * sample_rate / 1000.0));
}

std::string Num(double v) {
  std::string s = std::to_string(v);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

}  // namespace

DspConfig LibriSpeechLikeDsp() { return DspConfig{}; }

DspConfig IwsltLikeDsp() {
  DspConfig cfg;
  cfg.n_mels = 80;
  cfg.n_coeffs = 80;
  // 512 bins are too coarse for 80 distinct mel edges below ~200 Hz.
  cfg.n_fft = 1024;
  cfg.output = FeatureKind::kMfcc;
  return cfg;
}

DspConfig DspPreset(std::string_view name) {
  if (name == "librispeech-like") return LibriSpeechLikeDsp();
  if (name == "iwslt-like") return IwsltLikeDsp();
  throw ConfigError("unknown feature preset '" + std::string(name) +
                    "' (expected librispeech-like or iwslt-like)");
}

FrameGeometry ResolveGeometry(const DspConfig& cfg, int sample_rate) {
  if (sample_rate <= 0) {
    throw ConfigError("sample_rate must be positive, got " +
                      std::to_string(sample_rate));
  }
  if (!(cfg.pre_emphasis >= 0.0 && cfg.pre_emphasis < 1.0)) {
    throw ConfigError("pre_emphasis must lie in [0, 1), got " +
                      Num(cfg.pre_emphasis));
  }
  if (!(cfg.frame_len_ms > 0.0)) throw ConfigError("frame_len_ms must be > 0");
  if (!(cfg.frame_shift_ms > 0.0)) {
    throw ConfigError("frame_shift_ms must be > 0");
  }
  if (!(cfg.log_floor > 0.0)) throw ConfigError("log_floor must be > 0");
  if (cfg.n_mels < 1) throw ConfigError("n_mels must be >= 1");
  if (cfg.output != FeatureKind::kLogMel && cfg.output != FeatureKind::kMfcc) {
    throw ConfigError("output kind must be log_mel or mfcc");
  }

  FrameGeometry g;
  g.sample_rate = sample_rate;
  g.frame_len = MsToSamples(cfg.frame_len_ms, sample_rate);
  g.frame_shift = MsToSamples(cfg.frame_shift_ms, sample_rate);
  if (g.frame_len == 0) throw ConfigError("frame_len_ms rounds to 0 samples");
  if (g.frame_shift == 0) {
    throw ConfigError("frame_shift_ms rounds to 0 samples");
  }
  if (cfg.n_fft == 0) {
    g.n_fft = std::bit_ceil(g.frame_len);
  } else {
    if (cfg.n_fft < 0 || !std::has_single_bit(static_cast<unsigned>(cfg.n_fft))) {
      throw ConfigError("n_fft must be a power of two, got " +
                        std::to_string(cfg.n_fft));
    }
    g.n_fft = static_cast<std::size_t>(cfg.n_fft);
    if (g.n_fft < g.frame_len) {
      throw ConfigError("n_fft " + std::to_string(g.n_fft) +
                        " is smaller than the frame length of " +
                        std::to_string(g.frame_len) + " samples");
    }
  }
  g.n_mels = cfg.n_mels;
  g.n_coeffs = cfg.n_coeffs == 0 ? cfg.n_mels : cfg.n_coeffs;
  if (g.n_coeffs < 1 || g.n_coeffs > g.n_mels) {
    throw ConfigError("n_coeffs " + std::to_string(g.n_coeffs) +
                      " must lie in [1, n_mels=" + std::to_string(g.n_mels) +
                      "]");
  }
  const double nyquist = sample_rate / 2.0;
  g.fmin_hz = cfg.fmin_hz;
  g.fmax_hz = cfg.fmax_hz == 0.0 ? nyquist : cfg.fmax_hz;
  if (!(g.fmin_hz >= 0.0 && g.fmin_hz < g.fmax_hz && g.fmax_hz <= nyquist)) {
    throw ConfigError("need 0 <= fmin_hz < fmax_hz <= " + Num(nyquist) +
                      ", got fmin_hz=" + Num(g.fmin_hz) +
                      " fmax_hz=" + Num(g.fmax_hz));
  }
  return g;
}

std::size_t NumFrames(std::size_t len, std::size_t frame_len,
                      std::size_t frame_shift) {
  if (len < frame_len) return 0;
  return (len - frame_len) / frame_shift + 1;
}

void Fft(std::span<std::complex<double>> data) {
  const std::size_t n = data.size();
  if (n == 0 || !std::has_single_bit(n)) {
    throw DomainError("FFT length must be a power of two, got " +
                      std::to_string(n));
  }
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    for (std::size_t k = 0; k < half; ++k) {
      // Twiddles evaluated directly rather than by recurrence to keep
      // rounding error independent of k.
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) /
                           static_cast<double>(len);
      const std::complex<double> w(std::cos(angle), std::sin(angle));
      for (std::size_t start = 0; start < n; start += len) {
        const auto u = data[start + k];
        const auto v = data[start + k + half] * w;
        data[start + k] = u + v;
        data[start + k + half] = u - v;
      }
    }
  }
}

RealMatrix FrameAndWindow(const PcmSignal& signal, const DspConfig& cfg) {
  ValidateSignal(signal);
  const FrameGeometry g = ResolveGeometry(cfg, signal.sample_rate);
  const std::size_t len = signal.samples.size();
  const std::size_t num_frames = NumFrames(len, g.frame_len, g.frame_shift);
  if (num_frames == 0) {
    throw EmptyOutputError("signal of " + std::to_string(len) +
                           " samples is shorter than one frame (" +
                           std::to_string(g.frame_len) + " samples)");
  }

  std::vector<double> emphasized(len);
  emphasized[0] = signal.samples[0];
  for (std::size_t n = 1; n < len; ++n) {
    emphasized[n] = signal.samples[n] - cfg.pre_emphasis * signal.samples[n - 1];
  }

  std::vector<double> window(g.frame_len, 1.0);
  if (g.frame_len > 1) {
    const double denom = static_cast<double>(g.frame_len - 1);
    for (std::size_t n = 0; n < g.frame_len; ++n) {
      window[n] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi *
                                         static_cast<double>(n) / denom);
    }
  }

  RealMatrix frames{num_frames, g.n_fft,
                    std::vector<double>(num_frames * g.n_fft, 0.0)};
  for (std::size_t t = 0; t < num_frames; ++t) {
    auto row = frames.row(t);
    const std::size_t offset = t * g.frame_shift;
    for (std::size_t n = 0; n < g.frame_len; ++n) {
      row[n] = emphasized[offset + n] * window[n];
    }
  }
  return frames;
}

RealMatrix PowerSpectrum(const RealMatrix& frames) {
  const std::size_t n_fft = frames.cols;
  const std::size_t bins = n_fft / 2 + 1;
  RealMatrix power{frames.rows, bins,
                   std::vector<double>(frames.rows * bins, 0.0)};
  std::vector<std::complex<double>> buf(n_fft);
  for (std::size_t t = 0; t < frames.rows; ++t) {
    const auto row = frames.row(t);
    for (std::size_t n = 0; n < n_fft; ++n) {
      if (!std::isfinite(row[n])) {
        throw ContractError("non-finite sample in frame " + std::to_string(t));
      }
      buf[n] = {row[n], 0.0};
    }
    Fft(buf);
    auto out = power.row(t);
    for (std::size_t k = 0; k < bins; ++k) out[k] = std::norm(buf[k]);
  }
  return power;
}

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double MelToHz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

MelFilterbank::MelFilterbank(const FrameGeometry& g) : num_bins_(g.num_bins()) {
  const int points = g.n_mels + 2;
  const double mel_lo = HzToMel(g.fmin_hz);
  const double mel_hi = HzToMel(g.fmax_hz);
  edge_bins_.resize(points);
  for (int i = 0; i < points; ++i) {
    const double mel = mel_lo + (mel_hi - mel_lo) * i / (points - 1);
    const double bin = MelToHz(mel) * static_cast<double>(g.n_fft) / g.sample_rate;
    edge_bins_[i] = static_cast<std::size_t>(std::llround(bin));
    if (i > 0 && edge_bins_[i] <= edge_bins_[i - 1]) {
      throw ConfigError("mel edge points " + std::to_string(i - 1) + " and " +
                        std::to_string(i) + " both round to FFT bin " +
                        std::to_string(edge_bins_[i - 1]) +
                        "; use fewer n_mels or a larger n_fft");
    }
  }
  weights_.assign(static_cast<std::size_t>(g.n_mels) * num_bins_, 0.0);
  for (int j = 0; j < g.n_mels; ++j) {
    const std::size_t lo = edge_bins_[j];
    const std::size_t mid = edge_bins_[j + 1];
    const std::size_t hi = edge_bins_[j + 2];
    double* w = weights_.data() + static_cast<std::size_t>(j) * num_bins_;
    for (std::size_t k = lo; k <= mid; ++k) {
      w[k] = static_cast<double>(k - lo) / static_cast<double>(mid - lo);
    }
    for (std::size_t k = mid; k <= hi; ++k) {
      w[k] = static_cast<double>(hi - k) / static_cast<double>(hi - mid);
    }
  }
}

FeatureMatrix MelEnergies(const RealMatrix& power, const DspConfig& cfg,
                          int sample_rate) {
  const FrameGeometry g = ResolveGeometry(cfg, sample_rate);
  if (power.cols != g.num_bins()) {
    throw ContractError("power spectrum has " + std::to_string(power.cols) +
                        " bins, expected " + std::to_string(g.num_bins()));
  }
  if (power.rows == 0) throw EmptyOutputError("power spectrum has no frames");
  const MelFilterbank bank(g);
  const std::size_t n_mels = static_cast<std::size_t>(g.n_mels);
  std::vector<double> out(power.rows * n_mels);
  for (std::size_t t = 0; t < power.rows; ++t) {
    const auto spec = power.row(t);
    for (std::size_t j = 0; j < n_mels; ++j) {
      const auto w = bank.weights(static_cast<int>(j));
      double energy = 0.0;
      for (std::size_t k = bank.edge_bins()[j]; k <= bank.edge_bins()[j + 2]; ++k) {
        energy += w[k] * spec[k];
      }
      out[t * n_mels + j] = std::log(std::max(energy, cfg.log_floor));
    }
  }
  return FeatureMatrix(power.rows, n_mels, std::move(out), cfg.frame_shift_ms,
                       FeatureKind::kLogMel);
}

RealMatrix DctMatrix(std::size_t n_out, std::size_t n) {
  RealMatrix g{n_out, n, std::vector<double>(n_out * n)};
  const double scale0 = std::sqrt(1.0 / static_cast<double>(n));
  const double scale = std::sqrt(2.0 / static_cast<double>(n));
  for (std::size_t k = 0; k < n_out; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const double arg = std::numbers::pi * static_cast<double>(k) *
                         (2.0 * static_cast<double>(i) + 1.0) /
                         (2.0 * static_cast<double>(n));
      g.values[k * n + i] = (k == 0 ? scale0 : scale) * std::cos(arg);
    }
  }
  return g;
}

FeatureMatrix MfccFromLogMel(const FeatureMatrix& logmel, int n_coeffs) {
  if (logmel.kind() != FeatureKind::kLogMel) {
    throw ContractError("MFCC input must be log_mel, got " +
                        std::string(FeatureKindName(logmel.kind())));
  }
  const std::size_t n = logmel.num_channels();
  if (n_coeffs < 1 || static_cast<std::size_t>(n_coeffs) > n) {
    throw ConfigError("n_coeffs " + std::to_string(n_coeffs) +
                      " must lie in [1, n_mels=" + std::to_string(n) + "]");
  }
  const std::size_t n_out = static_cast<std::size_t>(n_coeffs);
  const RealMatrix dct = DctMatrix(n_out, n);
  std::vector<double> out(logmel.num_frames() * n_out);
  for (std::size_t t = 0; t < logmel.num_frames(); ++t) {
    const auto x = logmel.frame(t);
    for (std::size_t k = 0; k < n_out; ++k) {
      const auto basis = dct.row(k);
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) acc += basis[i] * x[i];
      out[t * n_out + k] = acc;
    }
  }
  return FeatureMatrix(logmel.num_frames(), n_out, std::move(out),
                       logmel.frame_shift_ms(), FeatureKind::kMfcc);
}

FeatureMatrix Extract(const PcmSignal& signal, const DspConfig& cfg) {
  const FrameGeometry g = ResolveGeometry(cfg, signal.sample_rate);
  const RealMatrix frames = FrameAndWindow(signal, cfg);
  const RealMatrix power = PowerSpectrum(frames);
  FeatureMatrix logmel = MelEnergies(power, cfg, signal.sample_rate);
  if (cfg.output == FeatureKind::kMfcc) {
    return MfccFromLogMel(logmel, g.n_coeffs);
  }
  return logmel;
}

}  // namespace specaug
