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

#include "specaug/spfx.h"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>

#include "specaug/error.h"

namespace specaug {
namespace {

class ByteWriter {
 public:
  explicit ByteWriter(std::size_t reserve) { bytes_.reserve(reserve); }

  void U8(std::uint8_t v) { bytes_.push_back(v); }
  void U16(std::uint16_t v) { Le(v, 2); }
  void U32(std::uint32_t v) { Le(v, 4); }
  void U64(std::uint64_t v) { Le(v, 8); }
  void F32(float v) { U32(std::bit_cast<std::uint32_t>(v)); }
  void F64(double v) { U64(std::bit_cast<std::uint64_t>(v)); }
  void Tag(const char* tag) { bytes_.insert(bytes_.end(), tag, tag + 4); }

  std::vector<std::uint8_t> Take() { return std::move(bytes_); }

 private:
  void Le(std::uint64_t v, int n) {
    for (int i = 0; i < n; ++i) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  std::vector<std::uint8_t> bytes_;
};

std::uint64_t GetLe(std::span<const std::uint8_t> b, std::size_t off, int n) {
  std::uint64_t v = 0;
  for (int i = 0; i < n; ++i) v |= static_cast<std::uint64_t>(b[off + i]) << (8 * i);
  return v;
}

struct Header {
  std::uint32_t num_channels;
  std::uint32_t num_frames;
  float frame_shift_ms;
  std::uint8_t kind;
};

void PutHeader(ByteWriter& w, std::uint32_t channels, std::uint32_t frames,
               float shift, std::uint8_t kind) {
  w.Tag("SPFX");
  w.U16(kSpfxVersion);
  w.U32(channels);
  w.U32(frames);
  w.F32(shift);
  w.U8(kind);
  w.U8(0);
}

Header ParseHeader(std::span<const std::uint8_t> b) {
  if (b.size() < kSpfxHeaderSize) {
    throw FormatError("spfx: header truncated at byte offset " +
                      std::to_string(b.size()) + " (need " +
                      std::to_string(kSpfxHeaderSize) + " bytes)");
  }
  if (std::memcmp(b.data(), "SPFX", 4) != 0) {
    throw FormatError("spfx: bad magic at byte offset 0");
  }
  const auto version = static_cast<std::uint16_t>(GetLe(b, 4, 2));
  if (version != kSpfxVersion) {
    throw FormatError("spfx: unsupported version " + std::to_string(version) +
                      " at byte offset 4");
  }
  Header h;
  h.num_channels = static_cast<std::uint32_t>(GetLe(b, 6, 4));
  h.num_frames = static_cast<std::uint32_t>(GetLe(b, 10, 4));
  h.frame_shift_ms = std::bit_cast<float>(static_cast<std::uint32_t>(GetLe(b, 14, 4)));
  h.kind = b[18];
  if (b[19] != 0) throw FormatError("spfx: nonzero reserved byte at byte offset 19");
  if (h.num_channels == 0 || h.num_frames == 0) {
    throw FormatError("spfx: zero dimension in header at byte offset 6");
  }
  return h;
}

void CheckLength(std::span<const std::uint8_t> b, std::size_t expected) {
  if (b.size() != expected) {
    throw FormatError("spfx: expected " + std::to_string(expected) +
                      " bytes, file has " + std::to_string(b.size()) +
                      (b.size() < expected ? " (truncated at byte offset " +
                                                 std::to_string(b.size()) + ")"
                                           : " (trailing bytes)"));
  }
}

std::uint32_t CheckedU32(std::size_t v, const char* what) {
  if (v > std::numeric_limits<std::uint32_t>::max()) {
    throw ContractError(std::string(what) + " does not fit in 32 bits");
  }
  return static_cast<std::uint32_t>(v);
}

}  // namespace

std::vector<std::uint8_t> EncodeSpfx(const FeatureMatrix& features) {
  const auto data = features.data();
  ByteWriter w(kSpfxHeaderSize + 4 * data.size());
  PutHeader(w, CheckedU32(features.num_channels(), "num_channels"),
            CheckedU32(features.num_frames(), "num_frames"),
            static_cast<float>(features.frame_shift_ms()),
            static_cast<std::uint8_t>(features.kind()));
  for (std::size_t i = 0; i < data.size(); ++i) {
    const float v = static_cast<float>(data[i]);
    if (!std::isfinite(v)) {
      throw ContractError("value at index " + std::to_string(i) +
                          " overflows float32");
    }
    w.F32(v);
  }
  return w.Take();
}

FeatureMatrix DecodeSpfx(std::span<const std::uint8_t> b) {
  const Header h = ParseHeader(b);
  if (h.kind > static_cast<std::uint8_t>(FeatureKind::kStandardizedMfcc)) {
    throw FormatError("spfx: unknown kind " + std::to_string(h.kind) +
                      " at byte offset 18");
  }
  const std::size_t n = static_cast<std::size_t>(h.num_channels) * h.num_frames;
  CheckLength(b, kSpfxHeaderSize + 4 * n);
  std::vector<double> data(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t off = kSpfxHeaderSize + 4 * i;
    const float v = std::bit_cast<float>(static_cast<std::uint32_t>(GetLe(b, off, 4)));
    if (!std::isfinite(v)) {
      throw FormatError("spfx: non-finite value at byte offset " + std::to_string(off));
    }
    data[i] = v;
  }
  return FeatureMatrix(h.num_frames, h.num_channels, std::move(data),
                       h.frame_shift_ms, static_cast<FeatureKind>(h.kind));
}

std::vector<std::uint8_t> ReadFileBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void WriteFileBytes(const std::filesystem::path& path,
                    std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

void WriteSpfx(const FeatureMatrix& features, const std::filesystem::path& path) {
  WriteFileBytes(path, EncodeSpfx(features));
}

FeatureMatrix ReadSpfx(const std::filesystem::path& path) {
  const auto bytes = ReadFileBytes(path);
  try {
    return DecodeSpfx(bytes);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::vector<std::uint8_t> EncodeStats(const CorpusStats& stats) {
  const std::size_t nu = stats.mean.size();
  if (nu == 0 || stats.variance.size() != nu) {
    throw ContractError("stats mean/variance sizes are inconsistent");
  }
  ByteWriter w(kSpfxHeaderSize + 16 * nu + 8);
  PutHeader(w, CheckedU32(nu, "num_channels"), 2, 0.0f, kSpfxStatsKind);
  for (double v : stats.mean) w.F64(v);
  for (double v : stats.variance) w.F64(v);
  w.U64(stats.count);
  return w.Take();
}

CorpusStats DecodeStats(std::span<const std::uint8_t> b) {
  const Header h = ParseHeader(b);
  if (h.kind != kSpfxStatsKind || h.num_frames != 2) {
    throw FormatError("spfx: not a statistics file (kind " +
                      std::to_string(h.kind) + " at byte offset 18)");
  }
  const std::size_t nu = h.num_channels;
  CheckLength(b, kSpfxHeaderSize + 16 * nu + 8);
  CorpusStats stats;
  stats.mean.resize(nu);
  stats.variance.resize(nu);
  for (std::size_t c = 0; c < nu; ++c) {
    stats.mean[c] = std::bit_cast<double>(GetLe(b, kSpfxHeaderSize + 8 * c, 8));
    stats.variance[c] =
        std::bit_cast<double>(GetLe(b, kSpfxHeaderSize + 8 * (nu + c), 8));
  }
  stats.count = GetLe(b, kSpfxHeaderSize + 16 * nu, 8);
  return stats;
}

void WriteStats(const CorpusStats& stats, const std::filesystem::path& path) {
  WriteFileBytes(path, EncodeStats(stats));
}

CorpusStats ReadStats(const std::filesystem::path& path) {
  const auto bytes = ReadFileBytes(path);
  try {
    return DecodeStats(bytes);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace specaug
