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

#include "specaug/wav.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>
#include <string_view>

#include "specaug/error.h"

namespace specaug {
namespace {

std::uint16_t ReadU16(std::span<const std::uint8_t> b, std::size_t off) {
  return static_cast<std::uint16_t>(b[off] | (b[off + 1] << 8));
}

std::uint32_t ReadU32(std::span<const std::uint8_t> b, std::size_t off) {
  return static_cast<std::uint32_t>(b[off]) |
         (static_cast<std::uint32_t>(b[off + 1]) << 8) |
         (static_cast<std::uint32_t>(b[off + 2]) << 16) |
         (static_cast<std::uint32_t>(b[off + 3]) << 24);
}

bool TagIs(std::span<const std::uint8_t> b, std::size_t off,
           std::string_view tag) {
  return std::equal(tag.begin(), tag.end(), b.begin() + off,
                    [](char c, std::uint8_t u) {
                      return static_cast<std::uint8_t>(c) == u;
                    });
}

void PutU16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void PutU32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void PutTag(std::vector<std::uint8_t>& out, std::string_view tag) {
  out.insert(out.end(), tag.begin(), tag.end());
}

}  // namespace

void ValidateSignal(const PcmSignal& signal) {
  if (signal.sample_rate <= 0) {
    throw ContractError("sample rate must be positive, got " +
                        std::to_string(signal.sample_rate));
  }
  if (signal.samples.empty()) throw ContractError("signal has no samples");
  for (std::size_t i = 0; i < signal.samples.size(); ++i) {
    if (!std::isfinite(signal.samples[i])) {
      throw ContractError("non-finite sample at index " + std::to_string(i));
    }
  }
}

PcmSignal DecodeWav(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12) {
    throw FormatError("wav: file has " + std::to_string(bytes.size()) +
                      " bytes, shorter than the 12-byte RIFF header");
  }
  if (!TagIs(bytes, 0, "RIFF")) throw FormatError("wav: missing RIFF tag");
  if (!TagIs(bytes, 8, "WAVE")) throw FormatError("wav: missing WAVE tag");

  bool have_fmt = false;
  int sample_rate = 0;
  std::span<const std::uint8_t> data;
  bool have_data = false;

  std::size_t off = 12;
  while (off + 8 <= bytes.size()) {
    const std::uint32_t size = ReadU32(bytes, off + 4);
    const std::size_t body = off + 8;
    if (size > bytes.size() - body) {
      throw FormatError("wav: chunk at byte " + std::to_string(off) +
                        " declares " + std::to_string(size) +
                        " bytes but only " +
                        std::to_string(bytes.size() - body) + " remain");
    }
    if (TagIs(bytes, off, "fmt ")) {
      if (size < 16) throw FormatError("wav: fmt chunk shorter than 16 bytes");
      const std::uint16_t format = ReadU16(bytes, body);
      const std::uint16_t channels = ReadU16(bytes, body + 2);
      const std::uint32_t rate = ReadU32(bytes, body + 4);
      const std::uint16_t bits = ReadU16(bytes, body + 14);
      if (format != 1) {
        throw UnsupportedError("wav: audio_format " + std::to_string(format) +
                               " is not PCM (1)");
      }
      if (channels != 1) {
        throw UnsupportedError("wav: num_channels " + std::to_string(channels) +
                               " is not mono");
      }
      if (bits != 16) {
        throw UnsupportedError("wav: bits_per_sample " + std::to_string(bits) +
                               " is not 16");
      }
      if (rate == 0 || rate > 0x7fffffffu) {
        throw FormatError("wav: invalid sample_rate " + std::to_string(rate));
      }
      sample_rate = static_cast<int>(rate);
      have_fmt = true;
    } else if (TagIs(bytes, off, "data")) {
      data = bytes.subspan(body, size);
      have_data = true;
    }
    // Chunks are padded to even length.
    off = body + size + (size & 1u);
  }

  if (!have_fmt) throw FormatError("wav: no fmt chunk");
  if (!have_data) throw FormatError("wav: no data chunk");
  if (data.size() % 2 != 0) {
    throw FormatError("wav: data chunk length " + std::to_string(data.size()) +
                      " is not a multiple of the 2-byte sample size");
  }

  PcmSignal signal;
  signal.sample_rate = sample_rate;
  signal.samples.resize(data.size() / 2);
  for (std::size_t i = 0; i < signal.samples.size(); ++i) {
    const auto raw = static_cast<std::int16_t>(ReadU16(data, 2 * i));
    signal.samples[i] = static_cast<double>(raw) / 32768.0;
  }
  return signal;
}

PcmSignal ReadWav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  try {
    return DecodeWav(bytes);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  } catch (const UnsupportedError& e) {
    throw UnsupportedError(path.string() + ": " + e.what());
  }
}

std::vector<std::uint8_t> EncodeWav(const PcmSignal& signal) {
  ValidateSignal(signal);
  const auto data_bytes = static_cast<std::uint32_t>(2 * signal.samples.size());
  const auto rate = static_cast<std::uint32_t>(signal.sample_rate);
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_bytes);
  PutTag(out, "RIFF");
  PutU32(out, 36 + data_bytes);
  PutTag(out, "WAVE");
  PutTag(out, "fmt ");
  PutU32(out, 16);
  PutU16(out, 1);         // PCM
  PutU16(out, 1);         // mono
  PutU32(out, rate);
  PutU32(out, rate * 2);  // byte rate
  PutU16(out, 2);         // block align
  PutU16(out, 16);
  PutTag(out, "data");
  PutU32(out, data_bytes);
  for (double s : signal.samples) {
    const double scaled = std::clamp(std::round(s * 32768.0), -32768.0, 32767.0);
    PutU16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(scaled)));
  }
  return out;
}

void WriteWav(const PcmSignal& signal, const std::filesystem::path& path) {
  const auto bytes = EncodeWav(signal);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace specaug
