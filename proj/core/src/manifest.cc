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

#include "specaug/manifest.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "specaug/error.h"
#include "specaug/rng.h"
#include "text_util.h"

namespace specaug {

Manifest ParseManifest(std::string_view text) {
  Manifest manifest;
  std::unordered_map<std::string, std::size_t> seen;  // id -> line
  const auto lines = internal::Lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const std::string_view line = lines[i];
    if (internal::Trim(line).empty() || line.front() == '#') continue;
    const auto fields = internal::Split(line, '\t');
    if (fields.size() < 2 || fields.size() > 3) {
      throw FormatError("manifest line " + std::to_string(line_no) +
                        ": expected id<TAB>path[<TAB>frames], got " +
                        std::to_string(fields.size()) + " field(s)");
    }
    ManifestRecord record;
    record.id = std::string(fields[0]);
    record.path = std::string(fields[1]);
    if (record.id.empty() || record.path.empty()) {
      throw FormatError("manifest line " + std::to_string(line_no) +
                        ": empty id or path");
    }
    if (fields.size() == 3) {
      const auto frames = internal::ParseNumber<std::uint64_t>(fields[2]);
      if (!frames) {
        throw FormatError("manifest line " + std::to_string(line_no) +
                          ": frame count '" + std::string(fields[2]) +
                          "' is not a non-negative integer");
      }
      record.num_frames = *frames;
    }
    if (auto [it, inserted] = seen.emplace(record.id, line_no); !inserted) {
      throw FormatError("manifest line " + std::to_string(line_no) +
                        ": duplicate utterance id '" + record.id +
                        "' (first seen on line " + std::to_string(it->second) +
                        ")");
    }
    manifest.records.push_back(std::move(record));
  }
  return manifest;
}

Manifest ReadManifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open manifest " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return ParseManifest(buf.str());
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::string FormatManifest(const Manifest& manifest) {
  std::string out;
  for (const auto& r : manifest.records) {
    out += r.id + '\t' + r.path;
    if (r.num_frames) out += '\t' + std::to_string(*r.num_frames);
    out += '\n';
  }
  return out;
}

void WriteManifest(const Manifest& manifest, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot create " + path.string());
  out << FormatManifest(manifest);
  if (!out) throw IoError("write failed: " + path.string());
}

std::uint64_t Fnv1a64(std::string_view data) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char byte : data) {
    hash ^= byte;
    hash *= 0x100000001b3ull;
  }
  return hash;
}

std::uint64_t DeriveUtteranceSeed(std::uint64_t global_seed,
                                  std::string_view utterance_id) {
  SplitMix64 rng(Fnv1a64(utterance_id) ^ global_seed);
  return rng.Next();
}

std::size_t SliceSize(double fraction, std::size_t total) {
  // The epsilon keeps e.g. 0.1 * 30 = 3.0000000000000004 from rounding up.
  const double exact = fraction * static_cast<double>(total);
  return std::min(total, static_cast<std::size_t>(std::ceil(exact - 1e-9)));
}

std::vector<Manifest> SliceManifest(const Manifest& manifest,
                                    std::span<const double> fractions,
                                    std::uint64_t seed) {
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    const double f = fractions[i];
    if (!(f > 0.0 && f <= 1.0)) {
      throw ConfigError("slice fraction " + std::to_string(f) +
                        " is outside (0, 1]");
    }
    if (i > 0 && f < fractions[i - 1]) {
      throw ConfigError("slice fractions must be ascending");
    }
  }
  std::vector<ManifestRecord> shuffled = manifest.records;
  SplitMix64 rng(seed);
  for (std::size_t i = shuffled.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(UniformInt(rng, i));
    std::swap(shuffled[i - 1], shuffled[j]);
  }
  std::vector<Manifest> slices;
  for (double f : fractions) {
    const std::size_t n = SliceSize(f, shuffled.size());
    Manifest slice;
    slice.records.assign(shuffled.begin(),
                         shuffled.begin() + static_cast<std::ptrdiff_t>(n));
    slices.push_back(std::move(slice));
  }
  return slices;
}

std::vector<double> ParseFractions(std::string_view text) {
  std::vector<double> fractions;
  for (auto part : internal::Split(text, ',')) {
    const auto f = internal::ParseNumber<double>(part);
    if (!f) throw ConfigError("bad fraction '" + std::string(part) + "'");
    fractions.push_back(*f);
  }
  return fractions;
}

}  // namespace specaug
