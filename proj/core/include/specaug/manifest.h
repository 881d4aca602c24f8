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

#ifndef SPECAUG_MANIFEST_H_
#define SPECAUG_MANIFEST_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace specaug {

struct ManifestRecord {
  std::string id;
  std::string path;  // relative paths resolve against the manifest's directory
  std::optional<std::uint64_t> num_frames;

  friend bool operator==(const ManifestRecord&, const ManifestRecord&) = default;
};

struct Manifest {
  std::vector<ManifestRecord> records;

  std::size_t size() const { return records.size(); }
};

// One `id<TAB>path[<TAB>frames]` record per line; blank lines and lines
// starting with '#' are skipped. Throws FormatError naming the line for
// malformed lines and for repeated ids.
Manifest ParseManifest(std::string_view text);
Manifest ReadManifest(const std::filesystem::path& path);
std::string FormatManifest(const Manifest& manifest);
void WriteManifest(const Manifest& manifest, const std::filesystem::path& path);

// 64-bit FNV-1a over the bytes of `data`.
std::uint64_t Fnv1a64(std::string_view data);

// SplitMix64 output of Fnv1a64(utterance_id) XOR global_seed.
std::uint64_t DeriveUtteranceSeed(std::uint64_t global_seed,
                                  std::string_view utterance_id);

// Shuffles once (Fisher-Yates driven by UniformInt on SplitMix64(seed)) and
// returns the first ceil(f * N) records for each fraction f. Fractions must
// be ascending and lie in (0, 1]; smaller slices are prefixes of larger.
std::vector<Manifest> SliceManifest(const Manifest& manifest,
                                    std::span<const double> fractions,
                                    std::uint64_t seed);
std::size_t SliceSize(double fraction, std::size_t total);

// "0.25,0.5,1.0" -> {0.25, 0.5, 1.0}; throws ConfigError.
std::vector<double> ParseFractions(std::string_view text);

}  // namespace specaug

#endif  // SPECAUG_MANIFEST_H_
