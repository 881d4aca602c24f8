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

#include "specaug/pipeline.h"

#include <atomic>
#include <exception>
#include <functional>
#include <thread>

#include "specaug/augment.h"
#include "specaug/error.h"
#include "specaug/spfx.h"
#include "specaug/wav.h"

namespace specaug {
namespace {

void CheckUsableId(const std::string& id) {
  if (id == "." || id == ".." || id.find('/') != std::string::npos ||
      id.find('\\') != std::string::npos) {
    throw ContractError("utterance id '" + id + "' cannot be used as a file name");
  }
}

// Runs fn(i) for i in [0, n) on up to `workers` threads. The exception of
// the lowest failing index is rethrown after all threads finish.
void ParallelFor(std::size_t n, int workers,
                 const std::function<void(std::size_t)>& fn) {
  const auto threads = static_cast<std::size_t>(std::max(1, workers));
  if (threads == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < std::min(threads, n); ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

FeatureMatrix LoadFeatures(const ManifestRecord& record,
                           const std::filesystem::path& manifest_dir,
                           const DspConfig& dsp) {
  std::filesystem::path path = record.path;
  if (path.is_relative()) path = manifest_dir / path;
  if (path.extension() == ".spfx") return ReadSpfx(path);
  return Extract(ReadWav(path), dsp);
}

std::size_t RunSummary::processed() const {
  return utterances.size() - failed();
}

std::size_t RunSummary::failed() const {
  std::size_t n = 0;
  for (const auto& u : utterances) n += u.error.has_value();
  return n;
}

std::size_t RunSummary::masks_drawn() const {
  std::size_t n = 0;
  for (const auto& u : utterances) n += u.time_masks + u.freq_masks;
  return n;
}

std::string RunSummary::Format() const {
  std::string out;
  out += "mode\t" + std::string(ModeName(mode)) + "\n";
  out += "policy\t" + FormatPolicy(policy) + "\n";
  out += "utterances\t" + std::to_string(utterances.size()) + "\n";
  out += "processed\t" + std::to_string(processed()) + "\n";
  out += "failed\t" + std::to_string(failed()) + "\n";
  out += "masks_drawn\t" + std::to_string(masks_drawn()) + "\n";
  for (const auto& u : utterances) {
    if (u.error) {
      out += "error\t" + u.id + "\t" + *u.error + "\n";
      continue;
    }
    out += "utt\t" + u.id + "\t" + std::to_string(u.num_frames) + "x" +
           std::to_string(u.num_channels) + "\ttime=" +
           std::to_string(u.time_masks) + "\tfreq=" +
           std::to_string(u.freq_masks) + "\n";
    for (const auto& w : u.warnings) out += "warning\t" + u.id + "\t" + w + "\n";
  }
  return out;
}

RunSummary RunPipeline(const RunConfig& config) {
  const Manifest manifest = ReadManifest(config.manifest);
  const std::filesystem::path manifest_dir = config.manifest.parent_path();
  std::optional<CorpusStats> stats;
  if (config.stats) stats = ReadStats(*config.stats);
  ValidatePolicy(config.policy);
  if (config.output_dir.empty()) throw ConfigError("no output directory given");
  std::filesystem::create_directories(config.output_dir);

  RunSummary summary;
  summary.mode = config.mode;
  summary.policy = config.effective_policy();
  summary.utterances.resize(manifest.size());

  ParallelFor(manifest.size(), config.workers, [&](std::size_t i) {
    const ManifestRecord& record = manifest.records[i];
    UtteranceResult& result = summary.utterances[i];
    result.id = record.id;
    try {
      CheckUsableId(record.id);
      FeatureMatrix features = LoadFeatures(record, manifest_dir, config.dsp);
      if (stats) features = Standardize(features, *stats);
      std::vector<MaskSpec> masks;
      if (config.mode == Mode::kTrain) {
        SplitMix64 rng(DeriveUtteranceSeed(config.seed, record.id));
        AugmentResult augmented = Augment(features, summary.policy, rng);
        features = std::move(augmented.features);
        masks = std::move(augmented.draw.masks);
        result.warnings = std::move(augmented.draw.warnings);
      }
      result.num_frames = features.num_frames();
      result.num_channels = features.num_channels();
      for (const auto& m : masks) {
        ++(m.axis == Axis::kTime ? result.time_masks : result.freq_masks);
      }
      WriteSpfx(features, config.output_dir / (record.id + ".spfx"));
      const std::string sidecar = FormatMaskLines(masks);
      WriteFileBytes(config.output_dir / (record.id + ".masks"),
                     std::span(reinterpret_cast<const std::uint8_t*>(sidecar.data()),
                               sidecar.size()));
    } catch (const std::exception& e) {
      result.error = e.what();
    }
  });

  const std::string report = summary.Format();
  WriteFileBytes(config.output_dir / "summary.txt",
                 std::span(reinterpret_cast<const std::uint8_t*>(report.data()),
                           report.size()));
  return summary;
}

CorpusStats ComputeManifestStats(const std::filesystem::path& manifest_path,
                                 const DspConfig& dsp, int workers) {
  const Manifest manifest = ReadManifest(manifest_path);
  if (manifest.size() == 0) throw ContractError("manifest has no records");
  const auto dir = manifest_path.parent_path();
  std::vector<StatsAccumulator> partial(manifest.size());
  ParallelFor(manifest.size(), workers, [&](std::size_t i) {
    partial[i].Add(LoadFeatures(manifest.records[i], dir, dsp));
  });
  StatsAccumulator total;
  for (const auto& p : partial) total.Merge(p);
  return total.Finish();
}

}  // namespace specaug
