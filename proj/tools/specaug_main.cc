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

// specaug: feature extraction, masking augmentation and verification CLI.
//
// Exit codes: 0 success, 1 per-utterance failures (or a failed check),
// 2 configuration / format errors.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "specaug/augment.h"
#include "specaug/error.h"
#include "specaug/featext.h"
#include "specaug/manifest.h"
#include "specaug/pipeline.h"
#include "specaug/render.h"
#include "specaug/rng.h"
#include "specaug/run_config.h"
#include "specaug/spfx.h"
#include "specaug/synth.h"
#include "specaug/toydemo.h"
#include "specaug/verify.h"
#include "specaug/wav.h"

namespace fs = std::filesystem;
using namespace specaug;

namespace {

constexpr int kExitFailures = 1;
constexpr int kExitConfig = 2;

struct PipelineFlags {
  std::string config;
  std::string features;
  std::string manifest;
  std::string out;
  std::string stats;
  int workers = 0;
};

void AddPipelineFlags(CLI::App* cmd, PipelineFlags& f) {
  cmd->add_option("--config", f.config, "key = value run config file");
  cmd->add_option("--features", f.features,
                  "feature preset: librispeech-like | iwslt-like");
  cmd->add_option("--manifest", f.manifest, "utterance manifest (id<TAB>path)");
  cmd->add_option("--out", f.out, "output directory (or file for stats)");
  cmd->add_option("--workers", f.workers, "worker threads")->check(CLI::PositiveNumber);
}

RunConfig BuildConfig(const PipelineFlags& f) {
  RunConfig config = f.config.empty() ? RunConfig{} : ReadRunConfig(f.config);
  if (!f.features.empty()) config.dsp = DspPreset(f.features);
  if (!f.manifest.empty()) config.manifest = f.manifest;
  if (!f.out.empty()) config.output_dir = f.out;
  if (!f.stats.empty()) config.stats = fs::path(f.stats);
  if (f.workers > 0) config.workers = f.workers;
  if (config.manifest.empty()) throw ConfigError("no manifest given (--manifest)");
  if (config.output_dir.empty()) throw ConfigError("no output given (--out)");
  return config;
}

int RunAndReport(const RunConfig& config) {
  const RunSummary summary = RunPipeline(config);
  std::cout << summary.Format();
  return summary.exit_code() == 0 ? 0 : kExitFailures;
}

AugmentPolicy PolicyFromFlags(const std::string& preset, const std::string& policy,
                              const AugmentPolicy& fallback) {
  if (!preset.empty()) return PolicyPreset(preset);
  if (!policy.empty()) return ParsePolicy(policy);
  return fallback;
}

std::string ReadText(const fs::path& path) {
  const auto bytes = ReadFileBytes(path);
  return {bytes.begin(), bytes.end()};
}

void WriteText(const fs::path& path, const std::string& text) {
  WriteFileBytes(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()),
                                 text.size()));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"specaug: log-mel/MFCC extraction, time/frequency masking, "
               "and sampler verification"};
  app.require_subcommand(1);

  // extract
  PipelineFlags extract_flags;
  auto* extract = app.add_subcommand("extract", "extract features for a manifest");
  AddPipelineFlags(extract, extract_flags);

  // stats
  PipelineFlags stats_flags;
  auto* stats = app.add_subcommand("stats", "accumulate per-channel mean/variance");
  AddPipelineFlags(stats, stats_flags);

  // standardize
  PipelineFlags standardize_flags;
  auto* standardize = app.add_subcommand("standardize", "standardize features with a stats file");
  AddPipelineFlags(standardize, standardize_flags);
  standardize->add_option("--stats", standardize_flags.stats, "stats file")->required();

  // augment
  PipelineFlags augment_flags;
  std::string augment_preset, augment_policy, augment_mode;
  std::optional<std::uint64_t> augment_seed;
  auto* augment = app.add_subcommand("augment", "extract (or load) and mask features");
  AddPipelineFlags(augment, augment_flags);
  augment->add_option("--stats", augment_flags.stats, "stats file for standardization");
  auto* preset_opt = augment->add_option("--preset", augment_preset,
                                         "none | libri-best | iwslt-best | ld-like");
  augment->add_option("--policy", augment_policy, "F,mF,R,mR")->excludes(preset_opt);
  augment->add_option("--seed", augment_seed, "global seed");
  augment->add_option("--mode", augment_mode, "train | eval")
      ->check(CLI::IsMember({"train", "eval"}));

  // slice
  std::string slice_manifest, slice_fractions = "0.25,0.5,0.75,1.0", slice_prefix;
  std::uint64_t slice_seed = 0;
  auto* slice = app.add_subcommand("slice", "nested random subsets of a manifest");
  slice->add_option("--manifest", slice_manifest)->required();
  slice->add_option("--fractions", slice_fractions, "ascending, in (0, 1]");
  slice->add_option("--seed", slice_seed);
  slice->add_option("--out-prefix", slice_prefix,
                    "write <prefix><fraction>.tsv for each slice");

  // render
  std::string render_features, render_masks, render_out, render_figure;
  std::string render_preset, render_policy;
  std::uint64_t render_seed = 0;
  auto* render = app.add_subcommand("render", "render features and masks as PGM");
  render->add_option("--features", render_features, "SPFX feature file")->required();
  render->add_option("--masks", render_masks, "mask sidecar");
  render->add_option("--out", render_out, "output .pgm");
  render->add_option("--figure", render_figure,
                     "directory for none/time/freq/both panels");
  auto* render_preset_opt = render->add_option("--preset", render_preset);
  render->add_option("--policy", render_policy)->excludes(render_preset_opt);
  render->add_option("--seed", render_seed);

  // verify
  VerifyGrid grid;
  auto* verify = app.add_subcommand("verify", "Monte Carlo vs exact masked-mean table");
  verify->add_option("--trials", grid.trials)->check(CLI::Range(100ull, 1ull << 40));
  verify->add_option("--max-extent", grid.max_extent);
  verify->add_option("--max-width", grid.max_width);
  verify->add_option("--max-count", grid.max_count);
  verify->add_option("--seed", grid.seed);
  verify->add_option("--workers", grid.workers)->check(CLI::PositiveNumber);

  // demo
  toy::DemoConfig demo_config;
  std::string demo_preset, demo_policy, demo_out;
  std::uint64_t demo_seed = 1;
  int demo_paired = 0;
  auto* demo = app.add_subcommand("demo", "toy train/dev gap experiment");
  auto* demo_preset_opt = demo->add_option("--preset", demo_preset,
                                           "mask preset (none disables masking)");
  demo->add_option("--policy", demo_policy, "F,mF,R,mR")->excludes(demo_preset_opt);
  demo->add_option("--epochs", demo_config.epochs)->check(CLI::PositiveNumber);
  demo->add_option("--lr", demo_config.learning_rate);
  demo->add_option("--seed", demo_seed);
  demo->add_option("--out", demo_out, "learning curve CSV");
  demo->add_option("--classes", demo_config.data.num_classes);
  demo->add_option("--channels", demo_config.data.num_channels);
  demo->add_option("--frames", demo_config.data.num_frames);
  demo->add_option("--noise", demo_config.data.noise_stddev);
  demo->add_option("--template-scale", demo_config.data.template_scale);
  demo->add_option("--train-size", demo_config.data.train_size);
  demo->add_option("--dev-size", demo_config.data.dev_size);
  demo->add_option("--paired", demo_paired,
                   "run N paired seeds (masked vs unmasked) and print gaps");

  // synth
  std::string synth_out;
  int synth_count = 10;
  double synth_seconds = 1.0;
  int synth_rate = 16000;
  std::uint64_t synth_seed = 0;
  auto* synth = app.add_subcommand("synth", "write a synthetic WAV corpus and manifest");
  synth->add_option("--out", synth_out)->required();
  synth->add_option("--count", synth_count)->check(CLI::PositiveNumber);
  synth->add_option("--seconds", synth_seconds)->check(CLI::PositiveNumber);
  synth->add_option("--rate", synth_rate)->check(CLI::PositiveNumber);
  synth->add_option("--seed", synth_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (extract->parsed()) {
      RunConfig config = BuildConfig(extract_flags);
      config.mode = Mode::kEval;
      config.stats.reset();
      return RunAndReport(config);
    }
    if (stats->parsed()) {
      const RunConfig config = BuildConfig(stats_flags);
      const CorpusStats corpus = ComputeManifestStats(config.manifest, config.dsp,
                                                      config.workers);
      WriteStats(corpus, stats_flags.out);
      std::cout << "frames\t" << corpus.count << "\nchannels\t"
                << corpus.num_channels() << "\n";
      return 0;
    }
    if (standardize->parsed()) {
      RunConfig config = BuildConfig(standardize_flags);
      config.mode = Mode::kEval;
      return RunAndReport(config);
    }
    if (augment->parsed()) {
      RunConfig config = BuildConfig(augment_flags);
      config.policy = PolicyFromFlags(augment_preset, augment_policy, config.policy);
      if (augment_seed) config.seed = *augment_seed;
      if (!augment_mode.empty()) config.mode = ParseMode(augment_mode);
      return RunAndReport(config);
    }
    if (slice->parsed()) {
      const Manifest manifest = ReadManifest(slice_manifest);
      const auto fractions = ParseFractions(slice_fractions);
      const auto slices = SliceManifest(manifest, fractions, slice_seed);
      for (std::size_t i = 0; i < slices.size(); ++i) {
        std::cout << fractions[i] << "\t" << slices[i].size() << "\n";
        if (!slice_prefix.empty()) {
          std::ostringstream name;
          name << slice_prefix << fractions[i] << ".tsv";
          WriteManifest(slices[i], name.str());
        }
      }
      return 0;
    }
    if (render->parsed()) {
      const FeatureMatrix features = ReadSpfx(render_features);
      if (!render_figure.empty()) {
        const AugmentPolicy policy =
            PolicyFromFlags(render_preset, render_policy, PolicyPreset("libri-best"));
        SplitMix64 rng(render_seed);
        const auto panels = FigurePanels(features, policy, rng);
        for (const auto& path : WriteFigurePanels(features, panels, render_figure)) {
          std::cout << path.string() << "\n";
        }
        return 0;
      }
      if (render_out.empty()) throw ConfigError("render needs --out or --figure");
      std::vector<MaskSpec> masks;
      if (!render_masks.empty()) masks = ParseMaskLines(ReadText(render_masks));
      WriteMasksPgm(features, masks, render_out);
      return 0;
    }
    if (verify->parsed()) {
      const auto rows = RunVerifyGrid(grid);
      std::cout << FormatVerifyTable(rows);
      for (const auto& r : rows) {
        if (!r.pass) return kExitFailures;
      }
      return 0;
    }
    if (demo->parsed()) {
      std::optional<AugmentPolicy> policy =
          PolicyFromFlags(demo_preset, demo_policy, demo_config.policy);
      if (policy->is_identity()) policy.reset();
      if (policy) demo_config.policy = *policy;
      if (demo_paired > 0) {
        std::vector<std::uint64_t> seeds;
        for (int i = 0; i < demo_paired; ++i) seeds.push_back(demo_seed + i);
        const auto runs = toy::RunPairedDemo(demo_config, seeds);
        int wins = 0;
        std::cout << "seed\tgap_baseline\tgap_masked\tsmaller\n";
        for (const auto& run : runs) {
          wins += run.masking_shrinks_gap();
          std::cout << run.seed << "\t" << run.baseline.final_gap() << "\t"
                    << run.masked.final_gap() << "\t"
                    << (run.masking_shrinks_gap() ? "yes" : "no") << "\n";
        }
        std::cout << "masking shrank the gap in " << wins << " of "
                  << runs.size() << " pairs\n";
        return 0;
      }
      const auto data = toy::GenerateDataset(demo_config.data, demo_seed);
      const auto curve = toy::Train(
          data, {policy, demo_config.epochs, demo_config.learning_rate, demo_seed});
      if (demo_out.empty()) {
        std::cout << curve.ToCsv();
      } else {
        WriteText(demo_out, curve.ToCsv());
        std::cout << "final gap " << curve.final_gap() << "\n";
      }
      return 0;
    }
    if (synth->parsed()) {
      WriteSyntheticCorpus(synth_out, synth_count, synth_seconds, synth_rate,
                           synth_seed);
      std::cout << (fs::path(synth_out) / "manifest.tsv").string() << "\n";
      return 0;
    }
  } catch (const DivergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailures;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
