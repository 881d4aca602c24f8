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

#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "specaug/augment.h"
#include "specaug/error.h"
#include "specaug/featext.h"
#include "specaug/manifest.h"
#include "specaug/pipeline.h"
#include "specaug/render.h"
#include "specaug/run_config.h"
#include "specaug/spfx.h"
#include "specaug/stats.h"
#include "specaug/wav.h"
#include "test_util.h"

namespace specaug {
namespace {

namespace fs = std::filesystem;
using ::specaug::testing::BitIdentical;
using ::specaug::testing::Constant;
using ::specaug::testing::ReadText;
using ::specaug::testing::TempDir;

TEST(ManifestTest, EmptyAndComments) {
  EXPECT_EQ(ParseManifest("").size(), 0u);
  EXPECT_EQ(ParseManifest("# only a comment\n\n").size(), 0u);
}

TEST(ManifestTest, OrderAndFrames) {
  const Manifest m = ParseManifest("a\tx.wav\nb\ty.wav\t120\n");
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m.records[0], (ManifestRecord{"a", "x.wav", std::nullopt}));
  EXPECT_EQ(m.records[1], (ManifestRecord{"b", "y.wav", 120}));
  EXPECT_EQ(ParseManifest(FormatManifest(m)).records, m.records);
}

TEST(ManifestTest, DuplicateCitesLaterLine) {
  const std::string text =
      "# header\nx\t0.wav\nu\t1.wav\ny\t2.wav\nz\t3.wav\n\nu\t4.wav\n";
  try {
    ParseManifest(text);
    FAIL() << "expected a duplicate-id error";
  } catch (const FormatError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("line 7"), std::string::npos) << msg;
    EXPECT_NE(msg.find("'u'"), std::string::npos) << msg;
  }
}

TEST(ManifestTest, MalformedLineNamesLine) {
  try {
    ParseManifest("a\tx.wav\nbroken\n");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_THROW(ParseManifest("a\tx.wav\tmany\n"), FormatError);
}

TEST(SeedTest, FnvReferenceValues) {
  EXPECT_EQ(Fnv1a64(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(Fnv1a64("a"), 0xaf63dc4c8601ec8cull);
}

TEST(SeedTest, DeriveUtteranceSeed) {
  // Value from an independent evaluation of mix(fnv(id) ^ seed).
  EXPECT_EQ(DeriveUtteranceSeed(42, "utt1"), 0xdef4da900b629afdull);
  EXPECT_EQ(DeriveUtteranceSeed(7, "x"), DeriveUtteranceSeed(7, "x"));
  EXPECT_NE(DeriveUtteranceSeed(7, "x"), DeriveUtteranceSeed(8, "x"));
  EXPECT_NE(DeriveUtteranceSeed(7, "x"), DeriveUtteranceSeed(7, "y"));
}

Manifest Synthetic(std::size_t n) {
  Manifest m;
  for (std::size_t i = 0; i < n; ++i)
    m.records.push_back({"u" + std::to_string(i), "f" + std::to_string(i), {}});
  return m;
}

TEST(SliceTest, SizesAndNesting) {
  const Manifest full = Synthetic(94500);
  const std::vector<double> fractions = {0.25, 0.5, 0.75, 1.0};
  const auto slices = SliceManifest(full, fractions, 3);
  ASSERT_EQ(slices.size(), 4u);
  EXPECT_EQ(slices[0].size(), 23625u);
  EXPECT_EQ(slices[1].size(), 47250u);
  EXPECT_EQ(slices[2].size(), 70875u);
  EXPECT_EQ(slices[3].size(), 94500u);
  for (std::size_t k = 0; k + 1 < slices.size(); ++k)
    for (std::size_t i = 0; i < slices[k].size(); ++i)
      ASSERT_EQ(slices[k].records[i], slices[k + 1].records[i]);
  std::set<std::string> ids;
  for (const auto& r : slices[3].records) ids.insert(r.id);
  EXPECT_EQ(ids.size(), 94500u);
  const auto again = SliceManifest(full, fractions, 3);
  EXPECT_EQ(again[0].records, slices[0].records);
  const auto other = SliceManifest(full, fractions, 4);
  EXPECT_NE(other[0].records, slices[0].records);
}

TEST(SliceTest, CeilArithmeticAndErrors) {
  EXPECT_EQ(SliceSize(0.5, 3), 2u);
  EXPECT_EQ(SliceSize(1.0, 3), 3u);
  EXPECT_EQ(SliceSize(0.1, 10), 1u);
  const Manifest m = Synthetic(10);
  for (double bad : {0.0, -0.5, 1.5}) {
    const std::vector<double> f = {bad};
    EXPECT_THROW(SliceManifest(m, f, 0), ConfigError) << bad;
  }
  EXPECT_EQ(ParseFractions("0.25,0.5,1"), (std::vector<double>{0.25, 0.5, 1.0}));
  EXPECT_THROW(ParseFractions("0.25,x"), ConfigError);
}

TEST(SpfxTest, SingleCellLayout) {
  const auto bytes = EncodeSpfx(Constant(1, 1, 0.0));
  ASSERT_EQ(bytes.size(), 24u);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "SPFX");
  EXPECT_EQ(bytes[4], 1);  // version, little-endian
  EXPECT_EQ(bytes[5], 0);
  EXPECT_EQ(bytes[6], 1);  // channels
  EXPECT_EQ(bytes[10], 1);  // frames
  for (std::size_t i = 20; i < 24; ++i) EXPECT_EQ(bytes[i], 0);
}

TEST(SpfxTest, RoundTripIsBitIdentical) {
  std::mt19937_64 gen(21);
  FeatureMatrix m = testing::RandomFloatMatrix(50, 40, gen);
  m.set_kind(FeatureKind::kStandardizedMfcc);
  const TempDir dir;
  WriteSpfx(m, dir / "m.spfx");
  const FeatureMatrix back = ReadSpfx(dir / "m.spfx");
  EXPECT_TRUE(BitIdentical(back, m));
  EXPECT_EQ(back.frame_shift_ms(), m.frame_shift_ms());
}

TEST(SpfxTest, FormatErrors) {
  auto bytes = EncodeSpfx(Constant(3, 2, 1.0));
  auto truncated = bytes;
  truncated.pop_back();
  try {
    DecodeSpfx(truncated);
    FAIL();
  } catch (const FormatError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("44"), std::string::npos) << msg;
    EXPECT_NE(msg.find("43"), std::string::npos) << msg;
  }
  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  EXPECT_THROW(DecodeSpfx(bad_magic), FormatError);
  auto bad_version = bytes;
  bad_version[4] = 2;
  EXPECT_THROW(DecodeSpfx(bad_version), FormatError);
  auto bad_kind = bytes;
  bad_kind[18] = 9;
  EXPECT_THROW(DecodeSpfx(bad_kind), FormatError);
  EXPECT_THROW(DecodeSpfx(std::span(bytes).first(10)), FormatError);
}

TEST(StatsFileTest, RoundTrip) {
  const CorpusStats s{{1.0, -2.5, 1e-3}, {0.5, 0.0, 123.456789}, 987};
  const auto bytes = EncodeStats(s);
  EXPECT_EQ(bytes[18], kSpfxStatsKind);
  const CorpusStats back = DecodeStats(bytes);
  EXPECT_EQ(back.mean, s.mean);
  EXPECT_EQ(back.variance, s.variance);
  EXPECT_EQ(back.count, s.count);
  EXPECT_THROW(DecodeStats(EncodeSpfx(Constant(2, 3, 0.0))), FormatError);
}

std::vector<std::vector<int>> ParsePgm(const std::string& text, int& w, int& h) {
  std::istringstream in(text);
  std::string magic;
  int maxval = 0;
  in >> magic >> w >> h >> maxval;
  EXPECT_EQ(magic, "P2");
  EXPECT_EQ(maxval, 255);
  std::vector<std::vector<int>> rows(h, std::vector<int>(w));
  for (auto& row : rows)
    for (int& v : row) in >> v;
  return rows;
}

TEST(RenderTest, ConstantMatrixWithTimeMask) {
  const std::vector<MaskSpec> masks = {{Axis::kTime, 2, 3}};
  const std::string text = RenderMasksPgm(Constant(8, 5, 1.0), masks);
  int w = 0, h = 0;
  const auto rows = ParsePgm(text, w, h);
  EXPECT_EQ(w, 8);
  EXPECT_EQ(h, 5);
  for (const auto& row : rows)
    for (int t = 0; t < w; ++t) EXPECT_EQ(row[t], (t >= 2 && t < 5) ? 0 : 128);
}

TEST(RenderTest, RescaleAndOrientation) {
  // Channel c holds value c, so the top row is the brightest.
  std::vector<double> data;
  for (int t = 0; t < 3; ++t)
    for (int c = 0; c < 4; ++c) data.push_back(c);
  const FeatureMatrix m(3, 4, data, 10.0, FeatureKind::kLogMel);
  int w = 0, h = 0;
  const auto rows = ParsePgm(RenderMasksPgm(m, {}), w, h);
  EXPECT_EQ(rows[0], (std::vector<int>{255, 255, 255}));
  EXPECT_EQ(rows[1], (std::vector<int>{170, 170, 170}));
  EXPECT_EQ(rows[2], (std::vector<int>{85, 85, 85}));
  EXPECT_EQ(rows[3], (std::vector<int>{0, 0, 0}));
}

TEST(RenderTest, LinesStayShort) {
  std::mt19937_64 gen(4);
  const std::string text = RenderMasksPgm(testing::RandomMatrix(300, 3, gen), {});
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) EXPECT_LE(line.size(), 70u);
}

TEST(RunConfigTest, ParsesKeysAndResolvesPaths) {
  const RunConfig c = ParseRunConfig(
      "# comment\nfeatures = iwslt-like\nn_mels = 64\npolicy = libri-best\n"
      "seed = 9\nmode = train\nmanifest = m.tsv\nout = outdir\nworkers = 3\n",
      "/base");
  EXPECT_EQ(c.dsp.n_mels, 64);
  EXPECT_EQ(c.dsp.output, FeatureKind::kMfcc);
  EXPECT_EQ(c.policy, PolicyPreset("libri-best"));
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.mode, Mode::kTrain);
  EXPECT_EQ(c.manifest, fs::path("/base/m.tsv"));
  EXPECT_EQ(c.output_dir, fs::path("/base/outdir"));
  EXPECT_EQ(c.workers, 3);
}

TEST(RunConfigTest, RejectsUnknownOrBadValues) {
  EXPECT_THROW(ParseRunConfig("colour = blue\n"), ConfigError);
  EXPECT_THROW(ParseRunConfig("seed = -1\n"), ConfigError);
  EXPECT_THROW(ParseRunConfig("mode = test\n"), ConfigError);
  EXPECT_THROW(ParseRunConfig("just words\n"), ConfigError);
}

TEST(RunConfigTest, EvalForcesIdentityPolicy) {
  RunConfig c;
  c.policy = PolicyPreset("ld-like");
  EXPECT_TRUE(c.effective_policy().is_identity());
  c.mode = Mode::kTrain;
  EXPECT_EQ(c.effective_policy(), PolicyPreset("ld-like"));
}

// Writes n short chirp-like WAV files plus a manifest and returns its path.
fs::path WriteCorpus(const TempDir& dir, int n) {
  Manifest m;
  for (int i = 0; i < n; ++i) {
    PcmSignal s{std::vector<double>(4000 + 160 * i), 16000};
    for (std::size_t k = 0; k < s.samples.size(); ++k)
      s.samples[k] = 0.3 * std::sin(2 * std::numbers::pi * (200.0 + 50 * i) * k / 16000.0);
    const std::string name = "w" + std::to_string(i) + ".wav";
    WriteWav(s, dir / name);
    m.records.push_back({"utt" + std::to_string(i), name, {}});
  }
  WriteManifest(m, dir / "manifest.tsv");
  return dir / "manifest.tsv";
}

RunConfig BaseConfig(const fs::path& manifest, const fs::path& out) {
  RunConfig c;
  c.dsp = LibriSpeechLikeDsp();
  c.manifest = manifest;
  c.output_dir = out;
  c.policy = PolicyPreset("libri-best");
  c.seed = 17;
  return c;
}

TEST(RunPipelineTest, EvalModeEqualsPlainExtraction) {
  const TempDir dir;
  const fs::path manifest = WriteCorpus(dir, 3);
  const RunConfig c = BaseConfig(manifest, dir / "out");
  const RunSummary s = RunPipeline(c);
  EXPECT_EQ(s.exit_code(), 0);
  EXPECT_EQ(s.masks_drawn(), 0u);
  for (int i = 0; i < 3; ++i) {
    const FeatureMatrix plain =
        Extract(ReadWav(dir / ("w" + std::to_string(i) + ".wav")), c.dsp);
    const std::string id = "utt" + std::to_string(i);
    EXPECT_EQ(ReadFileBytes(dir / "out" / (id + ".spfx")), EncodeSpfx(plain));
    EXPECT_EQ(ReadText(dir / "out" / (id + ".masks")), "");
  }
}

TEST(RunPipelineTest, TrainModeDrawsPresetMasks) {
  const TempDir dir;
  const fs::path manifest = WriteCorpus(dir, 10);
  RunConfig c = BaseConfig(manifest, dir / "out");
  c.mode = Mode::kTrain;
  const RunSummary s = RunPipeline(c);
  EXPECT_EQ(s.exit_code(), 0);
  EXPECT_EQ(s.processed(), 10u);
  EXPECT_EQ(s.masks_drawn(), 30u);
  for (int i = 0; i < 10; ++i) {
    const auto masks =
        ParseMaskLines(ReadText(dir / "out" / ("utt" + std::to_string(i) + ".masks")));
    int time = 0, freq = 0;
    for (const auto& m : masks) ++(m.axis == Axis::kTime ? time : freq);
    EXPECT_EQ(time, 2);
    EXPECT_EQ(freq, 1);
  }
}

TEST(RunPipelineTest, DeterministicAcrossRunsAndWorkers) {
  const TempDir dir;
  const fs::path manifest = WriteCorpus(dir, 6);
  RunConfig a = BaseConfig(manifest, dir / "a");
  a.mode = Mode::kTrain;
  RunConfig b = a;
  b.output_dir = dir / "b";
  b.workers = 4;
  RunPipeline(a);
  RunPipeline(b);
  for (const auto& entry : fs::directory_iterator(dir / "a")) {
    const fs::path other = dir / "b" / entry.path().filename();
    EXPECT_EQ(ReadFileBytes(entry.path()), ReadFileBytes(other)) << other;
  }
}

TEST(RunPipelineTest, StandardizesWithStats) {
  const TempDir dir;
  const fs::path manifest = WriteCorpus(dir, 4);
  RunConfig c = BaseConfig(manifest, dir / "out");
  const CorpusStats stats = ComputeManifestStats(manifest, c.dsp);
  WriteStats(stats, dir / "stats.bin");
  c.stats = dir / "stats.bin";
  RunPipeline(c);
  std::vector<FeatureMatrix> outputs;
  for (int i = 0; i < 4; ++i)
    outputs.push_back(ReadSpfx(dir / "out" / ("utt" + std::to_string(i) + ".spfx")));
  EXPECT_EQ(outputs[0].kind(), FeatureKind::kStandardizedLogMel);
  const CorpusStats after = AccumulateStats(outputs);
  for (std::size_t ch = 0; ch < after.num_channels(); ++ch) {
    // Float32 storage limits the achievable precision here.
    EXPECT_LT(std::abs(after.mean[ch]), 1e-5);
    if (stats.variance[ch] > 1e-8) EXPECT_NEAR(after.variance[ch], 1.0, 1e-5);
  }
}

TEST(RunPipelineTest, CollectsPerUtteranceFailures) {
  const TempDir dir;
  const fs::path manifest = WriteCorpus(dir, 2);
  WriteFileBytes(dir / "w1.wav", std::vector<std::uint8_t>{'R', 'I', 'F', 'F'});
  const RunSummary s = RunPipeline(BaseConfig(manifest, dir / "out"));
  EXPECT_EQ(s.processed(), 1u);
  EXPECT_EQ(s.failed(), 1u);
  EXPECT_EQ(s.exit_code(), 1);
  EXPECT_TRUE(s.utterances[1].error.has_value());
  EXPECT_TRUE(fs::exists(dir / "out" / "utt0.spfx"));
  EXPECT_TRUE(fs::exists(dir / "out" / "summary.txt"));
}

}  // namespace
}  // namespace specaug
