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

#include "specaug/run_config.h"

#include <fstream>
#include <sstream>
#include <string>

#include "specaug/error.h"
#include "text_util.h"

namespace specaug {
namespace {

template <typename T>
T Parse(std::string_view key, std::string_view value) {
  const auto v = internal::ParseNumber<T>(value);
  if (!v) {
    throw ConfigError("config key '" + std::string(key) + "': cannot parse '" +
                      std::string(value) + "'");
  }
  return *v;
}

}  // namespace

Mode ParseMode(std::string_view text) {
  if (text == "train") return Mode::kTrain;
  if (text == "eval") return Mode::kEval;
  throw ConfigError("mode must be train or eval, got '" + std::string(text) + "'");
}

std::string_view ModeName(Mode mode) {
  return mode == Mode::kTrain ? "train" : "eval";
}

void SetRunConfigKey(RunConfig& c, std::string_view key, std::string_view value) {
  value = internal::Trim(value);
  if (key == "features") {
    c.dsp = DspPreset(value);
  } else if (key == "output") {
    if (value == "log_mel") {
      c.dsp.output = FeatureKind::kLogMel;
    } else if (value == "mfcc") {
      c.dsp.output = FeatureKind::kMfcc;
    } else {
      throw ConfigError("output must be log_mel or mfcc, got '" +
                        std::string(value) + "'");
    }
  } else if (key == "pre_emphasis") {
    c.dsp.pre_emphasis = Parse<double>(key, value);
  } else if (key == "frame_len_ms") {
    c.dsp.frame_len_ms = Parse<double>(key, value);
  } else if (key == "frame_shift_ms") {
    c.dsp.frame_shift_ms = Parse<double>(key, value);
  } else if (key == "n_fft") {
    c.dsp.n_fft = Parse<int>(key, value);
  } else if (key == "n_mels") {
    c.dsp.n_mels = Parse<int>(key, value);
  } else if (key == "n_coeffs") {
    c.dsp.n_coeffs = Parse<int>(key, value);
  } else if (key == "log_floor") {
    c.dsp.log_floor = Parse<double>(key, value);
  } else if (key == "fmin_hz") {
    c.dsp.fmin_hz = Parse<double>(key, value);
  } else if (key == "fmax_hz") {
    c.dsp.fmax_hz = Parse<double>(key, value);
  } else if (key == "policy") {
    c.policy = ParsePolicy(value);
  } else if (key == "seed") {
    c.seed = Parse<std::uint64_t>(key, value);
  } else if (key == "mode") {
    c.mode = ParseMode(value);
  } else if (key == "manifest") {
    c.manifest = std::string(value);
  } else if (key == "out") {
    c.output_dir = std::string(value);
  } else if (key == "stats") {
    c.stats = std::filesystem::path(std::string(value));
  } else if (key == "workers") {
    c.workers = Parse<int>(key, value);
    if (c.workers < 1) throw ConfigError("workers must be >= 1");
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

RunConfig ParseRunConfig(std::string_view text,
                         const std::filesystem::path& base_dir) {
  RunConfig config;
  const auto lines = internal::Lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = internal::Trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(i + 1) +
                        ": expected key = value");
    }
    const auto key = internal::Trim(line.substr(0, eq));
    const auto value = internal::Trim(line.substr(eq + 1));
    try {
      SetRunConfigKey(config, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError("config line " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  auto resolve = [&](std::filesystem::path& p) {
    if (!p.empty() && p.is_relative() && !base_dir.empty()) p = base_dir / p;
  };
  resolve(config.manifest);
  resolve(config.output_dir);
  if (config.stats) resolve(*config.stats);
  return config;
}

RunConfig ReadRunConfig(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return ParseRunConfig(buf.str(), path.parent_path());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace specaug
