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

#include "specaug/toydemo.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "specaug/error.h"
#include "specaug/manifest.h"
#include "specaug/rng.h"
#include "specaug/stats.h"

namespace specaug::toy {
namespace {

void ValidateParams(const SyntheticParams& p) {
  if (p.num_classes < 2) throw ConfigError("need at least 2 classes");
  if (p.num_channels < 2) throw ConfigError("need at least 2 channels");
  if (p.num_frames < 4) throw ConfigError("need at least 4 frames per example");
  if (!(p.noise_stddev > 0.0)) throw ConfigError("noise_stddev must be > 0");
  if (p.train_size < 1 || p.dev_size < 1) {
    throw ConfigError("train and dev sizes must be >= 1");
  }
  if (!p.templates.empty()) {
    if (p.templates.size() != static_cast<std::size_t>(p.num_classes)) {
      throw ConfigError("need one template per class");
    }
    for (const auto& t : p.templates) {
      if (t.size() != static_cast<std::size_t>(p.num_channels)) {
        throw ConfigError("template length must equal num_channels");
      }
    }
  }
}

std::vector<Example> GenerateSplit(const SyntheticParams& p,
                                   const std::vector<std::vector<double>>& templates,
                                   int size, const std::string& prefix,
                                   SplitMix64 rng) {
  const auto frames = static_cast<std::size_t>(p.num_frames);
  const auto channels = static_cast<std::size_t>(p.num_channels);
  std::vector<Example> split;
  split.reserve(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) {
    const int label = i % p.num_classes;
    std::vector<double> data(frames * channels);
    for (std::size_t t = 0; t < frames; ++t) {
      for (std::size_t c = 0; c < channels; ++c) {
        data[t * channels + c] =
            templates[static_cast<std::size_t>(label)][c] +
            p.noise_stddev * StandardNormal(rng);
      }
    }
    split.push_back({prefix + std::to_string(i),
                     FeatureMatrix(frames, channels, std::move(data), 10.0,
                                   FeatureKind::kLogMel),
                     label});
  }
  return split;
}

void Softmax(std::vector<double>& logits) {
  const double top = *std::ranges::max_element(logits);
  double sum = 0.0;
  for (double& z : logits) {
    z = std::exp(z - top);
    sum += z;
  }
  for (double& z : logits) z /= sum;
}

struct PooledExample {
  std::vector<double> pooled;
  int label;
};

std::vector<PooledExample> PoolAll(std::span<const Example> examples) {
  std::vector<PooledExample> out;
  out.reserve(examples.size());
  for (const auto& e : examples) out.push_back({PoolFrames(e.features), e.label});
  return out;
}

double MeanNllPooled(const ToyModel& model, std::span<const PooledExample> data) {
  double total = 0.0;
  for (const auto& e : data) total += ForwardPooled(model, e.pooled, e.label).nll;
  return total / static_cast<double>(data.size());
}

ModelGradient GradientPooled(const ToyModel& model,
                             std::span<const PooledExample> batch) {
  const auto k = static_cast<std::size_t>(model.num_classes);
  const auto nu = static_cast<std::size_t>(model.num_channels);
  ModelGradient g{std::vector<double>(k * nu, 0.0), std::vector<double>(k, 0.0)};
  for (const auto& e : batch) {
    auto p = ForwardPooled(model, e.pooled, e.label).probabilities;
    p[static_cast<std::size_t>(e.label)] -= 1.0;
    for (std::size_t i = 0; i < k; ++i) {
      g.bias[i] += p[i];
      for (std::size_t c = 0; c < nu; ++c) g.weights[i * nu + c] += p[i] * e.pooled[c];
    }
  }
  const double inv = 1.0 / static_cast<double>(batch.size());
  for (double& v : g.weights) v *= inv;
  for (double& v : g.bias) v *= inv;
  return g;
}

}  // namespace

SyntheticDataset GenerateDataset(const SyntheticParams& params,
                                 std::uint64_t seed) {
  ValidateParams(params);
  SyntheticDataset ds;
  ds.params = params;
  ds.templates = params.templates;
  if (ds.templates.empty()) {
    SplitMix64 rng(DeriveUtteranceSeed(seed, "templates"));
    ds.templates.assign(static_cast<std::size_t>(params.num_classes),
                        std::vector<double>(static_cast<std::size_t>(params.num_channels)));
    for (auto& t : ds.templates) {
      for (double& v : t) v = params.template_scale * StandardNormal(rng);
    }
  }
  ds.train = GenerateSplit(params, ds.templates, params.train_size, "train-",
                           SplitMix64(DeriveUtteranceSeed(seed, "train")));
  ds.dev = GenerateSplit(params, ds.templates, params.dev_size, "dev-",
                         SplitMix64(DeriveUtteranceSeed(seed, "dev")));

  StatsAccumulator acc;
  for (const auto& e : ds.train) acc.Add(e.features);
  const CorpusStats stats = acc.Finish();
  for (auto* split : {&ds.train, &ds.dev}) {
    for (auto& e : *split) e.features = Standardize(e.features, stats);
  }
  return ds;
}

ToyModel ToyModel::Zeros(int num_classes, int num_channels) {
  ToyModel m;
  m.num_classes = num_classes;
  m.num_channels = num_channels;
  m.weights.assign(static_cast<std::size_t>(num_classes) *
                       static_cast<std::size_t>(num_channels),
                   0.0);
  m.bias.assign(static_cast<std::size_t>(num_classes), 0.0);
  return m;
}

std::vector<double> PoolFrames(const FeatureMatrix& features) {
  std::vector<double> pooled(features.num_channels(), 0.0);
  for (std::size_t t = 0; t < features.num_frames(); ++t) {
    const auto row = features.frame(t);
    for (std::size_t c = 0; c < row.size(); ++c) pooled[c] += row[c];
  }
  for (double& v : pooled) v /= static_cast<double>(features.num_frames());
  return pooled;
}

Prediction ForwardPooled(const ToyModel& model, std::span<const double> pooled,
                         int label) {
  const auto k = static_cast<std::size_t>(model.num_classes);
  const auto nu = static_cast<std::size_t>(model.num_channels);
  if (pooled.size() != nu) {
    throw ContractError("example has " + std::to_string(pooled.size()) +
                        " channels, model expects " + std::to_string(nu));
  }
  if (label < 0 || static_cast<std::size_t>(label) >= k) {
    throw ContractError("label " + std::to_string(label) + " out of range");
  }
  Prediction out;
  out.probabilities.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    double z = model.bias[i];
    for (std::size_t c = 0; c < nu; ++c) z += model.weights[i * nu + c] * pooled[c];
    out.probabilities[i] = z;
  }
  // nll from log-sum-exp so that confident predictions do not underflow.
  const double top = *std::ranges::max_element(out.probabilities);
  double sum = 0.0;
  for (double z : out.probabilities) sum += std::exp(z - top);
  out.nll = top + std::log(sum) - out.probabilities[static_cast<std::size_t>(label)];
  Softmax(out.probabilities);
  return out;
}

Prediction ForwardNll(const ToyModel& model, const Example& example) {
  return ForwardPooled(model, PoolFrames(example.features), example.label);
}

ModelGradient Gradient(const ToyModel& model, std::span<const Example> batch) {
  if (batch.empty()) throw ContractError("gradient of an empty batch");
  const auto pooled = PoolAll(batch);
  return GradientPooled(model, pooled);
}

double MeanNll(const ToyModel& model, std::span<const Example> examples) {
  if (examples.empty()) throw ContractError("mean nll of an empty set");
  const auto pooled = PoolAll(examples);
  return MeanNllPooled(model, pooled);
}

double Accuracy(const ToyModel& model, std::span<const Example> examples) {
  if (examples.empty()) throw ContractError("accuracy of an empty set");
  std::size_t correct = 0;
  for (const auto& e : examples) {
    const auto p = ForwardNll(model, e).probabilities;
    const auto best = std::ranges::max_element(p) - p.begin();
    correct += best == e.label;
  }
  return static_cast<double>(correct) / static_cast<double>(examples.size());
}

std::string LearningCurve::ToCsv() const {
  std::string out = "epoch,train_nll,dev_nll\n";
  char buf[96];
  for (const auto& e : epochs) {
    std::snprintf(buf, sizeof(buf), "%d,%.10g,%.10g\n", e.epoch, e.train_nll,
                  e.dev_nll);
    out += buf;
  }
  return out;
}

LearningCurve Train(const SyntheticDataset& data, const TrainOptions& options,
                    ToyModel* final_model) {
  if (options.epochs < 1) throw ConfigError("epochs must be >= 1");
  if (!(options.learning_rate >= 0.0)) {
    throw ConfigError("learning rate must be >= 0");
  }
  if (data.train.empty() || data.dev.empty()) {
    throw ContractError("dataset needs train and dev examples");
  }
  if (options.policy) ValidatePolicy(*options.policy);

  ToyModel model = ToyModel::Zeros(data.params.num_classes,
                                   data.params.num_channels);
  const auto clean_train = PoolAll(data.train);
  const auto clean_dev = PoolAll(data.dev);

  LearningCurve curve;
  auto record = [&](int epoch) {
    const double train_nll = MeanNllPooled(model, clean_train);
    const double dev_nll = MeanNllPooled(model, clean_dev);
    if (!std::isfinite(train_nll) || !std::isfinite(dev_nll)) {
      throw DivergenceError("training diverged at epoch " + std::to_string(epoch),
                            epoch);
    }
    curve.epochs.push_back({epoch, train_nll, dev_nll});
  };
  record(0);

  std::vector<PooledExample> masked(clean_train.size());
  for (int epoch = 1; epoch <= options.epochs; ++epoch) {
    std::span<const PooledExample> batch = clean_train;
    if (options.policy) {
      for (std::size_t i = 0; i < data.train.size(); ++i) {
        const Example& e = data.train[i];
        SplitMix64 rng(DeriveUtteranceSeed(
            options.seed, e.id + ":" + std::to_string(epoch)));
        masked[i] = {PoolFrames(Augment(e.features, *options.policy, rng).features),
                     e.label};
      }
      batch = masked;
    }
    const ModelGradient g = GradientPooled(model, batch);
    for (std::size_t i = 0; i < model.weights.size(); ++i) {
      model.weights[i] -= options.learning_rate * g.weights[i];
    }
    for (std::size_t i = 0; i < model.bias.size(); ++i) {
      model.bias[i] -= options.learning_rate * g.bias[i];
    }
    record(epoch);
  }
  if (final_model) *final_model = std::move(model);
  return curve;
}

std::vector<PairedRun> RunPairedDemo(const DemoConfig& config,
                                     std::span<const std::uint64_t> seeds) {
  std::vector<PairedRun> runs;
  for (std::uint64_t seed : seeds) {
    const SyntheticDataset data = GenerateDataset(config.data, seed);
    PairedRun run;
    run.seed = seed;
    run.baseline = Train(data, {std::nullopt, config.epochs,
                                config.learning_rate, seed});
    run.masked = Train(data, {config.policy, config.epochs,
                              config.learning_rate, seed});
    runs.push_back(std::move(run));
  }
  return runs;
}

}  // namespace specaug::toy
