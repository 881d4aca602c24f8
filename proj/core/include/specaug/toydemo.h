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

// Toy regularization experiment: a linear softmax classifier over
// time-pooled synthetic "spectrograms", trained with and without masking to
// compare the final train/dev loss gap. This is a stand-in for a sequence
// model; only the direction of the effect is meaningful.

#ifndef SPECAUG_TOYDEMO_H_
#define SPECAUG_TOYDEMO_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "specaug/augment.h"
#include "specaug/feature_matrix.h"

namespace specaug::toy {

struct SyntheticParams {
  int num_classes = 4;
  int num_channels = 40;
  int num_frames = 20;
  double noise_stddev = 1.0;
  // Class templates are N(0, template_scale^2) per channel unless given.
  double template_scale = 0.08;
  std::vector<std::vector<double>> templates;
  int train_size = 40;
  int dev_size = 400;
};

struct Example {
  std::string id;
  FeatureMatrix features;
  int label = 0;
};

struct SyntheticDataset {
  SyntheticParams params;
  std::vector<std::vector<double>> templates;
  std::vector<Example> train;
  std::vector<Example> dev;
};

// Each example is its class template repeated over every frame plus i.i.d.
// Gaussian noise; labels cycle 0..K-1. Train and dev use separate streams
// derived from seed. Both splits are standardized with train statistics.
// Throws ConfigError unless K >= 2, nu >= 2, T >= 4, sigma > 0.
SyntheticDataset GenerateDataset(const SyntheticParams& params,
                                 std::uint64_t seed);

struct ToyModel {
  int num_classes = 0;
  int num_channels = 0;
  std::vector<double> weights;  // K x nu, row-major
  std::vector<double> bias;     // K

  static ToyModel Zeros(int num_classes, int num_channels);
};

struct Prediction {
  double nll = 0.0;
  std::vector<double> probabilities;
};

// Time-mean of the frames.
std::vector<double> PoolFrames(const FeatureMatrix& features);

// softmax(W * pooled + b) with max subtraction; nll = -log p[label].
Prediction ForwardNll(const ToyModel& model, const Example& example);
Prediction ForwardPooled(const ToyModel& model, std::span<const double> pooled,
                         int label);

struct ModelGradient {
  std::vector<double> weights;
  std::vector<double> bias;
};

// Gradient of the batch-mean nll: mean of (p - onehot) x pooled.
// Throws ContractError on an empty batch.
ModelGradient Gradient(const ToyModel& model, std::span<const Example> batch);

double MeanNll(const ToyModel& model, std::span<const Example> examples);
double Accuracy(const ToyModel& model, std::span<const Example> examples);

struct EpochLoss {
  int epoch = 0;
  double train_nll = 0.0;
  double dev_nll = 0.0;
};

struct LearningCurve {
  std::vector<EpochLoss> epochs;

  double final_gap() const {
    return epochs.back().dev_nll - epochs.back().train_nll;
  }
  // "epoch,train_nll,dev_nll" header plus one row per epoch; epoch 0 is the
  // initial model.
  std::string ToCsv() const;
};

struct TrainOptions {
  std::optional<AugmentPolicy> policy;  // nullopt: no masking
  int epochs = 300;
  double learning_rate = 0.5;
  std::uint64_t seed = 0;  // mask stream only
};

// Full-batch gradient descent from a zero model. With a policy, every
// training example is re-masked each epoch using
// SplitMix64(DeriveUtteranceSeed(seed, id + ":" + epoch)). Losses are
// measured on the unmasked train and dev sets after each update.
// Throws DivergenceError if a loss becomes non-finite.
LearningCurve Train(const SyntheticDataset& data, const TrainOptions& options,
                    ToyModel* final_model = nullptr);

// Default experiment: data, mask policy and optimizer settings.
struct DemoConfig {
  SyntheticParams data;
  AugmentPolicy policy{12, 2, 10, 2};
  int epochs = 300;
  double learning_rate = 0.5;
};

struct PairedRun {
  std::uint64_t seed = 0;
  LearningCurve baseline;
  LearningCurve masked;

  bool masking_shrinks_gap() const {
    return masked.final_gap() < baseline.final_gap();
  }
};

// For each seed: one dataset, trained once without and once with masking.
std::vector<PairedRun> RunPairedDemo(const DemoConfig& config,
                                     std::span<const std::uint64_t> seeds);

}  // namespace specaug::toy

#endif  // SPECAUG_TOYDEMO_H_
