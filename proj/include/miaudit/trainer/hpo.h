// Copyright 2026 The MIAudit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Hyperparameter search over (epochs, batch size, learning rate) with either
// random search or a tree-structured Parzen estimator.

#ifndef MIAUDIT_TRAINER_HPO_H_
#define MIAUDIT_TRAINER_HPO_H_

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "miaudit/data/feature_dataset.h"
#include "miaudit/trainer/linear_head.h"

namespace miaudit {

struct HpoRanges {
  int min_epochs = 1;
  int max_epochs = 200;
  int min_batch_size = 10;
  int max_batch_size = 1000;
  double min_learning_rate = 1e-7;  // sampled log-uniformly
  double max_learning_rate = 1e-2;
  double l2 = 0.0;  // not searched; copied into every suggestion

  // Ranges must be ordered and lie inside the TrainConfig bounds.
  absl::Status Validate() const;
};

enum class HpoStrategy { kRandom, kTpe };

std::string_view HpoStrategyName(HpoStrategy strategy);
absl::StatusOr<HpoStrategy> ParseHpoStrategy(std::string_view name);

inline constexpr double kTpeGamma = 0.25;
inline constexpr int kTpeCandidates = 24;

// Sequential suggest/observe loop. The first ceil(trials / 4) suggestions of
// the TPE strategy are uniform warmup draws; later ones maximize
// l(x) / g(x), where l and g are Parzen mixtures fitted to the best
// ceil(0.25 * n) and the remaining observations in the unit cube.
class ConfigSampler {
 public:
  ConfigSampler(const HpoRanges& ranges, HpoStrategy strategy, int trials,
                uint64_t seed);

  TrainConfig Suggest();
  void Observe(const TrainConfig& config, double score);

  int warmup_trials() const { return warmup_; }

 private:
  using Point = std::array<double, 3>;

  TrainConfig FromUnit(const Point& u) const;
  Point ToUnit(const TrainConfig& config) const;
  Point SampleTpe(std::mt19937_64& rng) const;

  HpoRanges ranges_;
  HpoStrategy strategy_;
  int warmup_;
  uint64_t seed_;
  int suggested_ = 0;
  std::vector<Point> points_;
  std::vector<double> scores_;
};

struct HpoTrial {
  TrainConfig config;
  double score = 0.0;
};

struct HpoResult {
  TrainConfig best;
  int best_index = 0;
  std::vector<HpoTrial> trials;
  bool stratified = true;  // from the underlying HPO split
};

// Generic maximization loop; ties go to the lowest trial index.
absl::StatusOr<HpoResult> SearchConfigs(
    const std::function<double(const TrainConfig&, int trial)>& objective,
    const HpoRanges& ranges, int trials, HpoStrategy strategy, uint64_t seed);

// Splits `train_ids` with MakeHpoSplit and maximizes validation accuracy of
// heads trained on the HPO-train half. Diverged trials score 0.
absl::StatusOr<HpoResult> HpoSearch(const FeatureDataset& dataset,
                                    std::span<const SampleId> train_ids,
                                    const HpoRanges& ranges, int trials,
                                    HpoStrategy strategy, uint64_t seed);

}  // namespace miaudit

#endif  // MIAUDIT_TRAINER_HPO_H_
