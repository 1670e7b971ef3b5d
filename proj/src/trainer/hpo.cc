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

#include "miaudit/trainer/hpo.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "absl/strings/str_cat.h"
#include "miaudit/common/seed.h"
#include "miaudit/common/status_macros.h"
#include "miaudit/data/sampling.h"

namespace miaudit {
namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kPi = 3.14159265358979323846;

double NormalCdf(double z) { return 0.5 * std::erfc(-z / kSqrt2); }

// One-dimensional Parzen mixture on [0, 1] with an extra wide prior
// component centred at 0.5.
class ParzenEstimator {
 public:
  explicit ParzenEstimator(const std::vector<double>& observed) {
    // (centre, is_prior); the prior keeps full width.
    std::vector<std::pair<double, bool>> centres;
    for (double c : observed) centres.emplace_back(c, false);
    centres.emplace_back(0.5, true);
    std::sort(centres.begin(), centres.end());
    const std::size_t n = centres.size();
    const double min_sigma = 1.0 / std::min<double>(100.0, 1.0 + n);
    for (std::size_t i = 0; i < n; ++i) {
      const double c = centres[i].first;
      const double left = c - (i == 0 ? 0.0 : centres[i - 1].first);
      const double right = (i + 1 == n ? 1.0 : centres[i + 1].first) - c;
      mus_.push_back(c);
      sigmas_.push_back(centres[i].second
                            ? 1.0
                            : std::clamp(std::max(left, right), min_sigma, 1.0));
    }
  }

  double LogPdf(double u) const {
    double total = 0.0;
    for (std::size_t i = 0; i < mus_.size(); ++i) {
      const double z = (u - mus_[i]) / sigmas_[i];
      const double mass = NormalCdf((1.0 - mus_[i]) / sigmas_[i]) -
                          NormalCdf(-mus_[i] / sigmas_[i]);
      total += std::exp(-0.5 * z * z) /
               (sigmas_[i] * std::sqrt(2.0 * kPi) * mass);
    }
    return std::log(total / static_cast<double>(mus_.size()));
  }

  double Sample(std::mt19937_64& rng) const {
    std::uniform_int_distribution<std::size_t> pick(0, mus_.size() - 1);
    const std::size_t i = pick(rng);
    std::normal_distribution<double> normal(mus_[i], sigmas_[i]);
    for (int attempt = 0; attempt < 1000; ++attempt) {
      const double u = normal(rng);
      if (u >= 0.0 && u <= 1.0) return u;
    }
    return std::clamp(mus_[i], 0.0, 1.0);
  }

 private:
  std::vector<double> mus_;
  std::vector<double> sigmas_;
};

}  // namespace

absl::Status HpoRanges::Validate() const {
  if (min_epochs < 1 || max_epochs > 200 || min_epochs > max_epochs) {
    return absl::InvalidArgumentError("epochs range must lie in [1, 200]");
  }
  if (min_batch_size < 10 || max_batch_size > 1000 ||
      min_batch_size > max_batch_size) {
    return absl::InvalidArgumentError(
        "batch_size range must lie in [10, 1000]");
  }
  if (!(min_learning_rate >= 1e-7) || !(max_learning_rate <= 1e-2) ||
      !(min_learning_rate <= max_learning_rate)) {
    return absl::InvalidArgumentError(
        "learning_rate range must lie in [1e-7, 1e-2]");
  }
  if (!(l2 >= 0)) return absl::InvalidArgumentError("l2 must be >= 0");
  return absl::OkStatus();
}

std::string_view HpoStrategyName(HpoStrategy strategy) {
  return strategy == HpoStrategy::kTpe ? "tpe" : "random";
}

absl::StatusOr<HpoStrategy> ParseHpoStrategy(std::string_view name) {
  if (name == "tpe") return HpoStrategy::kTpe;
  if (name == "random") return HpoStrategy::kRandom;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown HPO strategy '", std::string(name), "' (random | tpe)"));
}

ConfigSampler::ConfigSampler(const HpoRanges& ranges, HpoStrategy strategy,
                             int trials, uint64_t seed)
    : ranges_(ranges),
      strategy_(strategy),
      warmup_((std::max(trials, 1) + 3) / 4),
      seed_(seed) {}

TrainConfig ConfigSampler::FromUnit(const Point& u) const {
  TrainConfig config;
  config.epochs = ranges_.min_epochs +
                  static_cast<int>(std::lround(
                      u[0] * (ranges_.max_epochs - ranges_.min_epochs)));
  config.batch_size =
      ranges_.min_batch_size +
      static_cast<int>(std::lround(
          u[1] * (ranges_.max_batch_size - ranges_.min_batch_size)));
  const double lo = std::log(ranges_.min_learning_rate);
  const double hi = std::log(ranges_.max_learning_rate);
  config.learning_rate = std::clamp(std::exp(lo + u[2] * (hi - lo)),
                                    ranges_.min_learning_rate,
                                    ranges_.max_learning_rate);
  config.l2 = ranges_.l2;
  return config;
}

ConfigSampler::Point ConfigSampler::ToUnit(const TrainConfig& config) const {
  auto unit = [](double v, double lo, double hi) {
    return hi > lo ? std::clamp((v - lo) / (hi - lo), 0.0, 1.0) : 0.5;
  };
  return {unit(config.epochs, ranges_.min_epochs, ranges_.max_epochs),
          unit(config.batch_size, ranges_.min_batch_size,
               ranges_.max_batch_size),
          unit(std::log(config.learning_rate),
               std::log(ranges_.min_learning_rate),
               std::log(ranges_.max_learning_rate))};
}

ConfigSampler::Point ConfigSampler::SampleTpe(std::mt19937_64& rng) const {
  const std::size_t n = points_.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores_[a] > scores_[b];
  });
  const std::size_t n_good = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(kTpeGamma * n)));

  std::vector<ParzenEstimator> good;
  std::vector<ParzenEstimator> bad;
  for (int dim = 0; dim < 3; ++dim) {
    std::vector<double> good_centres;
    std::vector<double> bad_centres;
    for (std::size_t r = 0; r < n; ++r) {
      (r < n_good ? good_centres : bad_centres).push_back(points_[order[r]][dim]);
    }
    good.emplace_back(good_centres);
    bad.emplace_back(bad_centres);
  }

  Point best{};
  double best_score = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < kTpeCandidates; ++k) {
    Point candidate;
    double score = 0.0;
    for (int dim = 0; dim < 3; ++dim) {
      candidate[dim] = good[dim].Sample(rng);
      score += good[dim].LogPdf(candidate[dim]) - bad[dim].LogPdf(candidate[dim]);
    }
    if (score > best_score) {
      best_score = score;
      best = candidate;
    }
  }
  return best;
}

TrainConfig ConfigSampler::Suggest() {
  const int trial = suggested_++;
  std::mt19937_64 rng(DeriveSeed(seed_, "hpo-suggest",
                                 {static_cast<uint64_t>(trial)}));
  if (strategy_ == HpoStrategy::kRandom || trial < warmup_ ||
      points_.empty()) {
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    Point u;
    for (double& v : u) v = uniform(rng);
    return FromUnit(u);
  }
  return FromUnit(SampleTpe(rng));
}

void ConfigSampler::Observe(const TrainConfig& config, double score) {
  points_.push_back(ToUnit(config));
  scores_.push_back(score);
}

absl::StatusOr<HpoResult> SearchConfigs(
    const std::function<double(const TrainConfig&, int trial)>& objective,
    const HpoRanges& ranges, int trials, HpoStrategy strategy, uint64_t seed) {
  if (trials < 1) return absl::InvalidArgumentError("trials must be >= 1");
  RETURN_IF_ERROR(ranges.Validate());
  ConfigSampler sampler(ranges, strategy, trials, seed);
  HpoResult result;
  for (int t = 0; t < trials; ++t) {
    TrainConfig config = sampler.Suggest();
    const double score = objective(config, t);
    sampler.Observe(config, score);
    result.trials.push_back({config, score});
    if (t == 0 || score > result.trials[result.best_index].score) {
      result.best_index = t;
    }
  }
  result.best = result.trials[result.best_index].config;
  return result;
}

absl::StatusOr<HpoResult> HpoSearch(const FeatureDataset& dataset,
                                    std::span<const SampleId> train_ids,
                                    const HpoRanges& ranges, int trials,
                                    HpoStrategy strategy, uint64_t seed) {
  ASSIGN_OR_RETURN(HpoSplit split,
                   MakeHpoSplit(dataset, train_ids, DeriveSeed(seed, "split")));
  const TrainingData train = Gather(dataset, split.train_ids);
  const TrainingData val = Gather(dataset, split.val_ids);
  auto objective = [&](const TrainConfig& config, int trial) {
    auto head = TrainHead(train, config,
                          DeriveSeed(seed, "trial", {static_cast<uint64_t>(trial)}));
    return head.ok() ? Accuracy(*head, val) : 0.0;
  };
  ASSIGN_OR_RETURN(HpoResult result,
                   SearchConfigs(objective, ranges, trials, strategy, seed));
  result.stratified = split.stratified;
  return result;
}

}  // namespace miaudit
