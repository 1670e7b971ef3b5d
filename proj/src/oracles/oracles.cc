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


#include "miaudit/oracles/oracles.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace miaudit::oracles {

Vertices BruteForceRoc(std::span<const double> member_scores,
                       std::span<const double> nonmember_scores) {
  std::vector<double> thresholds;
  for (double s : member_scores) thresholds.push_back(s);
  for (double s : nonmember_scores) thresholds.push_back(s);
  std::sort(thresholds.begin(), thresholds.end(), std::greater<>());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                   thresholds.end());
  thresholds.insert(thresholds.begin(), std::numeric_limits<double>::infinity());

  Vertices out;
  for (double t : thresholds) {
    std::size_t tp = 0;
    std::size_t fp = 0;
    for (double s : member_scores) tp += s >= t ? 1 : 0;
    for (double s : nonmember_scores) fp += s >= t ? 1 : 0;
    out.emplace_back(static_cast<double>(fp) / nonmember_scores.size(),
                     static_cast<double>(tp) / member_scores.size());
  }
  return out;
}

double BruteForceTprAtFpr(std::span<const double> member_scores,
                          std::span<const double> nonmember_scores,
                          double fpr_target) {
  double best = 0.0;
  for (const auto& [fpr, tpr] : BruteForceRoc(member_scores, nonmember_scores)) {
    if (fpr <= fpr_target && tpr > best) best = tpr;
  }
  return best;
}

double MannWhitneyAuc(std::span<const double> member_scores,
                      std::span<const double> nonmember_scores) {
  double wins = 0.0;
  for (double m : member_scores) {
    for (double n : nonmember_scores) {
      if (m > n) {
        wins += 1.0;
      } else if (m == n) {
        wins += 0.5;
      }
    }
  }
  return wins / (static_cast<double>(member_scores.size()) *
                 static_cast<double>(nonmember_scores.size()));
}

double ReferenceLoss(const LinearHead& head, const Eigen::VectorXd& x, int y) {
  const Eigen::VectorXd z = head.weights() * x + head.bias();
  double top = z[0];
  for (int c = 1; c < z.size(); ++c) top = std::max(top, z[c]);
  double sum = 0.0;
  for (int c = 0; c < z.size(); ++c) sum += std::exp(z[c] - top);
  return top + std::log(sum) - z[y];
}

absl::StatusOr<std::vector<double>> LooRetrainOracle(
    const FeatureDataset& dataset, std::span<const SampleId> train_ids,
    const TrainConfig& config, uint64_t seed,
    std::span<const SampleId> probe_ids) {
  if (train_ids.size() > kMaxLooTrainSize) {
    return absl::InvalidArgumentError(
        absl::StrCat("LOO oracle supports at most ", kMaxLooTrainSize,
                     " training points, got ", train_ids.size()));
  }
  for (SampleId probe : probe_ids) {
    if (std::find(train_ids.begin(), train_ids.end(), probe) == train_ids.end()) {
      return absl::InvalidArgumentError(
          absl::StrCat("probe ", probe, " is not in the training set"));
    }
  }
  auto full = TrainHead(Gather(dataset, train_ids), config, seed);
  if (!full.ok()) return full.status();

  std::vector<double> deltas;
  for (SampleId probe : probe_ids) {
    std::vector<SampleId> rest;
    bool skipped = false;
    for (SampleId id : train_ids) {
      // Drop one occurrence only, so a duplicated id stays in.
      if (id == probe && !skipped) {
        skipped = true;
        continue;
      }
      rest.push_back(id);
    }
    if (rest.empty()) {
      return absl::InvalidArgumentError("cannot retrain on an empty set");
    }
    auto without = TrainHead(Gather(dataset, rest), config, seed);
    if (!without.ok()) return without.status();
    const Eigen::VectorXd x = dataset.Row(probe);
    const int y = dataset.label(probe);
    deltas.push_back(ReferenceLoss(*without, x, y) - ReferenceLoss(*full, x, y));
  }
  return deltas;
}

double StandardNormalCdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double StandardNormalQuantile(double p) {
  if (p <= 0.0) return -std::numeric_limits<double>::infinity();
  if (p >= 1.0) return std::numeric_limits<double>::infinity();
  double lo = -40.0;
  double hi = 40.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    (StandardNormalCdf(mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double GaussianAnalyticTpr(double mu_in, double mu_out, double sigma,
                           double fpr_target) {
  return StandardNormalCdf((mu_in - mu_out) / sigma +
                           StandardNormalQuantile(fpr_target));
}

}  // namespace miaudit::oracles
