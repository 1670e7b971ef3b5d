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


// Reference implementations used only by the test suite. Nothing here calls
// into eval, signals or attacks, so a bug there cannot hide in both places.

#ifndef MIAUDIT_ORACLES_ORACLES_H_
#define MIAUDIT_ORACLES_ORACLES_H_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "miaudit/data/feature_dataset.h"
#include "miaudit/trainer/linear_head.h"

namespace miaudit::oracles {

// (fpr, tpr) vertices.
using Vertices = std::vector<std::pair<double, double>>;

// Candidate thresholds are +inf followed by every distinct score,
// descending; each vertex counts members and non-members with
// score >= threshold by a full pass. Quadratic, on purpose.
Vertices BruteForceRoc(std::span<const double> member_scores,
                       std::span<const double> nonmember_scores);

// Largest tpr over brute-force vertices with fpr <= fpr_target.
double BruteForceTprAtFpr(std::span<const double> member_scores,
                          std::span<const double> nonmember_scores,
                          double fpr_target);

// Pairwise Mann-Whitney statistic with half credit for ties.
double MannWhitneyAuc(std::span<const double> member_scores,
                      std::span<const double> nonmember_scores);

inline constexpr std::size_t kMaxLooTrainSize = 256;

// For each probe: retrain on train_ids without it (same config and seed) and
// report loss_without(probe) - loss_with(probe). kInvalidArgument when a
// probe is not in train_ids or |train_ids| > 256.
absl::StatusOr<std::vector<double>> LooRetrainOracle(
    const FeatureDataset& dataset, std::span<const SampleId> train_ids,
    const TrainConfig& config, uint64_t seed,
    std::span<const SampleId> probe_ids);

// Cross-entropy by direct log-softmax.
double ReferenceLoss(const LinearHead& head, const Eigen::VectorXd& x, int y);

double StandardNormalCdf(double z);
// Inverse by bisection on StandardNormalCdf.
double StandardNormalQuantile(double p);

// TPR at fpr_target of the threshold test on one score drawn from
// N(mu_in, sigma^2) vs N(mu_out, sigma^2): Phi((mu_in - mu_out) / sigma +
// Phi^-1(fpr)).
double GaussianAnalyticTpr(double mu_in, double mu_out, double sigma,
                           double fpr_target);

}  // namespace miaudit::oracles

#endif  // MIAUDIT_ORACLES_ORACLES_H_
