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


// Score-based membership inference attacks. Every attack returns one score
// per requested sample, higher meaning more member-like, plus the ground
// truth from the context's split plan.

#ifndef MIAUDIT_ATTACKS_ATTACKS_H_
#define MIAUDIT_ATTACKS_ATTACKS_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "Eigen/Core"
#include "absl/status/statusor.h"
#include "miaudit/attacks/context.h"
#include "miaudit/attacks/mlp.h"
#include "miaudit/attacks/score_set.h"
#include "miaudit/signals/signals.h"

namespace miaudit {

inline constexpr int kMinPopulationWarning = 30;

absl::StatusOr<AttackScoreSet> LossAttack(const AttackContext& ctx,
                                          std::span<const SampleId> ids);

// Mid-rank CDF position of the sample's loss among population losses:
// (#greater + #equal / 2) / |population|.
double AttackPScore(double loss, std::span<const double> population_losses);

absl::StatusOr<AttackScoreSet> AttackP(const AttackContext& ctx,
                                       std::span<const SampleId> ids);

struct QmiaConfig {
  std::vector<double> quantile_levels = {0.9, 0.95, 0.99};
  double reference_level = 0.95;  // must be one of quantile_levels
  MlpConfig regressor;
};

absl::StatusOr<AttackScoreSet> Qmia(const AttackContext& ctx,
                                    std::span<const SampleId> ids,
                                    const QmiaConfig& config = {});

struct MlLeaksConfig {
  // 0 picks the default: 3, or 2 for binary tasks.
  int k_top = 0;
  int shadow_index = 0;
  MlpConfig classifier;
};

// The k largest entries, descending.
Eigen::VectorXd TopKPosteriors(const Eigen::VectorXd& posterior, int k);

absl::StatusOr<AttackScoreSet> MlLeaks(const AttackContext& ctx,
                                       std::span<const SampleId> ids,
                                       const MlLeaksConfig& config = {});

enum class LiraVariance { kPerSample, kGlobal };

std::string_view LiraVarianceName(LiraVariance mode);
absl::StatusOr<LiraVariance> ParseLiraVariance(std::string_view name);

inline constexpr double kLiraSigmaFloor = 1e-3;

struct LiraConfig {
  LiraVariance variance = LiraVariance::kPerSample;
  // Average the signal over the original and this many augmented views
  // (capped at the dataset's view count).
  int query_views = 0;
};

// ln N(phi; mu_in, var_in + floor^2) - ln N(phi; mu_out, var_out + floor^2).
double LiraLogRatio(double phi, double mu_in, double var_in, double mu_out,
                    double var_out);

// Signal observations for one sample: the target's value and the shadow
// values split by membership.
struct LiraObservation {
  SampleId sample_id = 0;
  double phi = 0.0;
  std::vector<double> in;
  std::vector<double> out;
};

// Fits the IN/OUT Gaussians and scores every observation. kFailedPrecondition
// (listing the ids) when a sample has fewer than two IN or two OUT values.
absl::StatusOr<std::vector<double>> LiraScores(
    const std::vector<LiraObservation>& observations, LiraVariance variance);

absl::StatusOr<AttackScoreSet> Lira(const AttackContext& ctx,
                                    std::span<const SampleId> ids,
                                    const LiraConfig& config = {});

enum class RmiaVote { kSingle, kMajority };

std::string_view RmiaVoteName(RmiaVote vote);
absl::StatusOr<RmiaVote> ParseRmiaVote(std::string_view name);

inline constexpr double kRmiaDenominatorFloor = 1e-12;

struct RmiaConfig {
  double gamma = 2.0;
  RmiaVote vote = RmiaVote::kSingle;
};

absl::StatusOr<AttackScoreSet> Rmia(const AttackContext& ctx,
                                    std::span<const SampleId> ids,
                                    const RmiaConfig& config = {});

struct TrajectoryConfig {
  std::vector<SampleId> distill_ids;
  int distill_epochs = 10;
  // Attack classifiers, one per shadow, averaged over this many shadows.
  int num_shadows = 3;
  MlpConfig classifier;
};

absl::StatusOr<AttackScoreSet> TrajectoryMia(const AttackContext& ctx,
                                             std::span<const SampleId> ids,
                                             const TrajectoryConfig& config);

struct IhaConfig {
  double damping = kDefaultDamping;
  std::size_t max_params = kDefaultMaxHessianParams;
};

// Needs ctx.target_train_ids. For a scored sample x with gradient g, let the
// other training points number N, H be their mean Hessian (with l2 and
// damping) and G their mean gradient (with the l2 term). With u = H^-1 g the
// score is
//   -u.G - u.g / (2 N),
// the second-order estimate of how much the others' total loss falls when
// the parameters take the step u / N that removes x's influence. Members sit
// at a joint optimum and score about g.u / (2 N); non-members score about
// -g.u / (2 N). A zero gradient scores 0.
absl::StatusOr<AttackScoreSet> Iha(const AttackContext& ctx,
                                   std::span<const SampleId> ids,
                                   const IhaConfig& config = {});

inline constexpr std::string_view kAttackNames[] = {
    "loss", "attack_p", "qmia", "ml_leaks", "lira", "rmia", "trajectory", "iha"};

bool IsAttackName(std::string_view name);

struct AttackSuiteConfig {
  QmiaConfig qmia;
  MlLeaksConfig ml_leaks;
  LiraConfig lira;
  RmiaConfig rmia;
  TrajectoryConfig trajectory;
  IhaConfig iha;
};

absl::StatusOr<AttackScoreSet> RunAttack(std::string_view name,
                                         const AttackContext& ctx,
                                         std::span<const SampleId> ids,
                                         const AttackSuiteConfig& config);

}  // namespace miaudit

#endif  // MIAUDIT_ATTACKS_ATTACKS_H_
