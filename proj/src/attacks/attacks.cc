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


#include "miaudit/attacks/attacks.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "miaudit/common/seed.h"
#include "miaudit/common/status_macros.h"
#include "miaudit/trainer/distill.h"

namespace miaudit {
namespace {

constexpr double kLog2Pi = 1.8378770664093453;

double TrueClassPosterior(const LinearHead& head, const FeatureDataset& data,
                          SampleId id, int query) {
  return head.Posteriors(data.Query(id, query))[data.label(id)];
}

absl::Status CheckIds(const AttackContext& ctx, std::span<const SampleId> ids) {
  RETURN_IF_ERROR(ctx.Validate());
  for (SampleId id : ids) {
    if (id >= ctx.dataset->size()) {
      return absl::InvalidArgumentError(
          absl::StrCat("sample id ", id, " out of range"));
    }
  }
  return absl::OkStatus();
}

AttackScoreSet MakeSet(std::string_view name, const AttackContext& ctx,
                       std::span<const SampleId> ids,
                       const std::vector<double>& scores, std::string config) {
  AttackScoreSet set;
  set.attack = std::string(name);
  set.config = std::move(config);
  set.rows.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    set.rows.push_back({ids[i], scores[i], ctx.IsTargetMember(ids[i])});
  }
  return set;
}

std::string JoinIds(const std::vector<SampleId>& ids) {
  constexpr std::size_t kShown = 20;
  std::vector<SampleId> head(ids.begin(),
                             ids.begin() + std::min(ids.size(), kShown));
  std::string out = absl::StrJoin(head, ", ");
  if (ids.size() > kShown) {
    absl::StrAppend(&out, ", ... (", ids.size(), " in total)");
  }
  return out;
}

double MeanLogitConfidence(const LinearHead& head, const FeatureDataset& data,
                           SampleId id, int queries) {
  double sum = 0.0;
  for (int q = 0; q < queries; ++q) {
    sum += LogitScale(TrueClassPosterior(head, data, id, q));
  }
  return sum / queries;
}

RowMatrix QmiaFeatures(const FeatureDataset& data,
                       std::span<const SampleId> ids) {
  const int d = data.dim();
  RowMatrix out = RowMatrix::Zero(static_cast<Eigen::Index>(ids.size()),
                                  d + data.num_classes());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    out.row(i).head(d) = data.Row(ids[i]).transpose();
    out(i, d + data.label(ids[i])) = 1.0;
  }
  return out;
}

}  // namespace

absl::StatusOr<AttackScoreSet> LossAttack(const AttackContext& ctx,
                                          std::span<const SampleId> ids) {
  RETURN_IF_ERROR(CheckIds(ctx, ids));
  std::vector<double> scores;
  for (SampleId id : ids) {
    scores.push_back(
        -SampleLoss(ctx.target, ctx.dataset->Row(id), ctx.dataset->label(id)));
  }
  return MakeSet("loss", ctx, ids, scores, "");
}

double AttackPScore(double loss, std::span<const double> population_losses) {
  double count = 0.0;
  for (double z : population_losses) {
    if (z > loss) {
      count += 1.0;
    } else if (z == loss) {
      count += 0.5;
    }
  }
  return count / static_cast<double>(population_losses.size());
}

absl::StatusOr<AttackScoreSet> AttackP(const AttackContext& ctx,
                                       std::span<const SampleId> ids) {
  RETURN_IF_ERROR(CheckIds(ctx, ids));
  if (ctx.population_ids.empty()) {
    return absl::FailedPreconditionError("attack_p: empty population");
  }
  std::vector<double> population;
  for (SampleId z : ctx.population_ids) {
    population.push_back(
        SampleLoss(ctx.target, ctx.dataset->Row(z), ctx.dataset->label(z)));
  }
  std::vector<double> scores;
  for (SampleId id : ids) {
    scores.push_back(AttackPScore(
        SampleLoss(ctx.target, ctx.dataset->Row(id), ctx.dataset->label(id)),
        population));
  }
  AttackScoreSet set = MakeSet("attack_p", ctx, ids, scores,
                               absl::StrCat("population=", population.size()));
  if (population.size() < kMinPopulationWarning) {
    set.warnings.push_back(absl::StrCat("population of ", population.size(),
                                        " is below ", kMinPopulationWarning));
  }
  return set;
}

absl::StatusOr<AttackScoreSet> Qmia(const AttackContext& ctx,
                                    std::span<const SampleId> ids,
                                    const QmiaConfig& config) {
  RETURN_IF_ERROR(CheckIds(ctx, ids));
  if (ctx.population_ids.empty()) {
    return absl::FailedPreconditionError("qmia: empty population");
  }
  std::vector<double> levels = config.quantile_levels;
  std::sort(levels.begin(), levels.end());
  const auto ref = std::find(levels.begin(), levels.end(), config.reference_level);
  if (ref == levels.end()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "qmia: reference level ", config.reference_level,
        " is not among the quantile levels"));
  }
  const std::size_t ref_index = ref - levels.begin();

  std::vector<double> targets;
  for (SampleId z : ctx.population_ids) {
    targets.push_back(MeanLogitConfidence(ctx.target, *ctx.dataset, z, 1));
  }
  ASSIGN_OR_RETURN(
      Mlp regressor,
      Mlp::TrainQuantile(QmiaFeatures(*ctx.dataset, ctx.population_ids),
                         targets, levels, config.regressor,
                         DeriveSeed(ctx.seed, "qmia")));
  const RowMatrix features = QmiaFeatures(*ctx.dataset, ids);
  std::vector<double> scores;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const double phi = MeanLogitConfidence(ctx.target, *ctx.dataset, ids[i], 1);
    scores.push_back(phi -
                     regressor.Quantiles(features.row(i).transpose())[ref_index]);
  }
  return MakeSet("qmia", ctx, ids, scores,
                 absl::StrFormat("levels=%s reference=%g hidden=%d",
                                 absl::StrJoin(levels, "/"),
                                 config.reference_level,
                                 config.regressor.hidden));
}

Eigen::VectorXd TopKPosteriors(const Eigen::VectorXd& posterior, int k) {
  std::vector<double> v(posterior.data(), posterior.data() + posterior.size());
  std::sort(v.begin(), v.end(), std::greater<>());
  k = std::min<int>(k, static_cast<int>(v.size()));
  return Eigen::Map<const Eigen::VectorXd>(v.data(), k);
}

absl::StatusOr<AttackScoreSet> MlLeaks(const AttackContext& ctx,
                                       std::span<const SampleId> ids,
                                       const MlLeaksConfig& config) {
  RETURN_IF_ERROR(CheckIds(ctx, ids));
  const int num_classes = ctx.dataset->num_classes();
  const int k = config.k_top > 0 ? std::min(config.k_top, num_classes)
                                  : (num_classes == 2 ? 2 : std::min(3, num_classes));
  if (config.shadow_index < 0 || config.shadow_index >= ctx.plan.num_shadows()) {
    return absl::FailedPreconditionError(absl::StrCat(
        "ml_leaks: needs shadow model ", config.shadow_index, " but the plan has ",
        ctx.plan.num_shadows()));
  }
  const LinearHead& shadow = ctx.shadows[config.shadow_index];
  RowMatrix inputs(static_cast<Eigen::Index>(ctx.plan.pool_size()), k);
  std::vector<int> labels;
  for (std::size_t i = 0; i < ctx.plan.pool_size(); ++i) {
    const SampleId id = ctx.plan.pool_ids[i];
    inputs.row(i) =
        TopKPosteriors(shadow.Posteriors(ctx.dataset->Row(id)), k).transpose();
    labels.push_back(ctx.plan.shadow_members[config.shadow_index][i] ? 1 : 0);
  }
  const bool has_in = std::count(labels.begin(), labels.end(), 1) > 0;
  const bool has_out = std::count(labels.begin(), labels.end(), 0) > 0;
  if (!has_in || !has_out) {
    return absl::FailedPreconditionError(
        "ml_leaks: shadow model needs both member and non-member samples");
  }
  ASSIGN_OR_RETURN(Mlp classifier,
                   Mlp::TrainBinary(inputs, labels, config.classifier,
                                    DeriveSeed(ctx.seed, "ml_leaks")));
  std::vector<double> scores;
  for (SampleId id : ids) {
    scores.push_back(classifier.MemberProbability(
        TopKPosteriors(ctx.target.Posteriors(ctx.dataset->Row(id)), k)));
  }
  return MakeSet("ml_leaks", ctx, ids, scores,
                 absl::StrCat("k=", k, " shadow=", config.shadow_index));
}

std::string_view LiraVarianceName(LiraVariance mode) {
  return mode == LiraVariance::kGlobal ? "global" : "per_sample";
}

absl::StatusOr<LiraVariance> ParseLiraVariance(std::string_view name) {
  if (name == "global") return LiraVariance::kGlobal;
  if (name == "per_sample") return LiraVariance::kPerSample;
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown variance mode '", std::string(name), "' (per_sample | global)"));
}

double LiraLogRatio(double phi, double mu_in, double var_in, double mu_out,
                    double var_out) {
  const double floor2 = kLiraSigmaFloor * kLiraSigmaFloor;
  auto log_density = [&](double mu, double var) {
    const double v = var + floor2;
    return -0.5 * (kLog2Pi + std::log(v)) - (phi - mu) * (phi - mu) / (2.0 * v);
  };
  return log_density(mu_in, var_in) - log_density(mu_out, var_out);
}

absl::StatusOr<std::vector<double>> LiraScores(
    const std::vector<LiraObservation>& observations, LiraVariance variance) {
  std::vector<SampleId> uncovered;
  for (const LiraObservation& obs : observations) {
    if (obs.in.size() < 2 || obs.out.size() < 2) uncovered.push_back(obs.sample_id);
  }
  if (!uncovered.empty()) {
    return absl::FailedPreconditionError(absl::StrCat(
        "lira coverage: need >= 2 IN and >= 2 OUT shadows for samples ",
        JoinIds(uncovered)));
  }
  auto moments = [](const std::vector<double>& v) {
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::pair<double, double>(mean, ss / (v.size() - 1));
  };
  const std::size_t n = observations.size();
  std::vector<double> mu_in(n), var_in(n), mu_out(n), var_out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::tie(mu_in[i], var_in[i]) = moments(observations[i].in);
    std::tie(mu_out[i], var_out[i]) = moments(observations[i].out);
  }
  if (variance == LiraVariance::kGlobal && n > 0) {
    const double pooled_in = std::accumulate(var_in.begin(), var_in.end(), 0.0) / n;
    const double pooled_out =
        std::accumulate(var_out.begin(), var_out.end(), 0.0) / n;
    std::fill(var_in.begin(), var_in.end(), pooled_in);
    std::fill(var_out.begin(), var_out.end(), pooled_out);
  }
  std::vector<double> scores(n);
  for (std::size_t i = 0; i < n; ++i) {
    scores[i] = LiraLogRatio(observations[i].phi, mu_in[i], var_in[i],
                             mu_out[i], var_out[i]);
  }
  return scores;
}

absl::StatusOr<AttackScoreSet> Lira(const AttackContext& ctx,
                                    std::span<const SampleId> ids,
                                    const LiraConfig& config) {
  RETURN_IF_ERROR(CheckIds(ctx, ids));
  const int queries =
      1 + std::clamp(config.query_views, 0, ctx.dataset->num_views());
  std::vector<LiraObservation> observations;
  for (SampleId id : ids) {
    LiraObservation obs;
    obs.sample_id = id;
    obs.phi = MeanLogitConfidence(ctx.target, *ctx.dataset, id, queries);
    for (int m = 0; m < ctx.plan.num_shadows(); ++m) {
      const double value =
          MeanLogitConfidence(ctx.shadows[m], *ctx.dataset, id, queries);
      (ctx.IsShadowMember(m, id) ? obs.in : obs.out).push_back(value);
    }
    observations.push_back(std::move(obs));
  }
  ASSIGN_OR_RETURN(std::vector<double> scores,
                   LiraScores(observations, config.variance));
  return MakeSet("lira", ctx, ids, scores,
                 absl::StrCat("variance=", std::string(LiraVarianceName(config.variance)),
                              " queries=", queries));
}

std::string_view RmiaVoteName(RmiaVote vote) {
  return vote == RmiaVote::kMajority ? "majority" : "single";
}

absl::StatusOr<RmiaVote> ParseRmiaVote(std::string_view name) {
  if (name == "majority") return RmiaVote::kMajority;
  if (name == "single") return RmiaVote::kSingle;
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown vote mode '", std::string(name), "' (single | majority)"));
}

absl::StatusOr<AttackScoreSet> Rmia(const AttackContext& ctx,
                                    std::span<const SampleId> ids,
                                    const RmiaConfig& config) {
  RETURN_IF_ERROR(CheckIds(ctx, ids));
  if (!(config.gamma >= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("rmia: gamma = ", config.gamma, " must be >= 1"));
  }
  if (ctx.population_ids.empty()) {
    return absl::FailedPreconditionError("rmia: empty population");
  }
  if (ctx.plan.num_shadows() < 1) {
    return absl::FailedPreconditionError("rmia: needs at least one shadow model");
  }
  const int views =
      config.vote == RmiaVote::kMajority ? 1 + ctx.dataset->num_views() : 1;
  int64_t clamped = 0;
  auto ratio = [&](SampleId u, int query) {
    double shadow_mean = 0.0;
    for (const LinearHead& shadow : ctx.shadows) {
      shadow_mean += TrueClassPosterior(shadow, *ctx.dataset, u, query);
    }
    shadow_mean /= static_cast<double>(ctx.shadows.size());
    if (shadow_mean < kRmiaDenominatorFloor) {
      shadow_mean = kRmiaDenominatorFloor;
      ++clamped;
    }
    return TrueClassPosterior(ctx.target, *ctx.dataset, u, query) / shadow_mean;
  };

  // ratio[v][i]
  std::vector<std::vector<double>> z_ratio(views), x_ratio(views);
  for (int v = 0; v < views; ++v) {
    for (SampleId z : ctx.population_ids) z_ratio[v].push_back(ratio(z, v));
    for (SampleId x : ids) x_ratio[v].push_back(ratio(x, v));
  }
  std::vector<double> scores;
  const double gamma = config.gamma;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    std::size_t wins = 0;
    for (std::size_t j = 0; j < ctx.population_ids.size(); ++j) {
      int votes = 0;
      // ratio(x) / ratio(z) >= gamma, multiplied out so a zero ratio(z)
      // needs no special case.
      for (int v = 0; v < views; ++v) {
        votes += x_ratio[v][i] >= gamma * z_ratio[v][j] ? 1 : 0;
      }
      if (2 * votes > views) ++wins;
    }
    scores.push_back(static_cast<double>(wins) /
                     static_cast<double>(ctx.population_ids.size()));
  }
  AttackScoreSet set = MakeSet(
      "rmia", ctx, ids, scores,
      absl::StrCat("gamma=", gamma, " vote=", std::string(RmiaVoteName(config.vote))));
  set.clamped = clamped;
  if (clamped > 0) {
    set.warnings.push_back(absl::StrCat(
        clamped, " shadow-mean posteriors clamped to ", kRmiaDenominatorFloor));
  }
  return set;
}

absl::StatusOr<AttackScoreSet> TrajectoryMia(const AttackContext& ctx,
                                             std::span<const SampleId> ids,
                                             const TrajectoryConfig& config) {
  RETURN_IF_ERROR(CheckIds(ctx, ids));
  if (config.distill_ids.empty()) {
    return absl::FailedPreconditionError("trajectory: empty distillation set");
  }
  if (config.distill_epochs < 1) {
    return absl::InvalidArgumentError("trajectory: distill_epochs must be >= 1");
  }
  if (ctx.plan.num_shadows() < 1) {
    return absl::FailedPreconditionError(
        "trajectory: needs at least one shadow model");
  }
  for (SampleId id : config.distill_ids) {
    if (id >= ctx.dataset->size()) {
      return absl::InvalidArgumentError(
          absl::StrCat("trajectory: distill id ", id, " out of range"));
    }
    if (ctx.IsTargetMember(id)) {
      return absl::FailedPreconditionError(absl::StrCat(
          "contamination: distill id ", id, " is in the target training set"));
    }
    for (int m = 0; m < ctx.plan.num_shadows(); ++m) {
      if (ctx.IsShadowMember(m, id)) {
        return absl::FailedPreconditionError(
            absl::StrCat("contamination: distill id ", id,
                         " is in the training set of shadow ", m));
      }
    }
  }
  const int used = std::min(std::max(config.num_shadows, 1), ctx.plan.num_shadows());
  ASSIGN_OR_RETURN(DistillResult target,
                   Distill(ctx.target, *ctx.dataset, config.distill_ids, ids,
                           config.distill_epochs, ctx.train_config,
                           DeriveSeed(ctx.seed, "trajectory-target")));
  const int width = config.distill_epochs + 1;
  auto to_matrix = [&](const std::vector<LossTrajectory>& trajectories) {
    RowMatrix out(static_cast<Eigen::Index>(trajectories.size()), width);
    for (std::size_t i = 0; i < trajectories.size(); ++i) {
      out.row(i) = Eigen::Map<const Eigen::RowVectorXd>(trajectories[i].data(), width);
    }
    return out;
  };
  const RowMatrix target_features = to_matrix(target.trajectories);

  std::vector<double> scores(ids.size(), 0.0);
  for (int m = 0; m < used; ++m) {
    const uint64_t m64 = static_cast<uint64_t>(m);
    ASSIGN_OR_RETURN(
        DistillResult shadow,
        Distill(ctx.shadows[m], *ctx.dataset, config.distill_ids,
                ctx.plan.pool_ids, config.distill_epochs, ctx.train_config,
                DeriveSeed(ctx.seed, "trajectory-shadow", {m64})));
    std::vector<int> labels;
    for (std::size_t i = 0; i < ctx.plan.pool_size(); ++i) {
      labels.push_back(ctx.plan.shadow_members[m][i] ? 1 : 0);
    }
    ASSIGN_OR_RETURN(Mlp classifier,
                     Mlp::TrainBinary(to_matrix(shadow.trajectories), labels,
                                      config.classifier,
                                      DeriveSeed(ctx.seed, "trajectory-mlp", {m64})));
    for (std::size_t i = 0; i < ids.size(); ++i) {
      scores[i] += classifier.MemberProbability(target_features.row(i).transpose()) / used;
    }
  }
  return MakeSet("trajectory", ctx, ids, scores,
                 absl::StrCat("distill=", config.distill_ids.size(),
                              " epochs=", config.distill_epochs, " shadows=", used));
}

absl::StatusOr<AttackScoreSet> Iha(const AttackContext& ctx,
                                   std::span<const SampleId> ids,
                                   const IhaConfig& config) {
  RETURN_IF_ERROR(CheckIds(ctx, ids));
  if (!ctx.target_train_ids.has_value()) {
    return absl::PermissionDeniedError(
        "threat model: iha needs the target's training set in the context");
  }
  if (!(config.damping >= 0)) {
    return absl::InvalidArgumentError("iha: damping must be >= 0");
  }
  const LinearHead& head = ctx.target;
  const FeatureDataset& data = *ctx.dataset;
  const std::vector<SampleId>& train = *ctx.target_train_ids;
  const int d = head.dim();
  const int num_classes = head.num_classes();
  const Eigen::Index num_params = head.num_params();
  if (static_cast<std::size_t>(num_params) > config.max_params) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "iha: Hessian would have P = C * (d + 1) = ", num_params,
        " parameters (limit ", config.max_params, "); reduce d or C"));
  }
  const double l2 = ctx.train_config.l2;

  Eigen::MatrixXd hessian_sum = Eigen::MatrixXd::Zero(num_params, num_params);
  Eigen::VectorXd gradient_sum = Eigen::VectorXd::Zero(num_params);
  std::map<SampleId, int> multiplicity;
  for (SampleId j : train) {
    if (j >= data.size()) {
      return absl::InvalidArgumentError(
          absl::StrCat("iha: training id ", j, " out of range"));
    }
    const Eigen::VectorXd x = data.Row(j);
    AccumulateSampleHessian(head, x, 1.0, hessian_sum);
    gradient_sum += LossGradient(head, x, data.label(j));
    ++multiplicity[j];
  }
  // Gradient and curvature of (l2 / 2) |W|^2.
  Eigen::VectorXd reg_gradient = Eigen::VectorXd::Zero(num_params);
  Eigen::VectorXd reg_diagonal = Eigen::VectorXd::Zero(num_params);
  for (int c = 0; c < num_classes; ++c) {
    reg_gradient.segment(c * d, d) = l2 * head.weights().row(c).transpose();
    reg_diagonal.segment(c * d, d).setConstant(l2);
  }

  struct Leave {
    HessianSolver solver;
    Eigen::VectorXd mean_gradient;
    double others = 0.0;
  };
  auto make_leave = [&](const Eigen::MatrixXd& h_sum, const Eigen::VectorXd& g_sum,
                        double others) -> absl::StatusOr<Leave> {
    if (others < 1) {
      return absl::FailedPreconditionError("iha: no other training points");
    }
    Eigen::MatrixXd h = h_sum / others;
    h = (0.5 * (h + h.transpose())).eval();
    h.diagonal() += reg_diagonal;
    h.diagonal().array() += config.damping;
    ASSIGN_OR_RETURN(HessianSolver solver, HessianSolver::Factor(h));
    return Leave{std::move(solver), g_sum / others + reg_gradient, others};
  };
  auto score_with = [](const Leave& leave, const Eigen::VectorXd& g) {
    const Eigen::VectorXd u = leave.solver.Solve(g);
    return -u.dot(leave.mean_gradient) - 0.5 * u.dot(g) / leave.others;
  };

  std::optional<Leave> outsider;
  std::vector<double> scores;
  for (SampleId id : ids) {
    const Eigen::VectorXd x = data.Row(id);
    const Eigen::VectorXd g = LossGradient(head, x, data.label(id));
    if (g.isZero(0.0)) {
      scores.push_back(0.0);
      continue;
    }
    if (multiplicity.count(id) > 0) {
      Eigen::MatrixXd h_sum = hessian_sum;
      AccumulateSampleHessian(head, x, -1.0, h_sum);
      ASSIGN_OR_RETURN(Leave leave,
                       make_leave(h_sum, gradient_sum - g,
                                  static_cast<double>(train.size() - 1)));
      scores.push_back(score_with(leave, g));
    } else {
      if (!outsider.has_value()) {
        ASSIGN_OR_RETURN(Leave leave,
                         make_leave(hessian_sum, gradient_sum,
                                    static_cast<double>(train.size())));
        outsider.emplace(std::move(leave));
      }
      scores.push_back(score_with(*outsider, g));
    }
  }
  return MakeSet("iha", ctx, ids, scores,
                 absl::StrCat("damping=", config.damping, " l2=", l2));
}

bool IsAttackName(std::string_view name) {
  return std::find(std::begin(kAttackNames), std::end(kAttackNames), name) !=
         std::end(kAttackNames);
}

absl::StatusOr<AttackScoreSet> RunAttack(std::string_view name,
                                         const AttackContext& ctx,
                                         std::span<const SampleId> ids,
                                         const AttackSuiteConfig& config) {
  if (name == "loss") return LossAttack(ctx, ids);
  if (name == "attack_p") return AttackP(ctx, ids);
  if (name == "qmia") return Qmia(ctx, ids, config.qmia);
  if (name == "ml_leaks") return MlLeaks(ctx, ids, config.ml_leaks);
  if (name == "lira") return Lira(ctx, ids, config.lira);
  if (name == "rmia") return Rmia(ctx, ids, config.rmia);
  if (name == "trajectory") return TrajectoryMia(ctx, ids, config.trajectory);
  if (name == "iha") return Iha(ctx, ids, config.iha);
  return absl::InvalidArgumentError(
      absl::StrCat("unknown attack '", std::string(name), "'"));
}

}  // namespace miaudit
