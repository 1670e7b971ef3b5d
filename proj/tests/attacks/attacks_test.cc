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


#include <algorithm>
#include <cmath>
#include <random>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "miaudit/attacks/attacks.h"
#include "miaudit/eval/roc.h"
#include "miaudit/oracles/oracles.h"
#include "support/fixtures.h"

namespace miaudit {
namespace {

using ::testing::HasSubstr;
using testing::BuildContext;
using testing::ContextOptions;
using testing::ScoreAuc;
using testing::ScoredIds;

FeatureDataset Store(int classes = 4, int dim = 16, int per_class = 120,
                     double separation = 2.0, int views = 0) {
  SynthSpec spec;
  spec.num_classes = classes;
  spec.dim = dim;
  spec.per_class = per_class;
  spec.separation = separation;
  spec.num_views = views;
  spec.seed = 77;
  return *SynthGaussian(spec);
}

class AttackTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    store_ = new FeatureDataset(Store());
    ContextOptions options;
    options.train = TrainConfig{200, 16, 1e-2, 0.0};
    options.grant_train_ids = true;
    ctx_ = new AttackContext(*BuildContext(*store_, options));
  }
  static void TearDownTestSuite() {
    delete ctx_;
    delete store_;
  }
  static FeatureDataset* store_;
  static AttackContext* ctx_;
};
FeatureDataset* AttackTest::store_ = nullptr;
AttackContext* AttackTest::ctx_ = nullptr;

TEST_F(AttackTest, LossScoreIsNegatedLoss) {
  const std::vector<SampleId> ids = ScoredIds(*ctx_, 20);
  auto set = LossAttack(*ctx_, ids);
  ASSERT_TRUE(set.ok());
  ASSERT_EQ(set->rows.size(), ids.size());
  std::vector<double> in, out;
  for (const ScoreRow& row : set->rows) {
    const double loss = SampleLoss(ctx_->target, store_->Row(row.sample_id),
                                   store_->label(row.sample_id));
    EXPECT_EQ(row.score, -loss);
    EXPECT_EQ(row.is_member, ctx_->IsTargetMember(row.sample_id));
    (row.is_member ? in : out).push_back(-loss);
  }
  EXPECT_EQ(oracles::BruteForceRoc(in, out).size(),
            ComputeRoc(set->MemberScores(), set->NonMemberScores())->points.size());
  EXPECT_EQ(ScoreAuc(*set), oracles::MannWhitneyAuc(in, out));
}

TEST_F(AttackTest, DuplicateIdsScoreIdentically) {
  const std::vector<SampleId> ids = {ctx_->plan.pool_ids[0], ctx_->plan.pool_ids[0],
                                     ctx_->plan.pool_ids[1]};
  for (std::string_view name : {"loss", "attack_p", "rmia", "lira", "iha"}) {
    auto set = RunAttack(name, *ctx_, ids, AttackSuiteConfig{});
    ASSERT_TRUE(set.ok()) << name << ": " << set.status();
    EXPECT_EQ(set->rows[0].score, set->rows[1].score) << name;
  }
}

TEST(AttackPTest, MidRankRule) {
  const std::vector<double> population = {1.0, 2.0, 3.0};
  EXPECT_EQ(AttackPScore(0.5, population), 1.0);
  EXPECT_EQ(AttackPScore(4.0, population), 0.0);
  EXPECT_EQ(AttackPScore(2.0, population), 0.5);
  const std::vector<double> single = {0.7};
  EXPECT_EQ(AttackPScore(0.7, single), 0.5);
}

TEST_F(AttackTest, AttackPMatchesLossAuc) {
  const std::vector<SampleId> ids = ScoredIds(*ctx_, 50);
  auto loss = LossAttack(*ctx_, ids);
  auto p = AttackP(*ctx_, ids);
  ASSERT_TRUE(p.ok());
  EXPECT_NEAR(ScoreAuc(*p), ScoreAuc(*loss), 1e-9);
  for (const ScoreRow& row : p->rows) {
    EXPECT_GE(row.score, 0.0);
    EXPECT_LE(row.score, 1.0);
  }
}

TEST_F(AttackTest, AttackPPopulationChecks) {
  AttackContext small = *ctx_;
  small.population_ids.resize(10);
  auto set = AttackP(small, ScoredIds(small));
  ASSERT_TRUE(set.ok());
  EXPECT_FALSE(set->warnings.empty());
  small.population_ids.clear();
  EXPECT_EQ(AttackP(small, ScoredIds(small)).status().code(),
            absl::StatusCode::kFailedPrecondition);
}

TEST(PinballTest, Definition) {
  EXPECT_EQ(PinballLoss(-2.0, 0.5), 1.0);
  EXPECT_DOUBLE_EQ(PinballLoss(3.0, 0.9), 2.7);
  EXPECT_DOUBLE_EQ(PinballLoss(-3.0, 0.9), 0.3);
  EXPECT_EQ(PinballLoss(0.0, 0.3), 0.0);
}

TEST_F(AttackTest, QmiaBiasOnlyCollapsesToLoss) {
  QmiaConfig config;
  config.regressor.hidden = 0;
  const std::vector<SampleId> ids = ScoredIds(*ctx_, 30);
  auto qmia = Qmia(*ctx_, ids, config);
  ASSERT_TRUE(qmia.ok()) << qmia.status();
  auto loss = LossAttack(*ctx_, ids);
  EXPECT_EQ(ComputeRoc(qmia->MemberScores(), qmia->NonMemberScores())->points,
            ComputeRoc(loss->MemberScores(), loss->NonMemberScores())->points);
}

TEST(QuantileMlpTest, QuantilesDoNotCross) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n;
  RowMatrix x(400, 3);
  std::vector<double> y(400);
  for (int i = 0; i < 400; ++i) {
    for (int j = 0; j < 3; ++j) x(i, j) = n(rng);
    y[i] = 2.0 * x(i, 0) + n(rng) * (1.0 + std::abs(x(i, 1)));
  }
  auto mlp = Mlp::TrainQuantile(x, y, {0.9, 0.95, 0.99}, MlpConfig{}, 3);
  ASSERT_TRUE(mlp.ok());
  for (int i = 0; i < 400; ++i) {
    const Eigen::VectorXd q = mlp->Quantiles(x.row(i).transpose());
    EXPECT_LE(q(0), q(1));
    EXPECT_LE(q(1), q(2));
  }
  // The 0.9 level should sit above roughly nine in ten targets.
  int below = 0;
  for (int i = 0; i < 400; ++i) below += y[i] <= mlp->Quantiles(x.row(i).transpose())(0);
  EXPECT_NEAR(below / 400.0, 0.9, 0.06);
}

TEST(MlLeaksFeatureTest, TopK) {
  Eigen::VectorXd p(4);
  p << 0.1, 0.7, 0.05, 0.15;
  const Eigen::VectorXd top = TopKPosteriors(p, 3);
  ASSERT_EQ(top.size(), 3);
  EXPECT_EQ(top(0), 0.7);
  EXPECT_EQ(top(1), 0.15);
  EXPECT_EQ(top(2), 0.1);
  Eigen::VectorXd two(2);
  two << 0.4, 0.6;
  const Eigen::VectorXd top2 = TopKPosteriors(two, 3);
  ASSERT_EQ(top2.size(), 2);
  EXPECT_LE(top2.sum(), 1.0 + 1e-9);
}

TEST(MlLeaksFeatureTest, NoSignalClassifierIsChance) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> n;
  RowMatrix x(4000, 3);
  std::vector<int> labels(4000);
  for (int i = 0; i < 4000; ++i) {
    for (int j = 0; j < 3; ++j) x(i, j) = n(rng);
    labels[i] = static_cast<int>(rng() & 1);
  }
  auto mlp = Mlp::TrainBinary(x.topRows(2000), {labels.begin(), labels.begin() + 2000},
                              MlpConfig{}, 5);
  ASSERT_TRUE(mlp.ok());
  int correct = 0;
  for (int i = 2000; i < 4000; ++i) {
    const bool says_member = mlp->MemberProbability(x.row(i).transpose()) >= 0.5;
    correct += says_member == (labels[i] == 1);
  }
  EXPECT_NEAR(correct / 2000.0, 0.5, 0.05);
}

TEST(MlLeaksFeatureTest, SingleClassIsConfigurationError) {
  RowMatrix x = RowMatrix::Ones(5, 2);
  EXPECT_EQ(Mlp::TrainBinary(x, {1, 1, 1, 1, 1}, MlpConfig{}, 1).status().code(),
            absl::StatusCode::kFailedPrecondition);
}

TEST_F(AttackTest, MlLeaksNeedsAShadow) {
  AttackContext none = *ctx_;
  none.shadows.clear();
  none.plan.shadow_members.clear();
  EXPECT_FALSE(MlLeaks(none, ScoredIds(none)).ok());
}

TEST(LiraTest, LogRatioExamples) {
  EXPECT_NEAR(LiraLogRatio(0.0, 1.0, 1.0, -1.0, 1.0), 0.0, 1e-15);
  EXPECT_NEAR(LiraLogRatio(1.0, 1.0, 1.0, -1.0, 1.0), 2.0, 1e-5);
  EXPECT_EQ(LiraLogRatio(0.3, 0.2, 0.5, 0.2, 0.5), 0.0);
}

TEST(LiraTest, TranslationInvariance) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int t = 0; t < 200; ++t) {
    const double phi = u(rng), mi = u(rng), mo = u(rng), shift = u(rng) * 10;
    const double vi = 0.1 + std::abs(u(rng)), vo = 0.1 + std::abs(u(rng));
    EXPECT_NEAR(LiraLogRatio(phi, mi, vi, mo, vo),
                LiraLogRatio(phi + shift, mi + shift, vi, mo + shift, vo), 1e-9);
  }
}

TEST(LiraTest, SameInAndOutGivesZero) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n;
  std::vector<LiraObservation> obs;
  std::vector<double> member, nonmember;
  for (SampleId i = 0; i < 400; ++i) {
    LiraObservation o{i, n(rng), {}, {}};
    for (int k = 0; k < 4; ++k) o.in.push_back(n(rng));
    o.out = o.in;
    obs.push_back(o);
  }
  for (LiraVariance mode : {LiraVariance::kPerSample, LiraVariance::kGlobal}) {
    auto scores = LiraScores(obs, mode);
    ASSERT_TRUE(scores.ok());
    for (double s : *scores) EXPECT_EQ(s, 0.0);
  }
  auto scores = *LiraScores(obs, LiraVariance::kPerSample);
  for (std::size_t i = 0; i < scores.size(); ++i) {
    (i % 2 ? member : nonmember).push_back(scores[i]);
  }
  EXPECT_NEAR(Auc(*ComputeRoc(member, nonmember)), 0.5, 0.02);
}

TEST(LiraTest, CoverageErrorListsIds) {
  std::vector<LiraObservation> obs = {{3, 0.0, {1, 2}, {0, 1}},
                                      {8, 0.0, {1}, {0, 1}},
                                      {9, 0.0, {1, 2}, {}}};
  auto scores = LiraScores(obs, LiraVariance::kPerSample);
  EXPECT_EQ(scores.status().code(), absl::StatusCode::kFailedPrecondition);
  EXPECT_THAT(scores.status().message(), HasSubstr("8, 9"));
}

TEST(LiraTest, QueryViewsAreUsed) {
  const FeatureDataset store = Store(4, 8, 60, 2.0, 3);
  ContextOptions options;
  options.num_shadows = 4;
  auto ctx = BuildContext(store, options);
  ASSERT_TRUE(ctx.ok());
  const std::vector<SampleId> ids = ScoredIds(*ctx);
  auto plain = Lira(*ctx, ids, LiraConfig{LiraVariance::kPerSample, 0});
  auto views = Lira(*ctx, ids, LiraConfig{LiraVariance::kPerSample, 3});
  ASSERT_TRUE(plain.ok() && views.ok());
  EXPECT_NE(plain->rows[0].score, views->rows[0].score);
}

TEST_F(AttackTest, RmiaGammaMonotone) {
  const std::vector<SampleId> ids = ScoredIds(*ctx_, 20);
  std::vector<double> previous(ids.size(), 2.0);
  for (double gamma : {1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0}) {
    auto set = Rmia(*ctx_, ids, RmiaConfig{gamma, RmiaVote::kSingle});
    ASSERT_TRUE(set.ok());
    for (std::size_t i = 0; i < ids.size(); ++i) {
      EXPECT_LE(set->rows[i].score, previous[i]);
      previous[i] = set->rows[i].score;
    }
  }
  auto huge = Rmia(*ctx_, ids, RmiaConfig{1e300, RmiaVote::kSingle});
  for (const ScoreRow& row : huge->rows) EXPECT_EQ(row.score, 0.0);
}

TEST_F(AttackTest, RmiaInclusiveAtEquality) {
  // Every shadow equals the target, so every ratio is exactly one.
  AttackContext same = *ctx_;
  for (LinearHead& shadow : same.shadows) shadow = same.target;
  auto set = Rmia(same, ScoredIds(same), RmiaConfig{1.0, RmiaVote::kSingle});
  ASSERT_TRUE(set.ok());
  for (const ScoreRow& row : set->rows) EXPECT_EQ(row.score, 1.0);
}

TEST_F(AttackTest, RmiaDominance) {
  const std::vector<SampleId> ids = ScoredIds(*ctx_);
  auto set = Rmia(*ctx_, ids, RmiaConfig{1.0, RmiaVote::kSingle});
  const auto best = std::max_element(
      set->rows.begin(), set->rows.end(),
      [](const ScoreRow& a, const ScoreRow& b) { return a.score < b.score; });
  EXPECT_LE(best->score, 1.0);
  for (const ScoreRow& row : set->rows) EXPECT_GE(row.score, 0.0);
  EXPECT_FALSE(ParseRmiaVote("plurality").ok());
}

TEST_F(AttackTest, RmiaMajorityVoteWithoutViewsMatchesSingle) {
  const std::vector<SampleId> ids = ScoredIds(*ctx_);
  auto single = Rmia(*ctx_, ids, RmiaConfig{2.0, RmiaVote::kSingle});
  auto majority = Rmia(*ctx_, ids, RmiaConfig{2.0, RmiaVote::kMajority});
  for (std::size_t i = 0; i < ids.size(); ++i) {
    EXPECT_EQ(single->rows[i].score, majority->rows[i].score);
  }
}

TEST_F(AttackTest, TrajectoryContamination) {
  TrajectoryConfig config;
  config.distill_ids = {ctx_->plan.TargetTrainIds()[0]};
  auto set = TrajectoryMia(*ctx_, ScoredIds(*ctx_), config);
  EXPECT_EQ(set.status().code(), absl::StatusCode::kFailedPrecondition);
  EXPECT_THAT(set.status().message(), HasSubstr("contamination"));
}

TEST_F(AttackTest, TrajectoryZeroTeacherIsChance) {
  AttackContext blank = *ctx_;
  blank.target = LinearHead(store_->dim(), store_->num_classes());
  for (LinearHead& s : blank.shadows) s = blank.target;
  TrajectoryConfig config;
  config.distill_ids = {blank.population_ids.begin(), blank.population_ids.begin() + 64};
  config.distill_epochs = 3;
  auto set = TrajectoryMia(blank, ScoredIds(blank), config);
  ASSERT_TRUE(set.ok()) << set.status();
  // Zero teacher: every student starts at and stays on the uniform head.
  EXPECT_EQ(ScoreAuc(*set), 0.5);
}

TEST_F(AttackTest, IhaNeedsTrainingSet) {
  AttackContext blind = *ctx_;
  blind.target_train_ids.reset();
  auto set = Iha(blind, ScoredIds(blind));
  EXPECT_EQ(set.status().code(), absl::StatusCode::kPermissionDenied);
  EXPECT_THAT(set.status().message(), HasSubstr("threat model"));
}

TEST(IhaTest, ZeroGradientScoreIgnoresDamping) {
  const FeatureDataset store = Store(3, 4, 30, 1.0);
  ContextOptions options;
  options.shots = 3;
  options.num_shadows = 2;
  options.grant_train_ids = true;
  auto ctx = BuildContext(store, options);
  ASSERT_TRUE(ctx.ok());
  // Saturate class 0 so its samples have p = e_0 exactly.
  ctx->target.weights().setZero();
  ctx->target.bias() << 2000.0, 0.0, 0.0;
  std::vector<SampleId> zero_grad;
  for (SampleId id : ctx->population_ids) {
    if (store.label(id) == 0) zero_grad.push_back(id);
  }
  ASSERT_FALSE(zero_grad.empty());
  for (double damping : {1e-3, 1e-1, 10.0}) {
    auto set = Iha(*ctx, zero_grad, IhaConfig{damping});
    ASSERT_TRUE(set.ok()) << set.status();
    for (const ScoreRow& row : set->rows) EXPECT_EQ(row.score, 0.0);
  }
}

TEST_F(AttackTest, SignConventionOnOverfitTarget) {
  AttackSuiteConfig config;
  const std::vector<SampleId> ids = ScoredIds(*ctx_);
  config.trajectory.distill_ids = {ctx_->population_ids.begin(),
                                   ctx_->population_ids.begin() + 150};
  config.ml_leaks.shadow_index = 0;
  for (std::string_view name : kAttackNames) {
    auto set = RunAttack(name, *ctx_, ids, config);
    ASSERT_TRUE(set.ok()) << name << ": " << set.status();
    ASSERT_TRUE(set->Validate().ok());
    EXPECT_GT(ScoreAuc(*set), 0.5) << name;
  }
}

TEST_F(AttackTest, Deterministic) {
  AttackSuiteConfig config;
  config.trajectory.distill_ids = {ctx_->population_ids.begin(),
                                   ctx_->population_ids.begin() + 64};
  const std::vector<SampleId> ids = ScoredIds(*ctx_);
  for (std::string_view name : kAttackNames) {
    auto a = RunAttack(name, *ctx_, ids, config);
    auto b = RunAttack(name, *ctx_, ids, config);
    ASSERT_TRUE(a.ok() && b.ok()) << name;
    EXPECT_EQ(FormatScoreCsv(*a, 0, 0), FormatScoreCsv(*b, 0, 0)) << name;
  }
  EXPECT_FALSE(RunAttack("label_only", *ctx_, ids, config).ok());
}

TEST(ScoreCsvTest, RoundTrip) {
  AttackScoreSet set;
  set.attack = "lira";
  set.rows = {{4, 0.1 + 0.2, true}, {9, -1e-300, false}};
  const std::string csv = FormatScoreCsv(set, 2, 3);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kScoreCsvHeader);
  auto rows = ParseScoreCsv(csv);
  ASSERT_TRUE(rows.ok());
  ASSERT_EQ(rows->size(), 2u);
  EXPECT_EQ((*rows)[0].score, 0.1 + 0.2);
  EXPECT_EQ((*rows)[1].score, -1e-300);
  EXPECT_EQ((*rows)[1].repeat, 2);
  EXPECT_EQ((*rows)[1].target_index, 3);
  EXPECT_EQ(ParseScoreCsv("a,b\n").status().code(), absl::StatusCode::kDataLoss);
}

TEST(ScoreSetTest, ValidateRejectsSingleClass) {
  AttackScoreSet set;
  set.rows = {{1, 0.5, true}};
  EXPECT_FALSE(set.Validate().ok());
  set.rows.push_back({2, NAN, false});
  EXPECT_FALSE(set.Validate().ok());
}

}  // namespace
}  // namespace miaudit
