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


#include "support/fixtures.h"

#include <algorithm>
#include <random>

#include "miaudit/common/seed.h"
#include "miaudit/common/status_macros.h"
#include "miaudit/eval/roc.h"

namespace miaudit::testing {

absl::StatusOr<AttackContext> BuildContext(const FeatureDataset& dataset,
                                           const ContextOptions& options) {
  const int classes = dataset.num_classes();
  ASSIGN_OR_RETURN(std::vector<SampleId> pool,
                   SampleShots(dataset, ShotSpec{2 * options.shots, classes},
                               DeriveSeed(options.seed, "pool")));
  ASSIGN_OR_RETURN(SplitPlan plan,
                   MakeShadowSplits(pool, options.num_shadows, options.protocol,
                                    DeriveSeed(options.seed, "splits")));
  if (options.protocol == SplitProtocol::kBalanced) {
    ASSIGN_OR_RETURN(std::vector<SampleId> members,
                     SampleShots(dataset, pool, ShotSpec{options.shots, classes},
                                 DeriveSeed(options.seed, "target")));
    RETURN_IF_ERROR(plan.SetTargetMembers(members));
  }

  AttackContext ctx;
  ctx.dataset = &dataset;
  ctx.plan = plan;
  ctx.train_config = options.train;
  ctx.seed = DeriveSeed(options.seed, "attack");
  const std::vector<SampleId> target_ids = plan.TargetTrainIds();
  ASSIGN_OR_RETURN(ctx.target, TrainHead(Gather(dataset, target_ids), options.train,
                                         DeriveSeed(options.seed, "model", {0})));
  for (int m = 0; m < options.num_shadows; ++m) {
    ASSIGN_OR_RETURN(LinearHead shadow,
                     TrainHead(Gather(dataset, plan.ShadowTrainIds(m)), options.train,
                               DeriveSeed(options.seed, "model", {m + 1u})));
    ctx.shadows.push_back(std::move(shadow));
  }
  if (options.grant_train_ids) ctx.target_train_ids = target_ids;

  std::vector<SampleId> rest;
  for (SampleId id : dataset.AllIds()) {
    if (!plan.Column(id)) rest.push_back(id);
  }
  std::mt19937_64 rng(DeriveSeed(options.seed, "population"));
  std::shuffle(rest.begin(), rest.end(), rng);
  // Left in shuffled order so any prefix is a uniform draw.
  rest.resize(std::min<std::size_t>(rest.size(), options.population_size));
  ctx.population_ids = rest;
  RETURN_IF_ERROR(ctx.Validate());
  return ctx;
}

std::vector<SampleId> ScoredIds(const AttackContext& ctx, std::size_t extra) {
  std::vector<SampleId> ids = ctx.plan.pool_ids;
  for (std::size_t i = 0; i < extra && i < ctx.population_ids.size(); ++i) {
    ids.push_back(ctx.population_ids[i]);
  }
  return ids;
}

double ScoreAuc(const AttackScoreSet& set) {
  const std::vector<double> in = set.MemberScores(), out = set.NonMemberScores();
  auto curve = ComputeRoc(in, out);
  return curve.ok() ? Auc(*curve) : -1.0;
}

}  // namespace miaudit::testing
