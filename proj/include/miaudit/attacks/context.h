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


#ifndef MIAUDIT_ATTACKS_CONTEXT_H_
#define MIAUDIT_ATTACKS_CONTEXT_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "miaudit/data/feature_dataset.h"
#include "miaudit/data/sampling.h"
#include "miaudit/trainer/linear_head.h"

namespace miaudit {

// Everything an attacker is allowed to see for one target model. The
// dataset is borrowed and must outlive the context.
struct AttackContext {
  const FeatureDataset* dataset = nullptr;
  LinearHead target;
  // shadows[m] was trained on plan.ShadowTrainIds(m).
  std::vector<LinearHead> shadows;
  SplitPlan plan;
  // Known non-members z drawn from the data distribution.
  std::vector<SampleId> population_ids;
  // The target's exact training set. Only the IHA threat model grants it.
  std::optional<std::vector<SampleId>> target_train_ids;
  // Shared training recipe, reused for distillation.
  TrainConfig train_config;
  uint64_t seed = 0;

  // Shadow count matches the plan, population avoids the target training
  // set, heads match the dataset shape.
  absl::Status Validate() const;

  // Ground truth for evaluation; ids outside the pool are non-members.
  bool IsTargetMember(SampleId id) const;
  // Whether shadow m trained on id.
  bool IsShadowMember(int shadow, SampleId id) const;
};

}  // namespace miaudit

#endif  // MIAUDIT_ATTACKS_CONTEXT_H_
