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


#include "miaudit/attacks/context.h"

#include <algorithm>

#include "absl/strings/str_cat.h"

namespace miaudit {

absl::Status AttackContext::Validate() const {
  if (dataset == nullptr) return absl::FailedPreconditionError("no dataset");
  if (static_cast<int>(shadows.size()) != plan.num_shadows()) {
    return absl::FailedPreconditionError(
        absl::StrCat(shadows.size(), " shadow heads for a plan with ",
                     plan.num_shadows(), " shadow rows"));
  }
  auto check_head = [&](const LinearHead& head) {
    return head.dim() == dataset->dim() &&
           head.num_classes() == dataset->num_classes();
  };
  if (!check_head(target)) {
    return absl::FailedPreconditionError("target head does not match dataset");
  }
  for (const LinearHead& shadow : shadows) {
    if (!check_head(shadow)) {
      return absl::FailedPreconditionError("shadow head does not match dataset");
    }
  }
  for (SampleId z : population_ids) {
    if (z >= dataset->size()) {
      return absl::FailedPreconditionError(
          absl::StrCat("population id ", z, " out of range"));
    }
    if (IsTargetMember(z)) {
      return absl::FailedPreconditionError(absl::StrCat(
          "population id ", z, " is in the target training set"));
    }
  }
  return absl::OkStatus();
}

bool AttackContext::IsTargetMember(SampleId id) const {
  const auto column = plan.Column(id);
  return column.has_value() && plan.target_members[*column] != 0;
}

bool AttackContext::IsShadowMember(int shadow, SampleId id) const {
  const auto column = plan.Column(id);
  return column.has_value() && plan.shadow_members[shadow][*column] != 0;
}

}  // namespace miaudit
