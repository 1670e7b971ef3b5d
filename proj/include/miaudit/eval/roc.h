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

#ifndef MIAUDIT_EVAL_ROC_H_
#define MIAUDIT_EVAL_ROC_H_

#include <span>
#include <vector>

#include "absl/status/statusor.h"

namespace miaudit {

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
  friend bool operator==(const RocPoint&, const RocPoint&) = default;
};

// Vertices from (0, 0) to (1, 1); fpr and tpr are nondecreasing.
struct RocCurve {
  std::vector<RocPoint> points;
};

// Sweeps every distinct score as a threshold, highest first, calling
// score >= threshold a member. Tied scores form a single vertex.
// kFailedPrecondition unless both sides are non-empty; kInvalidArgument on
// non-finite scores.
absl::StatusOr<RocCurve> ComputeRoc(std::span<const double> member_scores,
                                    std::span<const double> nonmember_scores);

// Trapezoidal area, equal to the Mann-Whitney statistic with half-credit
// ties.
double Auc(const RocCurve& curve);

struct TprAtFprResult {
  double tpr = 0.0;
  // Set when there are fewer than 1 / fpr_target non-members, i.e. the
  // empirical FPR cannot resolve the target.
  bool resolution_warning = false;
};

// Largest TPR over vertices with FPR <= target (step rule, no
// interpolation).
double TprAtFpr(const RocCurve& curve, double fpr_target);

absl::StatusOr<TprAtFprResult> TprAtFpr(
    std::span<const double> member_scores,
    std::span<const double> nonmember_scores, double fpr_target);

}  // namespace miaudit

#endif  // MIAUDIT_EVAL_ROC_H_
