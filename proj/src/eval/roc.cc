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

#include "miaudit/eval/roc.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace miaudit {

absl::StatusOr<RocCurve> ComputeRoc(std::span<const double> member_scores,
                                    std::span<const double> nonmember_scores) {
  if (member_scores.empty() || nonmember_scores.empty()) {
    return absl::FailedPreconditionError(
        "ROC needs at least one member and one non-member");
  }
  std::vector<std::pair<double, bool>> scored;
  scored.reserve(member_scores.size() + nonmember_scores.size());
  for (double s : member_scores) scored.emplace_back(s, true);
  for (double s : nonmember_scores) scored.emplace_back(s, false);
  for (const auto& [s, member] : scored) {
    if (!std::isfinite(s)) {
      return absl::InvalidArgumentError(absl::StrCat("non-finite score ", s));
    }
  }
  std::sort(scored.begin(), scored.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  const double positives = static_cast<double>(member_scores.size());
  const double negatives = static_cast<double>(nonmember_scores.size());
  RocCurve curve;
  curve.points.push_back({0.0, 0.0});
  std::size_t tp = 0;
  std::size_t fp = 0;
  for (std::size_t i = 0; i < scored.size();) {
    const double threshold = scored[i].first;
    for (; i < scored.size() && scored[i].first == threshold; ++i) {
      (scored[i].second ? tp : fp) += 1;
    }
    curve.points.push_back({static_cast<double>(fp) / negatives,
                            static_cast<double>(tp) / positives});
  }
  return curve;
}

double Auc(const RocCurve& curve) {
  double area = 0.0;
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    const RocPoint& a = curve.points[i - 1];
    const RocPoint& b = curve.points[i];
    area += (b.fpr - a.fpr) * (a.tpr + b.tpr) / 2.0;
  }
  return area;
}

double TprAtFpr(const RocCurve& curve, double fpr_target) {
  double best = 0.0;
  for (const RocPoint& p : curve.points) {
    if (p.fpr <= fpr_target) best = std::max(best, p.tpr);
  }
  return best;
}

absl::StatusOr<TprAtFprResult> TprAtFpr(
    std::span<const double> member_scores,
    std::span<const double> nonmember_scores, double fpr_target) {
  if (!(fpr_target > 0.0 && fpr_target < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("fpr target ", fpr_target, " outside (0, 1)"));
  }
  auto curve = ComputeRoc(member_scores, nonmember_scores);
  if (!curve.ok()) return curve.status();
  TprAtFprResult result;
  result.tpr = TprAtFpr(*curve, fpr_target);
  result.resolution_warning =
      static_cast<double>(nonmember_scores.size()) * fpr_target < 1.0;
  return result;
}

}  // namespace miaudit
