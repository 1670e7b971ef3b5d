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

#ifndef MIAUDIT_EVAL_STATS_H_
#define MIAUDIT_EVAL_STATS_H_

#include <span>
#include <vector>

#include "absl/status/statusor.h"

namespace miaudit {

// Linear-interpolation percentile: sorted index h = (n - 1) q, q in [0, 1].
// kInvalidArgument on empty input or q outside [0, 1].
absl::StatusOr<double> Percentile(std::span<const double> values, double q);

double Median(std::span<const double> values);  // requires non-empty
double Iqr(std::span<const double> values);     // p75 - p25; requires non-empty

struct RepeatSummary {
  double fpr_target = 0.0;
  std::vector<double> values;  // one TPR per repeat
  double median = 0.0;
  double iqr = 0.0;
};

// per_repeat_tprs[r][f] is repeat r's TPR at fpr_targets[f]. One summary per
// target.
absl::StatusOr<std::vector<RepeatSummary>> AggregateRepeats(
    const std::vector<std::vector<double>>& per_repeat_tprs,
    std::span<const double> fpr_targets);

// Spearman correlation with mid-ranks for ties; 0 if either side has zero
// variance.
double SpearmanCorrelation(std::span<const double> x,
                           std::span<const double> y);

struct ShotTrendReport {
  double spearman = 0.0;
  // Adjacent shot levels (in ascending S) where the median goes up.
  int inversions = 0;
};

// `shots` and `medians` are aligned; the pairs are sorted by shot count
// first. kInvalidArgument with fewer than three levels.
absl::StatusOr<ShotTrendReport> ShotTrend(std::span<const double> shots,
                                          std::span<const double> medians);

}  // namespace miaudit

#endif  // MIAUDIT_EVAL_STATS_H_
