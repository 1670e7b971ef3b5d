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

#include "miaudit/eval/stats.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace miaudit {
namespace {

double SortedPercentile(const std::vector<double>& sorted, double q) {
  const double h = static_cast<double>(sorted.size() - 1) * q;
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::vector<double> MidRanks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && v[order[j]] == v[order[i]]) ++j;
    // Positions i..j-1 share the rank average, 1-based.
    const double rank = (static_cast<double>(i + j - 1) / 2.0) + 1.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

}  // namespace

absl::StatusOr<double> Percentile(std::span<const double> values, double q) {
  if (values.empty()) return absl::InvalidArgumentError("no values");
  if (!(q >= 0.0 && q <= 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat("quantile ", q, " outside [0, 1]"));
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return SortedPercentile(sorted, q);
}

double Median(std::span<const double> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return SortedPercentile(sorted, 0.5);
}

double Iqr(std::span<const double> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return SortedPercentile(sorted, 0.75) - SortedPercentile(sorted, 0.25);
}

absl::StatusOr<std::vector<RepeatSummary>> AggregateRepeats(
    const std::vector<std::vector<double>>& per_repeat_tprs,
    std::span<const double> fpr_targets) {
  if (per_repeat_tprs.empty()) {
    return absl::InvalidArgumentError("need at least one repeat");
  }
  std::vector<RepeatSummary> out;
  for (std::size_t f = 0; f < fpr_targets.size(); ++f) {
    RepeatSummary summary;
    summary.fpr_target = fpr_targets[f];
    for (std::size_t r = 0; r < per_repeat_tprs.size(); ++r) {
      if (per_repeat_tprs[r].size() != fpr_targets.size()) {
        return absl::InvalidArgumentError(
            absl::StrCat("repeat ", r, " has ", per_repeat_tprs[r].size(),
                         " values for ", fpr_targets.size(), " targets"));
      }
      summary.values.push_back(per_repeat_tprs[r][f]);
    }
    summary.median = Median(summary.values);
    summary.iqr = Iqr(summary.values);
    out.push_back(std::move(summary));
  }
  return out;
}

double SpearmanCorrelation(std::span<const double> x,
                           std::span<const double> y) {
  const std::vector<double> rx = MidRanks(x);
  const std::vector<double> ry = MidRanks(y);
  const double n = static_cast<double>(rx.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

absl::StatusOr<ShotTrendReport> ShotTrend(std::span<const double> shots,
                                          std::span<const double> medians) {
  if (shots.size() != medians.size()) {
    return absl::InvalidArgumentError("shots and medians differ in length");
  }
  if (shots.size() < 3) {
    return absl::InvalidArgumentError("shot trend needs at least 3 levels");
  }
  std::vector<std::pair<double, double>> levels;
  for (std::size_t i = 0; i < shots.size(); ++i) {
    levels.emplace_back(shots[i], medians[i]);
  }
  std::stable_sort(levels.begin(), levels.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<double> s, m;
  for (const auto& [shot, median] : levels) {
    s.push_back(shot);
    m.push_back(median);
  }
  ShotTrendReport report;
  report.spearman = SpearmanCorrelation(s, m);
  for (std::size_t i = 0; i + 1 < m.size(); ++i) {
    if (m[i + 1] > m[i]) ++report.inversions;
  }
  return report;
}

}  // namespace miaudit
