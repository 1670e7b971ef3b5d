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

#include "miaudit/data/sampling.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "absl/strings/str_cat.h"
#include "miaudit/common/seed.h"

namespace miaudit {
namespace {

std::vector<SampleId> SortedCopy(std::span<const SampleId> ids) {
  std::vector<SampleId> out(ids.begin(), ids.end());
  std::sort(out.begin(), out.end());
  return out;
}

// Splits `total` across groups proportionally to `sizes` (largest remainder,
// ties to the lower group index).
std::vector<std::size_t> Apportion(const std::vector<std::size_t>& sizes,
                                   std::size_t total) {
  const std::size_t sum = std::accumulate(sizes.begin(), sizes.end(),
                                          std::size_t{0});
  std::vector<std::size_t> out(sizes.size(), 0);
  if (sum == 0) return out;
  std::vector<std::pair<std::size_t, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t g = 0; g < sizes.size(); ++g) {
    out[g] = total * sizes[g] / sum;
    assigned += out[g];
    remainders.emplace_back(total * sizes[g] % sum, g);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t i = 0; assigned < total; ++i, ++assigned) {
    ++out[remainders[i].second];
  }
  return out;
}

}  // namespace

absl::StatusOr<std::vector<SampleId>> SampleShots(
    const FeatureDataset& dataset, std::span<const SampleId> candidates,
    const ShotSpec& spec, uint64_t seed) {
  if (spec.shots < 1) return absl::InvalidArgumentError("shots must be >= 1");
  if (spec.num_classes != dataset.num_classes()) {
    return absl::InvalidArgumentError(
        absl::StrCat("shot spec has ", spec.num_classes,
                     " classes, dataset has ", dataset.num_classes()));
  }
  const std::vector<SampleId> sorted = SortedCopy(candidates);
  if (static_cast<std::size_t>(spec.num_classes) * spec.shots > sorted.size()) {
    return absl::ResourceExhaustedError(
        absl::StrCat("C * S = ", spec.num_classes * spec.shots,
                     " exceeds pool size ", sorted.size()));
  }
  auto groups = dataset.GroupByClass(sorted);
  std::vector<SampleId> out;
  out.reserve(static_cast<std::size_t>(spec.num_classes) * spec.shots);
  for (int c = 0; c < spec.num_classes; ++c) {
    auto& group = groups[c];
    if (group.size() < static_cast<std::size_t>(spec.shots)) {
      return absl::ResourceExhaustedError(
          absl::StrCat("class ", c, " has ", group.size(),
                       " samples, need ", spec.shots));
    }
    std::mt19937_64 rng(DeriveSeed(seed, "shots", {static_cast<uint64_t>(c)}));
    std::shuffle(group.begin(), group.end(), rng);
    out.insert(out.end(), group.begin(), group.begin() + spec.shots);
  }
  std::sort(out.begin(), out.end());
  return out;
}

absl::StatusOr<std::vector<SampleId>> SampleShots(const FeatureDataset& dataset,
                                                  const ShotSpec& spec,
                                                  uint64_t seed) {
  const std::vector<SampleId> all = dataset.AllIds();
  return SampleShots(dataset, all, spec, seed);
}

std::string_view SplitProtocolName(SplitProtocol protocol) {
  return protocol == SplitProtocol::kBalanced ? "balanced" : "efficient";
}

absl::StatusOr<SplitProtocol> ParseSplitProtocol(std::string_view name) {
  if (name == "balanced") return SplitProtocol::kBalanced;
  if (name == "efficient") return SplitProtocol::kEfficient;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown protocol '", std::string(name),
                   "' (balanced | efficient)"));
}

std::optional<std::size_t> SplitPlan::Column(SampleId id) const {
  auto it = std::lower_bound(pool_ids.begin(), pool_ids.end(), id);
  if (it == pool_ids.end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - pool_ids.begin());
}

namespace {
std::vector<SampleId> Members(const std::vector<SampleId>& pool,
                              const std::vector<uint8_t>& row) {
  std::vector<SampleId> out;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (row[i]) out.push_back(pool[i]);
  }
  return out;
}
}  // namespace

std::vector<SampleId> SplitPlan::TargetTrainIds() const {
  return Members(pool_ids, target_members);
}

std::vector<SampleId> SplitPlan::ShadowTrainIds(int shadow) const {
  return Members(pool_ids, shadow_members[shadow]);
}

absl::Status SplitPlan::SetTargetMembers(std::span<const SampleId> ids) {
  std::vector<uint8_t> row(pool_ids.size(), 0);
  for (SampleId id : ids) {
    auto col = Column(id);
    if (!col) {
      return absl::InvalidArgumentError(
          absl::StrCat("sample ", id, " is not in the pool"));
    }
    row[*col] = 1;
  }
  target_members = std::move(row);
  return absl::OkStatus();
}

SplitPlan SplitPlan::Rotated(int model) const {
  if (model == 0) return *this;
  SplitPlan out;
  out.protocol = protocol;
  out.pool_ids = pool_ids;
  out.target_members = shadow_members[model - 1];
  out.shadow_members.reserve(shadow_members.size());
  out.shadow_members.push_back(target_members);
  for (int m = 0; m < num_shadows(); ++m) {
    if (m != model - 1) out.shadow_members.push_back(shadow_members[m]);
  }
  return out;
}

absl::StatusOr<SplitPlan> MakeShadowSplits(std::span<const SampleId> pool_ids,
                                           int num_shadows,
                                           SplitProtocol protocol,
                                           uint64_t seed) {
  if (num_shadows < 1) {
    return absl::FailedPreconditionError("shadow count must be >= 1");
  }
  if (protocol == SplitProtocol::kBalanced && num_shadows % 2 != 0) {
    return absl::FailedPreconditionError(absl::StrCat(
        "balanced protocol requires an even shadow count, got ", num_shadows));
  }
  SplitPlan plan;
  plan.protocol = protocol;
  plan.pool_ids = SortedCopy(pool_ids);
  if (std::adjacent_find(plan.pool_ids.begin(), plan.pool_ids.end()) !=
      plan.pool_ids.end()) {
    return absl::InvalidArgumentError("pool ids must be unique");
  }
  const std::size_t n = plan.pool_ids.size();
  plan.target_members.assign(n, 0);
  plan.shadow_members.assign(num_shadows, std::vector<uint8_t>(n, 0));

  if (protocol == SplitProtocol::kBalanced) {
    std::vector<int> order(num_shadows);
    for (std::size_t i = 0; i < n; ++i) {
      std::iota(order.begin(), order.end(), 0);
      std::mt19937_64 rng(DeriveSeed(seed, "balanced", {i}));
      std::shuffle(order.begin(), order.end(), rng);
      for (int m = 0; m < num_shadows / 2; ++m) {
        plan.shadow_members[order[m]][i] = 1;
      }
    }
  } else {
    std::mt19937_64 rng(DeriveSeed(seed, "efficient"));
    std::bernoulli_distribution coin(0.5);
    for (std::size_t i = 0; i < n; ++i) plan.target_members[i] = coin(rng);
    for (auto& row : plan.shadow_members) {
      for (std::size_t i = 0; i < n; ++i) row[i] = coin(rng);
    }
  }
  return plan;
}

absl::StatusOr<HpoSplit> MakeHpoSplit(const FeatureDataset& dataset,
                                      std::span<const SampleId> train_ids,
                                      uint64_t seed) {
  if (train_ids.size() < 10) {
    return absl::InvalidArgumentError(absl::StrCat(
        "HPO split needs at least 10 samples, got ", train_ids.size()));
  }
  const std::vector<SampleId> sorted = SortedCopy(train_ids);
  const std::size_t half = sorted.size() / 2;
  const std::size_t val = std::max<std::size_t>(1, 3 * half / 10);

  auto groups = dataset.GroupByClass(sorted);
  std::vector<std::size_t> sizes;
  for (const auto& g : groups) sizes.push_back(g.size());
  const std::vector<std::size_t> half_sizes = Apportion(sizes, half);
  const std::vector<std::size_t> val_sizes = Apportion(half_sizes, val);

  bool feasible = true;
  for (std::size_t c = 0; c < groups.size(); ++c) {
    if (half_sizes[c] == 0) continue;
    if (val_sizes[c] == 0 || val_sizes[c] >= half_sizes[c]) feasible = false;
  }

  HpoSplit split;
  split.stratified = feasible;
  if (feasible) {
    for (std::size_t c = 0; c < groups.size(); ++c) {
      auto& group = groups[c];
      std::mt19937_64 rng(DeriveSeed(seed, "hpo-split", {c}));
      std::shuffle(group.begin(), group.end(), rng);
      split.val_ids.insert(split.val_ids.end(), group.begin(),
                           group.begin() + val_sizes[c]);
      split.train_ids.insert(split.train_ids.end(),
                             group.begin() + val_sizes[c],
                             group.begin() + half_sizes[c]);
    }
  } else {
    std::vector<SampleId> shuffled = sorted;
    std::mt19937_64 rng(DeriveSeed(seed, "hpo-split-plain"));
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    split.val_ids.assign(shuffled.begin(), shuffled.begin() + val);
    split.train_ids.assign(shuffled.begin() + val, shuffled.begin() + half);
  }
  std::sort(split.train_ids.begin(), split.train_ids.end());
  std::sort(split.val_ids.begin(), split.val_ids.end());
  return split;
}

}  // namespace miaudit
