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

// Shot sampling and membership design. Every function here is a pure
// function of its inputs and seed.

#ifndef MIAUDIT_DATA_SAMPLING_H_
#define MIAUDIT_DATA_SAMPLING_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "miaudit/data/feature_dataset.h"

namespace miaudit {

struct ShotSpec {
  int shots = 1;  // examples per class
  int num_classes = 2;
};

// Draws exactly `spec.shots` ids per class from `candidates` without
// replacement. Returns ids in ascending order. kResourceExhausted names the
// first class with too few candidates.
absl::StatusOr<std::vector<SampleId>> SampleShots(
    const FeatureDataset& dataset, std::span<const SampleId> candidates,
    const ShotSpec& spec, uint64_t seed);

// Same, drawing from the whole dataset.
absl::StatusOr<std::vector<SampleId>> SampleShots(const FeatureDataset& dataset,
                                                  const ShotSpec& spec,
                                                  uint64_t seed);

enum class SplitProtocol {
  // One target; each pool sample is IN for exactly M/2 shadows.
  kBalanced,
  // M + 1 rows (target first), each entry IN with probability 1/2.
  kEfficient,
};

std::string_view SplitProtocolName(SplitProtocol protocol);
absl::StatusOr<SplitProtocol> ParseSplitProtocol(std::string_view name);

// Membership design matrix over an ordered pool.
struct SplitPlan {
  SplitProtocol protocol = SplitProtocol::kBalanced;
  std::vector<SampleId> pool_ids;                     // ascending
  std::vector<uint8_t> target_members;                // per pool column
  std::vector<std::vector<uint8_t>> shadow_members;   // M x pool

  int num_shadows() const { return static_cast<int>(shadow_members.size()); }
  std::size_t pool_size() const { return pool_ids.size(); }

  std::optional<std::size_t> Column(SampleId id) const;
  std::vector<SampleId> TargetTrainIds() const;
  std::vector<SampleId> ShadowTrainIds(int shadow) const;

  // Marks exactly `ids` as target members. Every id must be in the pool.
  absl::Status SetTargetMembers(std::span<const SampleId> ids);

  // Treats the plan as M + 1 interchangeable models (target = model 0,
  // shadow m = model m + 1) and returns the plan with model `model` as the
  // target and the others, in order, as shadows.
  SplitPlan Rotated(int model) const;
};

// Builds the shadow rows (and, for kEfficient, the Bernoulli target row).
// The balanced protocol leaves every target entry OUT; assign the target
// with SetTargetMembers. Odd M under kBalanced is kFailedPrecondition.
absl::StatusOr<SplitPlan> MakeShadowSplits(std::span<const SampleId> pool_ids,
                                           int num_shadows,
                                           SplitProtocol protocol,
                                           uint64_t seed);

struct HpoSplit {
  std::vector<SampleId> train_ids;
  std::vector<SampleId> val_ids;
  // False when the class populations were too small to stratify and the
  // split fell back to a plain random split.
  bool stratified = true;
};

// Samples half of `train_ids`, then splits that half 70/30 into HPO train
// and validation ids: val = max(1, floor(0.3 * half)).
absl::StatusOr<HpoSplit> MakeHpoSplit(const FeatureDataset& dataset,
                                      std::span<const SampleId> train_ids,
                                      uint64_t seed);

}  // namespace miaudit

#endif  // MIAUDIT_DATA_SAMPLING_H_
