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

#ifndef MIAUDIT_TRAINER_DISTILL_H_
#define MIAUDIT_TRAINER_DISTILL_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "miaudit/data/feature_dataset.h"
#include "miaudit/trainer/linear_head.h"

namespace miaudit {

// Per-probe hard-label cross-entropy under the student after each
// distillation epoch, followed by the teacher's own loss. Length is
// distill_epochs + 1.
using LossTrajectory = std::vector<double>;

struct DistillResult {
  LinearHead student;
  std::vector<LossTrajectory> trajectories;  // aligned with probe_ids
  std::vector<SampleId> probe_ids;
  // Mean KL(teacher || student) over the distillation set after each epoch.
  std::vector<double> epoch_kl;
};

// Trains a zero-initialized student on the teacher's posteriors (KL loss,
// the same SGD schedule as TrainHead). Labels of `distill_set` are ignored.
// `probe_ids` only labels the rows of `probes` in the result.
absl::StatusOr<DistillResult> Distill(const LinearHead& teacher,
                                      const TrainingData& distill_set,
                                      const TrainingData& probes,
                                      std::span<const SampleId> probe_ids,
                                      int distill_epochs,
                                      const TrainConfig& config, uint64_t seed);

absl::StatusOr<DistillResult> Distill(const LinearHead& teacher,
                                      const FeatureDataset& dataset,
                                      std::span<const SampleId> distill_ids,
                                      std::span<const SampleId> probe_ids,
                                      int distill_epochs,
                                      const TrainConfig& config, uint64_t seed);

}  // namespace miaudit

#endif  // MIAUDIT_TRAINER_DISTILL_H_
