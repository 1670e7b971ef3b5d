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


// Test-side helpers for assembling attack contexts without the runner.

#ifndef MIAUDIT_TESTS_SUPPORT_FIXTURES_H_
#define MIAUDIT_TESTS_SUPPORT_FIXTURES_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "miaudit/attacks/context.h"
#include "miaudit/attacks/score_set.h"
#include "miaudit/data/feature_dataset.h"
#include "miaudit/data/sampling.h"
#include "miaudit/data/synth.h"

namespace miaudit::testing {

struct ContextOptions {
  int shots = 4;  // target members per class
  int num_shadows = 4;
  SplitProtocol protocol = SplitProtocol::kBalanced;
  TrainConfig train{50, 16, 1e-2, 0.0};
  int population_size = 200;
  bool grant_train_ids = false;
  uint64_t seed = 1;
};

// Pool of 2S per class, balanced shadow rows, target on S per class of the
// pool (or row 0 under the efficient protocol), population shuffled from
// the rest.
absl::StatusOr<AttackContext> BuildContext(const FeatureDataset& dataset,
                                           const ContextOptions& options);

// Pool ids followed by the first `extra` population ids.
std::vector<SampleId> ScoredIds(const AttackContext& ctx, std::size_t extra = 0);

double ScoreAuc(const AttackScoreSet& set);

}  // namespace miaudit::testing

#endif  // MIAUDIT_TESTS_SUPPORT_FIXTURES_H_
