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


// Experiment manifests: a flat "key = value" text file split into
// [sections]. Lists are comma separated; '#' starts a comment. Unknown
// sections and keys are rejected. See README.md for the schema.

#ifndef MIAUDIT_ORCHESTRATOR_MANIFEST_H_
#define MIAUDIT_ORCHESTRATOR_MANIFEST_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "miaudit/attacks/attacks.h"
#include "miaudit/data/sampling.h"
#include "miaudit/data/synth.h"
#include "miaudit/trainer/hpo.h"
#include "miaudit/trainer/linear_head.h"

namespace miaudit {

struct ExperimentManifest {
  // [dataset]: either a feature store path or a synthetic spec.
  bool synthetic = true;
  std::string dataset_path;
  SynthSpec synth;

  // [experiment]
  std::vector<int> shots = {4};
  int num_shadows = 16;
  SplitProtocol protocol = SplitProtocol::kBalanced;
  int repeats = 1;
  std::vector<std::string> attacks = {"loss"};
  std::vector<double> fpr_targets = {0.001, 0.01, 0.1};
  int population_size = 500;
  uint64_t seed = 0;
  int workers = 1;
  std::string output_dir = "miaudit_out";

  // [hpo]; "fixed" skips the search and uses [train].
  bool hpo_fixed = false;
  HpoStrategy hpo_strategy = HpoStrategy::kTpe;
  int hpo_trials = 20;
  HpoRanges hpo_ranges;

  // [train]
  TrainConfig train;

  // [attack.*]
  AttackSuiteConfig attack;
  int distill_size = 512;

  // Field-path-qualified kInvalidArgument on the first violation.
  absl::Status Validate() const;
};

absl::StatusOr<ExperimentManifest> ParseManifest(std::string_view text);
absl::StatusOr<ExperimentManifest> LoadManifest(const std::string& path);

// Deterministic rendering of every setting that affects results (so not
// workers or output_dir), parseable by ParseManifest.
std::string CanonicalManifest(const ExperimentManifest& manifest);
// Hex FNV-1a of CanonicalManifest.
std::string ManifestHash(const ExperimentManifest& manifest);

}  // namespace miaudit

#endif  // MIAUDIT_ORCHESTRATOR_MANIFEST_H_
