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


#ifndef MIAUDIT_ORCHESTRATOR_RUNNER_H_
#define MIAUDIT_ORCHESTRATOR_RUNNER_H_

#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "miaudit/data/feature_dataset.h"
#include "miaudit/orchestrator/manifest.h"

namespace miaudit {

inline constexpr char kDataDirEnv[] = "MIA_DATA_DIR";

// Relative paths resolve against $MIA_DATA_DIR when it is set.
std::string ResolveDataPath(const std::string& path);

absl::StatusOr<FeatureDataset> LoadExperimentDataset(
    const ExperimentManifest& manifest);

// Runs fn(0) .. fn(n - 1) on up to `workers` threads.
void ParallelFor(std::size_t n, int workers,
                 const std::function<void(std::size_t)>& fn);

struct RunOptions {
  // Reuse model and score files whose checksums verify.
  bool resume = false;
  std::ostream* log = nullptr;  // progress and warnings; may be null
};

struct CellError {
  std::string attack;
  int shots = 0;
  int repeat = 0;
  int target_index = 0;
  std::string message;
};

struct RunResult {
  std::string summary_json;  // as written to <output>/summary.json
  std::vector<CellError> errors;
  int rows = 0;
  int models_trained = 0;
  int models_reused = 0;
  int attack_cells_reused = 0;
};

// Output layout under manifest.output_dir:
//   models/S{S}_r{r}_{target|shadow}{i}_seed{seed}.miah
//   scores/S{S}_r{r}_{attack}_t{t}.csv
//   roc/S{S}_r{r}_{attack}_t{t}.csv
//   summary.json, manifest.txt
// Every data file has a sibling <file>.fnv1a checksum. Failing cells are
// reported in RunResult::errors and the summary; the call itself only fails
// when the dataset or output directory is unusable.
absl::StatusOr<RunResult> RunExperiment(const ExperimentManifest& manifest,
                                        const RunOptions& options = {});

}  // namespace miaudit

#endif  // MIAUDIT_ORCHESTRATOR_RUNNER_H_
