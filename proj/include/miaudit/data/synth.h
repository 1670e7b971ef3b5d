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

#ifndef MIAUDIT_DATA_SYNTH_H_
#define MIAUDIT_DATA_SYNTH_H_

#include <cstdint>

#include "absl/status/statusor.h"
#include "miaudit/data/feature_dataset.h"

namespace miaudit {

struct SynthSpec {
  int num_classes = 10;
  int dim = 32;
  int per_class = 100;
  // Class c is N(separation * e_{c mod dim}, I).
  double separation = 3.0;
  uint64_t seed = 0;
  // Augmented views are the original row plus N(0, view_noise^2 I) jitter.
  int num_views = 0;
  double view_noise = 0.1;
};

// Stand-in for frozen-backbone embeddings. Samples are laid out class by
// class; all values are representable as f32 so stores round-trip exactly.
absl::StatusOr<FeatureDataset> SynthGaussian(const SynthSpec& spec);

}  // namespace miaudit

#endif  // MIAUDIT_DATA_SYNTH_H_
