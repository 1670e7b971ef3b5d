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

#include "miaudit/data/synth.h"

#include <random>

#include "absl/status/status.h"

namespace miaudit {

absl::StatusOr<FeatureDataset> SynthGaussian(const SynthSpec& spec) {
  if (spec.num_classes < 2 || spec.dim < 1 || spec.per_class < 1 ||
      !(spec.separation >= 0) || spec.num_views < 0 ||
      !(spec.view_noise >= 0)) {
    return absl::InvalidArgumentError(
        "synthetic spec requires classes >= 2, dim >= 1, per_class >= 1, "
        "separation >= 0, views >= 0, view_noise >= 0");
  }
  const int n = spec.num_classes * spec.per_class;
  const int k = spec.num_views;
  RowMatrix features(n, spec.dim);
  RowMatrix views(static_cast<Eigen::Index>(n) * k, spec.dim);
  std::vector<int> labels(n);

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto f32 = [](double v) { return static_cast<double>(static_cast<float>(v)); };

  for (int i = 0; i < n; ++i) {
    const int c = i / spec.per_class;
    labels[i] = c;
    for (int j = 0; j < spec.dim; ++j) {
      const double mean = (j == c % spec.dim) ? spec.separation : 0.0;
      features(i, j) = f32(mean + normal(rng));
    }
    for (int v = 0; v < k; ++v) {
      for (int j = 0; j < spec.dim; ++j) {
        views(static_cast<Eigen::Index>(i) * k + v, j) =
            f32(features(i, j) + spec.view_noise * normal(rng));
      }
    }
  }
  return FeatureDataset::Create(spec.num_classes, std::move(features),
                                std::move(labels), k, std::move(views));
}

}  // namespace miaudit
