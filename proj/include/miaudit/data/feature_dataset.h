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

#ifndef MIAUDIT_DATA_FEATURE_DATASET_H_
#define MIAUDIT_DATA_FEATURE_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "Eigen/Core"
#include "absl/status/statusor.h"

namespace miaudit {

// Sample ids are row indices into the feature store.
using SampleId = std::size_t;

using RowMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Labeled embeddings with optional precomputed augmented views. Immutable
// once built, so it can be shared across worker threads.
class FeatureDataset {
 public:
  // `views` holds num_views rows per sample, sample-major: the k-th view of
  // sample i is row i * num_views + k. Validates every invariant.
  static absl::StatusOr<FeatureDataset> Create(int num_classes,
                                               RowMatrix features,
                                               std::vector<int> labels,
                                               int num_views = 0,
                                               RowMatrix views = RowMatrix());

  std::size_t size() const { return labels_.size(); }
  int dim() const { return static_cast<int>(features_.cols()); }
  int num_classes() const { return num_classes_; }
  int num_views() const { return num_views_; }

  int label(SampleId id) const { return labels_[id]; }
  const std::vector<int>& labels() const { return labels_; }
  const RowMatrix& features() const { return features_; }
  const RowMatrix& views() const { return views_; }

  // Query 0 is the original row; query q in [1, num_views] is view q - 1.
  Eigen::VectorXd Query(SampleId id, int query = 0) const;
  Eigen::VectorXd Row(SampleId id) const { return Query(id, 0); }

  // All sample ids, in ascending order.
  std::vector<SampleId> AllIds() const;

  // Ids of `ids` grouped by label, preserving input order inside each class.
  std::vector<std::vector<SampleId>> GroupByClass(
      std::span<const SampleId> ids) const;

 private:
  FeatureDataset() = default;

  int num_classes_ = 0;
  int num_views_ = 0;
  RowMatrix features_;
  RowMatrix views_;
  std::vector<int> labels_;
};

}  // namespace miaudit

#endif  // MIAUDIT_DATA_FEATURE_DATASET_H_
