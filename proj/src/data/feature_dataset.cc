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

#include "miaudit/data/feature_dataset.h"

#include <numeric>

#include "absl/strings/str_cat.h"

namespace miaudit {

absl::StatusOr<FeatureDataset> FeatureDataset::Create(int num_classes,
                                                      RowMatrix features,
                                                      std::vector<int> labels,
                                                      int num_views,
                                                      RowMatrix views) {
  const std::size_t n = labels.size();
  if (n == 0) return absl::InvalidArgumentError("empty dataset (n = 0)");
  if (num_classes < 1) {
    return absl::InvalidArgumentError("class count must be positive");
  }
  if (static_cast<std::size_t>(features.rows()) != n || features.cols() < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("feature matrix is ", features.rows(), "x",
                     features.cols(), " but there are ", n, " labels"));
  }
  if (num_views < 0) {
    return absl::InvalidArgumentError("view count must be non-negative");
  }
  if (num_views > 0 &&
      (static_cast<std::size_t>(views.rows()) != n * num_views ||
       views.cols() != features.cols())) {
    return absl::InvalidArgumentError(
        absl::StrCat("expected ", n * num_views, " view rows of width ",
                     features.cols()));
  }
  std::vector<int> counts(num_classes, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i] < 0 || labels[i] >= num_classes) {
      return absl::InvalidArgumentError(absl::StrCat(
          "row ", i, ": label ", labels[i], " outside [0, ", num_classes, ")"));
    }
    ++counts[labels[i]];
    if (!features.row(i).allFinite()) {
      return absl::InvalidArgumentError(
          absl::StrCat("row ", i, ": non-finite feature"));
    }
    for (int k = 0; k < num_views; ++k) {
      if (!views.row(i * num_views + k).allFinite()) {
        return absl::InvalidArgumentError(
            absl::StrCat("row ", i, ": non-finite feature in view ", k));
      }
    }
  }
  for (int c = 0; c < num_classes; ++c) {
    if (counts[c] == 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("class ", c, " has no samples"));
    }
  }
  FeatureDataset ds;
  ds.num_classes_ = num_classes;
  ds.num_views_ = num_views;
  ds.features_ = std::move(features);
  ds.views_ = num_views > 0 ? std::move(views) : RowMatrix(0, ds.dim());
  ds.labels_ = std::move(labels);
  return ds;
}

Eigen::VectorXd FeatureDataset::Query(SampleId id, int query) const {
  if (query == 0) return features_.row(id).transpose();
  return views_.row(id * num_views_ + (query - 1)).transpose();
}

std::vector<SampleId> FeatureDataset::AllIds() const {
  std::vector<SampleId> ids(size());
  std::iota(ids.begin(), ids.end(), SampleId{0});
  return ids;
}

std::vector<std::vector<SampleId>> FeatureDataset::GroupByClass(
    std::span<const SampleId> ids) const {
  std::vector<std::vector<SampleId>> groups(num_classes_);
  for (SampleId id : ids) groups[labels_[id]].push_back(id);
  return groups;
}

}  // namespace miaudit
