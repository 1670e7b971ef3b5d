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

#include "miaudit/data/feature_store.h"

#include <limits>

#include "absl/strings/str_cat.h"
#include "miaudit/common/binary_io.h"
#include "miaudit/common/status_macros.h"

namespace miaudit {

absl::StatusOr<FeatureDataset> DecodeFeatureStore(std::string_view bytes) {
  ByteReader in(bytes);
  ASSIGN_OR_RETURN(std::string_view magic, in.GetBytes(4));
  if (magic != kFeatureStoreMagic) {
    return absl::DataLossError("not a feature store (bad magic)");
  }
  ASSIGN_OR_RETURN(uint32_t version, in.Get<uint32_t>());
  if (version != kFeatureStoreVersion) {
    return absl::DataLossError(
        absl::StrCat("unsupported feature store version ", version));
  }
  ASSIGN_OR_RETURN(uint64_t n, in.Get<uint64_t>());
  ASSIGN_OR_RETURN(uint32_t d, in.Get<uint32_t>());
  ASSIGN_OR_RETURN(uint32_t num_classes, in.Get<uint32_t>());
  ASSIGN_OR_RETURN(uint32_t num_views, in.Get<uint32_t>());
  if (n == 0) return absl::InvalidArgumentError("empty dataset (n = 0)");
  if (d == 0 || num_classes == 0 ||
      num_classes > std::numeric_limits<uint16_t>::max()) {
    return absl::DataLossError("invalid header dimensions");
  }
  const uint64_t rows_per_sample = 1 + static_cast<uint64_t>(num_views);
  const uint64_t expected =
      n * sizeof(uint16_t) + n * rows_per_sample * d * sizeof(float);
  if (in.remaining() != expected) {
    return absl::DataLossError(absl::StrCat("payload is ", in.remaining(),
                                            " bytes, expected ", expected));
  }

  std::vector<int> labels(n);
  for (uint64_t i = 0; i < n; ++i) {
    ASSIGN_OR_RETURN(uint16_t label, in.Get<uint16_t>());
    labels[i] = label;
  }
  RowMatrix features(n, d);
  RowMatrix views(n * num_views, d);
  for (uint64_t i = 0; i < n; ++i) {
    for (uint64_t r = 0; r < rows_per_sample; ++r) {
      for (uint32_t j = 0; j < d; ++j) {
        ASSIGN_OR_RETURN(float value, in.Get<float>());
        if (r == 0) {
          features(i, j) = value;
        } else {
          views(i * num_views + (r - 1), j) = value;
        }
      }
    }
  }
  return FeatureDataset::Create(static_cast<int>(num_classes),
                                std::move(features), std::move(labels),
                                static_cast<int>(num_views), std::move(views));
}

std::string EncodeFeatureStore(const FeatureDataset& dataset) {
  ByteWriter out;
  out.PutBytes(kFeatureStoreMagic);
  out.Put<uint32_t>(kFeatureStoreVersion);
  out.Put<uint64_t>(dataset.size());
  out.Put<uint32_t>(dataset.dim());
  out.Put<uint32_t>(dataset.num_classes());
  out.Put<uint32_t>(dataset.num_views());
  for (int label : dataset.labels()) out.Put<uint16_t>(label);
  const int k = dataset.num_views();
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    for (int j = 0; j < dataset.dim(); ++j) {
      out.Put<float>(static_cast<float>(dataset.features()(i, j)));
    }
    for (int v = 0; v < k; ++v) {
      for (int j = 0; j < dataset.dim(); ++j) {
        out.Put<float>(static_cast<float>(dataset.views()(i * k + v, j)));
      }
    }
  }
  return out.Release();
}

absl::StatusOr<FeatureDataset> LoadFeatureStore(const std::string& path) {
  ASSIGN_OR_RETURN(std::string bytes, ReadFile(path));
  auto dataset = DecodeFeatureStore(bytes);
  if (!dataset.ok()) {
    return absl::Status(dataset.status().code(),
                        absl::StrCat(path, ": ", dataset.status().message()));
  }
  return dataset;
}

absl::Status SaveFeatureStore(const FeatureDataset& dataset,
                              const std::string& path) {
  return WriteFile(path, EncodeFeatureStore(dataset));
}

}  // namespace miaudit
