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

// Binary feature store ("MIAF", version 1), all fields little-endian:
//
//   magic "MIAF" | version u32 | n u64 | d u32 | C u32 | K u32
//   n labels as u16
//   n * (1 + K) * d features as f32, row-major, per sample the original row
//   followed by its K augmented views.
//
// Sample ids are implicit row indices. Values are held as double in memory
// and narrowed back to f32 on save, which round-trips exactly.

#ifndef MIAUDIT_DATA_FEATURE_STORE_H_
#define MIAUDIT_DATA_FEATURE_STORE_H_

#include <string>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "miaudit/data/feature_dataset.h"

namespace miaudit {

inline constexpr std::string_view kFeatureStoreMagic = "MIAF";
inline constexpr uint32_t kFeatureStoreVersion = 1;

// Errors: kDataLoss for a bad magic/version or truncated payload,
// kInvalidArgument (citing the row) for invariant violations.
absl::StatusOr<FeatureDataset> DecodeFeatureStore(std::string_view bytes);
std::string EncodeFeatureStore(const FeatureDataset& dataset);

absl::StatusOr<FeatureDataset> LoadFeatureStore(const std::string& path);
absl::Status SaveFeatureStore(const FeatureDataset& dataset,
                              const std::string& path);

}  // namespace miaudit

#endif  // MIAUDIT_DATA_FEATURE_STORE_H_
