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

#ifndef MIAUDIT_COMMON_SEED_H_
#define MIAUDIT_COMMON_SEED_H_

#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace miaudit {

// 64-bit FNV-1a over raw bytes.
uint64_t Fnv1a64(std::string_view bytes, uint64_t basis = 0xcbf29ce484222325ULL);

// SplitMix64 finalizer.
uint64_t Mix64(uint64_t x);

// Derives a sub-task seed from (seed, purpose tag, indices). The result only
// depends on its arguments, so cells may be evaluated in any order.
uint64_t DeriveSeed(uint64_t seed, std::string_view tag,
                    std::initializer_list<uint64_t> indices = {});

}  // namespace miaudit

#endif  // MIAUDIT_COMMON_SEED_H_
