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


#ifndef MIAUDIT_ATTACKS_SCORE_SET_H_
#define MIAUDIT_ATTACKS_SCORE_SET_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "miaudit/data/feature_dataset.h"

namespace miaudit {

struct ScoreRow {
  SampleId sample_id = 0;
  double score = 0.0;  // higher means more member-like
  bool is_member = false;
};

struct AttackScoreSet {
  std::string attack;
  std::vector<ScoreRow> rows;
  std::string config;  // human-readable snapshot of the attack settings
  std::vector<std::string> warnings;
  // RMIA: shadow-mean posteriors clamped away from zero.
  int64_t clamped = 0;

  std::vector<double> MemberScores() const;
  std::vector<double> NonMemberScores() const;

  // Finite scores, both classes present.
  absl::Status Validate() const;
};

inline constexpr std::string_view kScoreCsvHeader =
    "attack,sample_id,score,is_member,repeat,target_index";

struct ScoreCsvRow {
  std::string attack;
  SampleId sample_id = 0;
  double score = 0.0;
  bool is_member = false;
  int repeat = 0;
  int target_index = 0;
};

// Scores are printed with %.17g so they round-trip exactly.
std::string FormatScoreCsv(const AttackScoreSet& set, int repeat,
                           int target_index, bool with_header = true);

// kDataLoss on a malformed header or row.
absl::StatusOr<std::vector<ScoreCsvRow>> ParseScoreCsv(std::string_view text);

}  // namespace miaudit

#endif  // MIAUDIT_ATTACKS_SCORE_SET_H_
