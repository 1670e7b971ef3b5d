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


#include "miaudit/attacks/score_set.h"

#include <cmath>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"

namespace miaudit {

std::vector<double> AttackScoreSet::MemberScores() const {
  std::vector<double> out;
  for (const ScoreRow& row : rows) {
    if (row.is_member) out.push_back(row.score);
  }
  return out;
}

std::vector<double> AttackScoreSet::NonMemberScores() const {
  std::vector<double> out;
  for (const ScoreRow& row : rows) {
    if (!row.is_member) out.push_back(row.score);
  }
  return out;
}

absl::Status AttackScoreSet::Validate() const {
  bool member = false;
  bool nonmember = false;
  for (const ScoreRow& row : rows) {
    if (!std::isfinite(row.score)) {
      return absl::InternalError(absl::StrCat(
          attack, ": non-finite score for sample ", row.sample_id));
    }
    (row.is_member ? member : nonmember) = true;
  }
  if (!member || !nonmember) {
    return absl::FailedPreconditionError(
        absl::StrCat(attack, ": scores need both members and non-members"));
  }
  return absl::OkStatus();
}

std::string FormatScoreCsv(const AttackScoreSet& set, int repeat,
                           int target_index, bool with_header) {
  std::string out;
  if (with_header) absl::StrAppend(&out, std::string(kScoreCsvHeader), "\n");
  for (const ScoreRow& row : set.rows) {
    absl::StrAppendFormat(&out, "%s,%d,%.17g,%d,%d,%d\n", set.attack,
                          row.sample_id, row.score, row.is_member ? 1 : 0,
                          repeat, target_index);
  }
  return out;
}

absl::StatusOr<std::vector<ScoreCsvRow>> ParseScoreCsv(std::string_view text) {
  std::vector<absl::string_view> lines =
      absl::StrSplit(absl::string_view(text.data(), text.size()), '\n',
                     absl::SkipWhitespace());
  if (lines.empty() ||
      absl::StripTrailingAsciiWhitespace(lines[0]) !=
          absl::string_view(kScoreCsvHeader.data(), kScoreCsvHeader.size())) {
    return absl::DataLossError(
        absl::StrCat("score CSV must start with '", std::string(kScoreCsvHeader),
                     "'"));
  }
  std::vector<ScoreCsvRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::vector<absl::string_view> cells =
        absl::StrSplit(absl::StripTrailingAsciiWhitespace(lines[i]), ',');
    ScoreCsvRow row;
    int member = 0;
    uint64_t id = 0;
    if (cells.size() != 6 || !absl::SimpleAtoi(cells[1], &id) ||
        !absl::SimpleAtod(cells[2], &row.score) ||
        !absl::SimpleAtoi(cells[3], &member) || (member != 0 && member != 1) ||
        !absl::SimpleAtoi(cells[4], &row.repeat) ||
        !absl::SimpleAtoi(cells[5], &row.target_index)) {
      return absl::DataLossError(
          absl::StrCat("malformed score CSV line ", i + 1));
    }
    row.attack = std::string(cells[0]);
    row.sample_id = id;
    row.is_member = member == 1;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace miaudit
