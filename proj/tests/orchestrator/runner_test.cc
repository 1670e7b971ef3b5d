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


#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "miaudit/orchestrator/manifest.h"
#include "miaudit/orchestrator/runner.h"
#include "json.hpp"

namespace miaudit {
namespace {

namespace fs = std::filesystem;

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Relative path -> contents, for every file under root.
std::map<std::string, std::string> Snapshot(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_regular_file()) {
      files[fs::relative(entry.path(), root).string()] = Slurp(entry.path());
    }
  }
  return files;
}

fs::path FreshDir(const std::string& name) {
  const fs::path dir = fs::path(::testing::TempDir()) / ("miaudit_" + name);
  fs::remove_all(dir);
  return dir;
}

ExperimentManifest Small(const std::string& out) {
  ExperimentManifest m;
  m.synth.num_classes = 3;
  m.synth.dim = 6;
  m.synth.per_class = 120;
  m.synth.separation = 2.0;
  m.shots = {4};
  m.num_shadows = 4;
  m.repeats = 2;
  m.population_size = 60;
  m.hpo_strategy = HpoStrategy::kRandom;
  m.hpo_trials = 3;
  m.distill_size = 64;
  m.seed = 11;
  m.output_dir = out;
  return m;
}

TEST(RunnerTest, OneRowPerFprTarget) {
  ExperimentManifest m = Small(FreshDir("rows").string());
  m.repeats = 1;
  auto result = RunExperiment(m);
  ASSERT_TRUE(result.ok()) << result.status();
  EXPECT_TRUE(result->errors.empty());
  const auto json = nlohmann::json::parse(result->summary_json);
  ASSERT_EQ(json["rows"].size(), m.fpr_targets.size());
  for (std::size_t i = 0; i < m.fpr_targets.size(); ++i) {
    const auto& row = json["rows"][i];
    EXPECT_EQ(row["attack"], "loss");
    EXPECT_EQ(row["S"], 4);
    EXPECT_EQ(row["M"], 4);
    EXPECT_EQ(row["fpr_target"], m.fpr_targets[i]);
    EXPECT_EQ(row["n_repeats"], 1);
    EXPECT_EQ(row["iqr"], 0.0);
  }
  EXPECT_EQ(json["manifest_hash"], ManifestHash(m));
  EXPECT_TRUE(json["errors"].empty());
  EXPECT_EQ(Slurp(fs::path(m.output_dir) / "summary.json"), result->summary_json);
}

TEST(RunnerTest, RerunIsByteIdentical) {
  ExperimentManifest m = Small(FreshDir("det_a").string());
  m.attacks = {"loss", "lira", "rmia"};
  ASSERT_TRUE(RunExperiment(m).ok());
  const auto first = Snapshot(m.output_dir);
  m.output_dir = FreshDir("det_b").string();
  m.workers = 4;
  ASSERT_TRUE(RunExperiment(m).ok());
  const auto second = Snapshot(m.output_dir);
  EXPECT_EQ(first, second);
  EXPECT_GT(first.size(), 20u);
}

TEST(RunnerTest, EfficientModeModelFiles) {
  ExperimentManifest m = Small(FreshDir("efficient").string());
  m.protocol = SplitProtocol::kEfficient;
  m.shots = {8};
  m.attacks = {"loss", "attack_p"};
  auto result = RunExperiment(m);
  ASSERT_TRUE(result.ok()) << result.status();
  EXPECT_EQ(result->models_trained, 10);
  for (int r = 0; r < m.repeats; ++r) {
    int count = 0;
    const std::string prefix = "S8_r" + std::to_string(r) + "_";
    for (const auto& entry : fs::directory_iterator(fs::path(m.output_dir) / "models")) {
      const std::string name = entry.path().filename().string();
      if (name.starts_with(prefix) && entry.path().extension() == ".miah") ++count;
    }
    EXPECT_EQ(count, 5) << "repeat " << r;
  }
  // One score file per (attack, target) in each repeat.
  int score_files = 0;
  for (const auto& entry : fs::directory_iterator(fs::path(m.output_dir) / "scores")) {
    score_files += entry.path().extension() == ".csv";
  }
  EXPECT_EQ(score_files, 2 * 2 * 5);
}

TEST(RunnerTest, ResumeReusesVerifiedCells) {
  ExperimentManifest m = Small(FreshDir("resume").string());
  m.attacks = {"loss", "rmia"};
  auto first = RunExperiment(m);
  ASSERT_TRUE(first.ok());
  const auto before = Snapshot(m.output_dir);

  RunOptions resume;
  resume.resume = true;
  auto second = RunExperiment(m, resume);
  ASSERT_TRUE(second.ok());
  EXPECT_EQ(second->models_trained, 0);
  EXPECT_EQ(second->models_reused, first->models_trained);
  EXPECT_EQ(second->attack_cells_reused, 4);
  EXPECT_EQ(Snapshot(m.output_dir), before);

  // Corrupt one score file: its checksum no longer matches, so it is redone.
  fs::path victim;
  for (const auto& entry : fs::directory_iterator(fs::path(m.output_dir) / "scores")) {
    if (entry.path().extension() == ".csv") victim = entry.path();
  }
  std::ofstream(victim, std::ios::app) << "garbage\n";
  auto third = RunExperiment(m, resume);
  ASSERT_TRUE(third.ok());
  EXPECT_EQ(third->attack_cells_reused, 3);
  EXPECT_EQ(Snapshot(m.output_dir), before);
}

TEST(RunnerTest, FailingCellIsIsolated) {
  ExperimentManifest m = Small(FreshDir("isolation").string());
  // Efficient mode with M = 2: many samples lack two IN and two OUT shadows,
  // so LiRA fails while the other attacks go through.
  m.protocol = SplitProtocol::kEfficient;
  m.shots = {8};
  m.num_shadows = 2;
  m.attacks = {"loss", "lira"};
  auto result = RunExperiment(m);
  ASSERT_TRUE(result.ok()) << result.status();
  ASSERT_FALSE(result->errors.empty());
  for (const CellError& e : result->errors) {
    EXPECT_EQ(e.attack, "lira");
    EXPECT_THAT(e.message, ::testing::HasSubstr("coverage"));
  }
  const auto json = nlohmann::json::parse(result->summary_json);
  EXPECT_FALSE(json["errors"].empty());
  int loss_rows = 0;
  for (const auto& row : json["rows"]) loss_rows += row["attack"] == "loss";
  EXPECT_EQ(loss_rows, 3);
}

TEST(RunnerTest, ParallelForVisitsEachIndexOnce) {
  std::vector<int> hits(1000, 0);
  ParallelFor(hits.size(), 8, [&](std::size_t i) { ++hits[i]; });
  for (int h : hits) EXPECT_EQ(h, 1);
}

TEST(RunnerTest, DataPathResolution) {
  setenv(kDataDirEnv, "/data/root", 1);
  EXPECT_EQ(ResolveDataPath("x.miaf"), "/data/root/x.miaf");
  EXPECT_EQ(ResolveDataPath("/abs/x.miaf"), "/abs/x.miaf");
  unsetenv(kDataDirEnv);
  EXPECT_EQ(ResolveDataPath("x.miaf"), "x.miaf");
}

}  // namespace
}  // namespace miaudit
