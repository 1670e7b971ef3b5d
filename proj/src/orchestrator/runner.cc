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


#include "miaudit/orchestrator/runner.h"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <mutex>
#include <random>
#include <set>
#include <thread>

#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "absl/strings/strip.h"
#include "json.hpp"
#include "miaudit/attacks/attacks.h"
#include "miaudit/common/binary_io.h"
#include "miaudit/common/seed.h"
#include "miaudit/common/status_macros.h"
#include "miaudit/data/feature_store.h"
#include "miaudit/data/sampling.h"
#include "miaudit/data/synth.h"
#include "miaudit/eval/roc.h"
#include "miaudit/eval/stats.h"
#include "miaudit/trainer/hpo.h"

namespace miaudit {
namespace {

namespace fs = std::filesystem;

// One (shot level, repeat): sampling, splits, HPO and the trained models.
struct Setup {
  int shots = 0;
  int repeat = 0;
  uint64_t seed = 0;
  absl::Status status;
  SplitPlan plan;  // model 0 is the target row
  std::vector<SampleId> population;
  std::vector<SampleId> distill;
  TrainConfig config;
  std::vector<LinearHead> models;
  std::vector<absl::Status> model_status;
};

struct AttackCell {
  std::size_t setup = 0;
  int target = 0;
  std::string attack;
  absl::Status status;
  std::vector<double> tprs;  // one per fpr target
  std::vector<std::string> warnings;
  bool reused = false;
};

std::string Checksum(std::string_view bytes) {
  return absl::StrFormat("%016x\n", Fnv1a64(bytes));
}

absl::Status WriteChecked(const fs::path& path, const std::string& bytes) {
  RETURN_IF_ERROR(WriteFile(path.string(), bytes));
  return WriteFile(path.string() + ".fnv1a", Checksum(bytes));
}

// The file's bytes if it and its checksum exist and agree.
std::optional<std::string> ReadChecked(const fs::path& path) {
  auto bytes = ReadFile(path.string());
  auto sum = ReadFile(path.string() + ".fnv1a");
  if (!bytes.ok() || !sum.ok() || *sum != Checksum(*bytes)) return std::nullopt;
  return *std::move(bytes);
}

std::string CellStem(int shots, int repeat) {
  return absl::StrCat("S", shots, "_r", repeat);
}

std::string ModelFile(const Setup& s, int model, uint64_t seed) {
  return absl::StrCat(CellStem(s.shots, s.repeat), "_",
                      model == 0 ? "target0" : absl::StrCat("shadow", model - 1),
                      "_seed", seed, ".miah");
}

uint64_t ModelSeed(const Setup& s, int model) {
  return DeriveSeed(s.seed, "model", {static_cast<uint64_t>(model)});
}

std::vector<uint8_t> ModelRow(const SplitPlan& plan, int model) {
  return model == 0 ? plan.target_members : plan.shadow_members[model - 1];
}

absl::Status PrepareSetup(const ExperimentManifest& m, const FeatureDataset& data,
                          Setup& s) {
  const int num_classes = data.num_classes();
  // Pool of 2S per class: the balanced target takes S of them, efficient
  // models take about S each.
  ASSIGN_OR_RETURN(std::vector<SampleId> pool,
                   SampleShots(data, ShotSpec{2 * s.shots, num_classes},
                               DeriveSeed(s.seed, "pool")));
  ASSIGN_OR_RETURN(s.plan, MakeShadowSplits(pool, m.num_shadows, m.protocol,
                                            DeriveSeed(s.seed, "splits")));
  if (m.protocol == SplitProtocol::kBalanced) {
    ASSIGN_OR_RETURN(std::vector<SampleId> target,
                     SampleShots(data, pool, ShotSpec{s.shots, num_classes},
                                 DeriveSeed(s.seed, "target")));
    RETURN_IF_ERROR(s.plan.SetTargetMembers(target));
  }

  std::vector<SampleId> rest;
  const std::set<SampleId> in_pool(pool.begin(), pool.end());
  for (SampleId id : data.AllIds()) {
    if (in_pool.count(id) == 0) rest.push_back(id);
  }
  std::mt19937_64 rng(DeriveSeed(s.seed, "rest"));
  std::shuffle(rest.begin(), rest.end(), rng);
  const bool wants_distill =
      std::find(m.attacks.begin(), m.attacks.end(), "trajectory") != m.attacks.end();
  const std::size_t need = static_cast<std::size_t>(m.population_size) +
                           (wants_distill ? m.distill_size : 0);
  if (rest.size() < need) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "only ", rest.size(), " samples outside the pool, need ", need,
        " for the population and distillation sets"));
  }
  s.population.assign(rest.begin(), rest.begin() + m.population_size);
  std::sort(s.population.begin(), s.population.end());
  if (wants_distill) {
    s.distill.assign(rest.begin() + m.population_size, rest.begin() + need);
    std::sort(s.distill.begin(), s.distill.end());
  }

  if (m.hpo_fixed) {
    s.config = m.train;
  } else {
    ASSIGN_OR_RETURN(HpoResult hpo,
                     HpoSearch(data, s.plan.TargetTrainIds(), m.hpo_ranges,
                               m.hpo_trials, m.hpo_strategy,
                               DeriveSeed(s.seed, "hpo")));
    s.config = hpo.best;
  }
  return absl::OkStatus();
}

std::string RocCsv(const std::string& attack, int repeat, const RocCurve& curve) {
  std::string out = "attack,repeat,fpr,tpr\n";
  for (const RocPoint& p : curve.points) {
    absl::StrAppendFormat(&out, "%s,%d,%.17g,%.17g\n", attack, repeat, p.fpr, p.tpr);
  }
  return out;
}

}  // namespace

std::string ResolveDataPath(const std::string& path) {
  const fs::path p(path);
  if (p.is_absolute()) return path;
  const char* root = std::getenv(kDataDirEnv);
  if (root == nullptr || *root == '\0') return path;
  return (fs::path(root) / p).string();
}

absl::StatusOr<FeatureDataset> LoadExperimentDataset(
    const ExperimentManifest& manifest) {
  if (manifest.synthetic) return SynthGaussian(manifest.synth);
  return LoadFeatureStore(ResolveDataPath(manifest.dataset_path));
}

void ParallelFor(std::size_t n, int workers,
                 const std::function<void(std::size_t)>& fn) {
  const std::size_t threads =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::max(workers, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (std::thread& thread : pool) thread.join();
}

absl::StatusOr<RunResult> RunExperiment(const ExperimentManifest& manifest,
                                        const RunOptions& options) {
  RETURN_IF_ERROR(manifest.Validate());
  ASSIGN_OR_RETURN(FeatureDataset data, LoadExperimentDataset(manifest));
  const fs::path root(manifest.output_dir);
  std::error_code ec;
  for (const char* sub : {"models", "scores", "roc"}) {
    fs::create_directories(root / sub, ec);
    if (ec) {
      return absl::FailedPreconditionError(absl::StrCat(
          "cannot create ", (root / sub).string(), ": ", ec.message()));
    }
  }
  std::mutex log_mu;
  auto log = [&](const std::string& line) {
    if (options.log == nullptr) return;
    std::lock_guard<std::mutex> lock(log_mu);
    *options.log << line << "\n";
  };
  const int workers = manifest.workers;
  const int num_models = manifest.num_shadows + 1;
  const bool efficient = manifest.protocol == SplitProtocol::kEfficient;

  // Phase 1: sampling, splits and HPO per (S, repeat).
  std::vector<Setup> setups;
  for (int shots : manifest.shots) {
    for (int r = 0; r < manifest.repeats; ++r) {
      Setup s;
      s.shots = shots;
      s.repeat = r;
      s.seed = DeriveSeed(manifest.seed, "cell",
                          {static_cast<uint64_t>(shots), static_cast<uint64_t>(r)});
      s.model_status.assign(num_models, absl::OkStatus());
      s.models.resize(num_models);
      setups.push_back(std::move(s));
    }
  }
  ParallelFor(setups.size(), workers, [&](std::size_t i) {
    setups[i].status = PrepareSetup(manifest, data, setups[i]);
    log(absl::StrCat("setup ", CellStem(setups[i].shots, setups[i].repeat), ": ",
                     setups[i].status.ok() ? setups[i].config.DebugString()
                                           : setups[i].status.ToString()));
  });

  // Phase 2: target and shadow training.
  std::atomic<int> trained{0};
  std::atomic<int> reused{0};
  ParallelFor(setups.size() * num_models, workers, [&](std::size_t cell) {
    Setup& s = setups[cell / num_models];
    const int model = static_cast<int>(cell % num_models);
    if (!s.status.ok()) return;
    const uint64_t seed = ModelSeed(s, model);
    const fs::path path = root / "models" / ModelFile(s, model, seed);
    if (options.resume) {
      if (auto bytes = ReadChecked(path)) {
        auto head = DecodeHead(*bytes);
        if (head.ok()) {
          s.models[model] = *std::move(head);
          ++reused;
          return;
        }
      }
    }
    const std::vector<uint8_t> row = ModelRow(s.plan, model);
    std::vector<SampleId> ids;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i]) ids.push_back(s.plan.pool_ids[i]);
    }
    if (ids.empty()) {
      s.model_status[model] = absl::FailedPreconditionError(
          absl::StrCat("model ", model, " has an empty training set"));
      return;
    }
    auto head = TrainHead(Gather(data, ids), s.config, seed);
    if (!head.ok()) {
      s.model_status[model] = head.status();
      return;
    }
    s.models[model] = *std::move(head);
    s.model_status[model] = WriteChecked(path, EncodeHead(s.models[model]));
    ++trained;
  });

  // Phase 3: attacks per (S, repeat, target, attack).
  std::vector<AttackCell> cells;
  for (std::size_t i = 0; i < setups.size(); ++i) {
    const int targets = efficient ? num_models : 1;
    for (int t = 0; t < targets; ++t) {
      for (const std::string& attack : manifest.attacks) {
        AttackCell cell;
        cell.setup = i;
        cell.target = t;
        cell.attack = attack;
        cells.push_back(std::move(cell));
      }
    }
  }
  std::atomic<int> cells_reused{0};
  ParallelFor(cells.size(), workers, [&](std::size_t c) {
    AttackCell& cell = cells[c];
    const Setup& s = setups[cell.setup];
    if (!s.status.ok()) {
      cell.status = s.status;
      return;
    }
    for (const absl::Status& status : s.model_status) {
      if (!status.ok()) {
        cell.status = status;
        return;
      }
    }
    const std::string stem =
        absl::StrCat(CellStem(s.shots, s.repeat), "_", cell.attack, "_t", cell.target);
    const fs::path score_path = root / "scores" / (stem + ".csv");
    const fs::path roc_path = root / "roc" / (stem + ".csv");

    std::vector<double> members;
    std::vector<double> nonmembers;
    std::optional<std::string> cached;
    if (options.resume) cached = ReadChecked(score_path);
    if (cached.has_value()) {
      auto rows = ParseScoreCsv(*cached);
      if (rows.ok()) {
        for (const ScoreCsvRow& row : *rows) {
          (row.is_member ? members : nonmembers).push_back(row.score);
        }
        cell.reused = true;
        ++cells_reused;
      }
    }
    if (!cell.reused) {
      AttackContext ctx;
      ctx.dataset = &data;
      ctx.plan = s.plan.Rotated(cell.target);
      ctx.target = s.models[cell.target];
      for (int k = 0; k < num_models; ++k) {
        if (k != cell.target) ctx.shadows.push_back(s.models[k]);
      }
      ctx.population_ids = s.population;
      ctx.train_config = s.config;
      ctx.seed = DeriveSeed(s.seed, "attack", {static_cast<uint64_t>(cell.target)});
      if (cell.attack == "iha") ctx.target_train_ids = ctx.plan.TargetTrainIds();
      AttackSuiteConfig config = manifest.attack;
      config.trajectory.distill_ids = s.distill;
      auto scores = RunAttack(cell.attack, ctx, ctx.plan.pool_ids, config);
      if (scores.ok()) {
        const absl::Status valid = scores->Validate();
        if (!valid.ok()) scores = valid;
      }
      if (!scores.ok()) {
        cell.status = scores.status();
        return;
      }
      cell.warnings = scores->warnings;
      members = scores->MemberScores();
      nonmembers = scores->NonMemberScores();
      cell.status = WriteChecked(score_path,
                                 FormatScoreCsv(*scores, s.repeat, cell.target));
      if (!cell.status.ok()) return;
    }
    auto curve = ComputeRoc(members, nonmembers);
    if (!curve.ok()) {
      cell.status = curve.status();
      return;
    }
    if (!cell.reused || !ReadChecked(roc_path).has_value()) {
      cell.status = WriteChecked(roc_path, RocCsv(cell.attack, s.repeat, *curve));
      if (!cell.status.ok()) return;
    }
    std::vector<double> unresolved;
    for (double target : manifest.fpr_targets) {
      cell.tprs.push_back(TprAtFpr(*curve, target));
      if (static_cast<double>(nonmembers.size()) * target < 1.0) {
        unresolved.push_back(target);
      }
    }
    if (!unresolved.empty()) {
      cell.warnings.push_back(absl::StrCat(
          "fpr targets ", absl::StrJoin(unresolved, ", "),
          " are below the resolution 1/", nonmembers.size()));
    }
  });

  // Summary, single-threaded and in manifest order.
  RunResult result;
  result.models_trained = trained;
  result.models_reused = reused;
  result.attack_cells_reused = cells_reused;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  nlohmann::ordered_json errors = nlohmann::ordered_json::array();
  for (const AttackCell& cell : cells) {
    const Setup& s = setups[cell.setup];
    for (const std::string& w : cell.warnings) {
      log(absl::StrCat("warning ", CellStem(s.shots, s.repeat), " ", cell.attack,
                       " t", cell.target, ": ", w));
    }
    if (cell.status.ok()) continue;
    CellError error{cell.attack, s.shots, s.repeat, cell.target,
                    cell.status.ToString()};
    errors.push_back({{"attack", error.attack},
                      {"S", error.shots},
                      {"repeat", error.repeat},
                      {"target_index", error.target_index},
                      {"message", error.message}});
    log(absl::StrCat("error ", CellStem(s.shots, s.repeat), " ", cell.attack,
                     " t", cell.target, ": ", error.message));
    result.errors.push_back(std::move(error));
  }
  const std::size_t nf = manifest.fpr_targets.size();
  for (const std::string& attack : manifest.attacks) {
    for (int shots : manifest.shots) {
      std::vector<std::vector<double>> per_repeat;
      for (int r = 0; r < manifest.repeats; ++r) {
        // Efficient mode: average TPR over every rotation of the repeat.
        std::vector<double> mean(nf, 0.0);
        int count = 0;
        bool failed = false;
        for (const AttackCell& cell : cells) {
          const Setup& s = setups[cell.setup];
          if (cell.attack != attack || s.shots != shots || s.repeat != r) continue;
          if (!cell.status.ok()) {
            failed = true;
            break;
          }
          for (std::size_t f = 0; f < nf; ++f) mean[f] += cell.tprs[f];
          ++count;
        }
        if (failed || count == 0) continue;
        for (double& v : mean) v /= count;
        per_repeat.push_back(std::move(mean));
      }
      if (per_repeat.empty()) continue;
      auto summaries = AggregateRepeats(per_repeat, manifest.fpr_targets);
      if (!summaries.ok()) return summaries.status();
      for (const RepeatSummary& summary : *summaries) {
        rows.push_back({{"attack", attack},
                        {"S", shots},
                        {"M", manifest.num_shadows},
                        {"fpr_target", summary.fpr_target},
                        {"median_tpr", summary.median},
                        {"iqr", summary.iqr},
                        {"n_repeats", per_repeat.size()}});
        ++result.rows;
      }
    }
  }
  nlohmann::ordered_json summary;
  summary["manifest_hash"] = ManifestHash(manifest);
  summary["rows"] = std::move(rows);
  summary["errors"] = std::move(errors);
  result.summary_json = summary.dump(2) + "\n";
  RETURN_IF_ERROR(WriteFile((root / "summary.json").string(), result.summary_json));
  RETURN_IF_ERROR(WriteFile((root / "manifest.txt").string(),
                            CanonicalManifest(manifest)));
  return result;
}

}  // namespace miaudit
