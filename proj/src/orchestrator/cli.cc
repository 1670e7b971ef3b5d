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


#include "miaudit/orchestrator/cli.h"

#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <tuple>

#include "CLI11.hpp"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "miaudit/attacks/score_set.h"
#include "miaudit/common/binary_io.h"
#include "miaudit/data/feature_store.h"
#include "miaudit/data/synth.h"
#include "miaudit/eval/roc.h"
#include "miaudit/orchestrator/manifest.h"
#include "miaudit/orchestrator/runner.h"

namespace miaudit {
namespace {

int Fail(std::ostream& err, const absl::Status& status) {
  err << "error: " << status.message() << "\n";
  return kExitInvalid;
}

std::string DefaultSynthPath() {
  return ResolveDataPath("synth.miaf");
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Membership-inference auditing of linear heads", "miaudit"};
  app.require_subcommand(1);

  std::string manifest_path;
  std::optional<uint64_t> seed;
  std::optional<int> workers;
  std::optional<std::string> out_dir;
  bool resume = false;
  bool quiet = false;
  CLI::App* run = app.add_subcommand("run", "Run an experiment manifest");
  run->add_option("manifest", manifest_path, "Manifest file")->required();
  run->add_option("--seed", seed, "Override experiment.seed");
  run->add_option("--workers", workers, "Override experiment.workers");
  run->add_option("--out", out_dir, "Override experiment.output");
  run->add_flag("--resume", resume, "Reuse outputs whose checksums verify");
  run->add_flag("--quiet", quiet, "No progress log");

  SynthSpec spec;
  std::string synth_out;
  CLI::App* synth = app.add_subcommand("synth", "Write a synthetic feature store");
  synth->add_option("--classes", spec.num_classes, "Class count")
      ->capture_default_str();
  synth->add_option("--dim", spec.dim, "Feature dimension")->capture_default_str();
  synth->add_option("--per-class", spec.per_class, "Samples per class")
      ->capture_default_str();
  synth->add_option("--separation", spec.separation, "Class mean distance")
      ->capture_default_str();
  synth->add_option("--views", spec.num_views, "Augmented views per sample")
      ->capture_default_str();
  synth->add_option("--view-noise", spec.view_noise, "View jitter std")
      ->capture_default_str();
  synth->add_option("--seed", spec.seed, "Generator seed")->capture_default_str();
  synth->add_option("--out", synth_out,
                    "Output path (default $MIA_DATA_DIR/synth.miaf)");

  std::string store_path;
  CLI::App* inspect = app.add_subcommand("inspect", "Print a feature store's shape");
  inspect->add_option("store", store_path, "Feature store")->required();

  std::string scores_path;
  bool with_auc = false;
  CLI::App* roc = app.add_subcommand("roc", "Recompute ROC curves from a score CSV");
  roc->add_option("scores", scores_path, "Score CSV")->required();
  roc->add_flag("--auc", with_auc, "Print one AUC per curve instead");

  std::vector<std::string> argv_storage = args;
  if (argv_storage.empty()) argv_storage.push_back("miaudit");
  std::vector<char*> argv;
  for (std::string& a : argv_storage) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  if (*run) {
    auto manifest = LoadManifest(manifest_path);
    if (!manifest.ok()) return Fail(err, manifest.status());
    if (seed) manifest->seed = *seed;
    if (workers) manifest->workers = *workers;
    if (out_dir) manifest->output_dir = *out_dir;
    if (const absl::Status valid = manifest->Validate(); !valid.ok()) {
      return Fail(err, valid);
    }
    RunOptions options;
    options.resume = resume;
    options.log = quiet ? nullptr : &err;
    auto result = RunExperiment(*manifest, options);
    if (!result.ok()) return Fail(err, result.status());
    out << absl::StrFormat(
        "wrote %s/summary.json: %d rows, %d errors, %d models trained, %d "
        "reused\n",
        manifest->output_dir, result->rows, result->errors.size(),
        result->models_trained, result->models_reused);
    return result->errors.empty() ? kExitOk : kExitCellErrors;
  }

  if (*synth) {
    auto dataset = SynthGaussian(spec);
    if (!dataset.ok()) return Fail(err, dataset.status());
    const std::string path =
        synth_out.empty() ? DefaultSynthPath() : ResolveDataPath(synth_out);
    const std::filesystem::path parent = std::filesystem::path(path).parent_path();
    std::error_code ec;
    if (!parent.empty()) std::filesystem::create_directories(parent, ec);
    if (const absl::Status saved = SaveFeatureStore(*dataset, path); !saved.ok()) {
      return Fail(err, saved);
    }
    out << "wrote " << path << "\n";
    return kExitOk;
  }

  if (*inspect) {
    std::string path = store_path;
    if (!std::filesystem::exists(path)) path = ResolveDataPath(store_path);
    auto dataset = LoadFeatureStore(path);
    if (!dataset.ok()) return Fail(err, dataset.status());
    out << absl::StrFormat("n=%d d=%d C=%d K=%d\n", dataset->size(),
                           dataset->dim(), dataset->num_classes(),
                           dataset->num_views());
    return kExitOk;
  }

  // roc
  auto text = ReadFile(scores_path);
  if (!text.ok()) return Fail(err, text.status());
  auto rows = ParseScoreCsv(*text);
  if (!rows.ok()) return Fail(err, rows.status());
  using Key = std::tuple<std::string, int, int>;
  std::map<Key, std::pair<std::vector<double>, std::vector<double>>> groups;
  for (const ScoreCsvRow& row : *rows) {
    auto& group = groups[{row.attack, row.repeat, row.target_index}];
    (row.is_member ? group.first : group.second).push_back(row.score);
  }
  out << (with_auc ? "attack,repeat,target_index,auc\n" : "attack,repeat,fpr,tpr\n");
  for (const auto& [key, scores] : groups) {
    const auto& [attack, repeat, target] = key;
    auto curve = ComputeRoc(scores.first, scores.second);
    if (!curve.ok()) {
      return Fail(err, absl::Status(curve.status().code(),
                                    absl::StrCat(attack, " repeat ", repeat, ": ",
                                                 curve.status().message())));
    }
    if (with_auc) {
      out << absl::StrFormat("%s,%d,%d,%.17g\n", attack, repeat, target, Auc(*curve));
      continue;
    }
    for (const RocPoint& p : curve->points) {
      out << absl::StrFormat("%s,%d,%.17g,%.17g\n", attack, repeat, p.fpr, p.tpr);
    }
  }
  return kExitOk;
}

}  // namespace miaudit
