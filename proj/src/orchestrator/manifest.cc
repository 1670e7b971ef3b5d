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


#include "miaudit/orchestrator/manifest.h"

#include <functional>
#include <map>
#include <set>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "miaudit/common/binary_io.h"
#include "miaudit/common/seed.h"
#include "miaudit/common/status_macros.h"

namespace miaudit {
namespace {

using absl::string_view;

absl::Status FieldError(string_view path, string_view message) {
  return absl::InvalidArgumentError(absl::StrCat(path, ": ", message));
}

std::vector<string_view> SplitList(string_view value) {
  std::vector<string_view> items = absl::StrSplit(value, ',');
  for (string_view& item : items) item = absl::StripAsciiWhitespace(item);
  if (items.size() == 1 && items[0].empty()) items.clear();
  return items;
}

absl::Status ParseInt(string_view value, const std::string& path, int* out) {
  if (!absl::SimpleAtoi(value, out)) {
    return FieldError(path, absl::StrCat("'", value, "' is not an integer"));
  }
  return absl::OkStatus();
}

absl::Status ParseU64(string_view value, const std::string& path,
                      uint64_t* out) {
  if (!absl::SimpleAtoi(value, out)) {
    return FieldError(
        path, absl::StrCat("'", value, "' is not a non-negative integer"));
  }
  return absl::OkStatus();
}

absl::Status ParseDouble(string_view value, const std::string& path,
                         double* out) {
  if (!absl::SimpleAtod(value, out)) {
    return FieldError(path, absl::StrCat("'", value, "' is not a number"));
  }
  return absl::OkStatus();
}

absl::Status ParseIntList(string_view value, const std::string& path,
                          std::vector<int>* out) {
  out->clear();
  const auto items = SplitList(value);
  for (std::size_t i = 0; i < items.size(); ++i) {
    int v = 0;
    RETURN_IF_ERROR(ParseInt(items[i], absl::StrCat(path, "[", i, "]"), &v));
    out->push_back(v);
  }
  return absl::OkStatus();
}

absl::Status ParseDoubleList(string_view value, const std::string& path,
                             std::vector<double>* out) {
  out->clear();
  const auto items = SplitList(value);
  for (std::size_t i = 0; i < items.size(); ++i) {
    double v = 0;
    RETURN_IF_ERROR(ParseDouble(items[i], absl::StrCat(path, "[", i, "]"), &v));
    out->push_back(v);
  }
  return absl::OkStatus();
}

using Handler =
    std::function<absl::Status(string_view value, const std::string& path)>;

std::map<std::string, Handler> Handlers(ExperimentManifest& m) {
  std::map<std::string, Handler> h;
  auto int_field = [](int* field) {
    return [field](string_view v, const std::string& p) {
      return ParseInt(v, p, field);
    };
  };
  auto double_field = [](double* field) {
    return [field](string_view v, const std::string& p) {
      return ParseDouble(v, p, field);
    };
  };
  auto size_field = [](std::size_t* field) {
    return [field](string_view v, const std::string& p) {
      uint64_t value = 0;
      RETURN_IF_ERROR(ParseU64(v, p, &value));
      *field = static_cast<std::size_t>(value);
      return absl::OkStatus();
    };
  };

  h["dataset.source"] = [&m](string_view v, const std::string& p) {
    if (v == "synthetic") {
      m.synthetic = true;
    } else if (v == "path") {
      m.synthetic = false;
    } else {
      return FieldError(p, absl::StrCat("'", v, "' is not synthetic | path"));
    }
    return absl::OkStatus();
  };
  h["dataset.path"] = [&m](string_view v, const std::string&) {
    m.dataset_path = std::string(v);
    return absl::OkStatus();
  };
  h["dataset.classes"] = int_field(&m.synth.num_classes);
  h["dataset.dim"] = int_field(&m.synth.dim);
  h["dataset.per_class"] = int_field(&m.synth.per_class);
  h["dataset.separation"] = double_field(&m.synth.separation);
  h["dataset.views"] = int_field(&m.synth.num_views);
  h["dataset.view_noise"] = double_field(&m.synth.view_noise);
  h["dataset.seed"] = [&m](string_view v, const std::string& p) {
    return ParseU64(v, p, &m.synth.seed);
  };

  h["experiment.shots"] = [&m](string_view v, const std::string& p) {
    return ParseIntList(v, p, &m.shots);
  };
  h["experiment.shadows"] = int_field(&m.num_shadows);
  h["experiment.protocol"] = [&m](string_view v, const std::string& p) {
    auto protocol = ParseSplitProtocol(std::string_view(v.data(), v.size()));
    if (!protocol.ok()) return FieldError(p, protocol.status().message());
    m.protocol = *protocol;
    return absl::OkStatus();
  };
  h["experiment.repeats"] = int_field(&m.repeats);
  h["experiment.attacks"] = [&m](string_view v, const std::string&) {
    m.attacks.clear();
    for (string_view item : SplitList(v)) m.attacks.emplace_back(item);
    return absl::OkStatus();
  };
  h["experiment.fpr_targets"] = [&m](string_view v, const std::string& p) {
    return ParseDoubleList(v, p, &m.fpr_targets);
  };
  h["experiment.population"] = int_field(&m.population_size);
  h["experiment.seed"] = [&m](string_view v, const std::string& p) {
    return ParseU64(v, p, &m.seed);
  };
  h["experiment.workers"] = int_field(&m.workers);
  h["experiment.output"] = [&m](string_view v, const std::string&) {
    m.output_dir = std::string(v);
    return absl::OkStatus();
  };

  h["hpo.strategy"] = [&m](string_view v, const std::string& p) {
    if (v == "fixed") {
      m.hpo_fixed = true;
      return absl::OkStatus();
    }
    auto strategy = ParseHpoStrategy(std::string_view(v.data(), v.size()));
    if (!strategy.ok()) {
      return FieldError(p, absl::StrCat("'", v, "' is not random | tpe | fixed"));
    }
    m.hpo_fixed = false;
    m.hpo_strategy = *strategy;
    return absl::OkStatus();
  };
  h["hpo.trials"] = int_field(&m.hpo_trials);
  h["hpo.min_epochs"] = int_field(&m.hpo_ranges.min_epochs);
  h["hpo.max_epochs"] = int_field(&m.hpo_ranges.max_epochs);
  h["hpo.min_batch_size"] = int_field(&m.hpo_ranges.min_batch_size);
  h["hpo.max_batch_size"] = int_field(&m.hpo_ranges.max_batch_size);
  h["hpo.min_learning_rate"] = double_field(&m.hpo_ranges.min_learning_rate);
  h["hpo.max_learning_rate"] = double_field(&m.hpo_ranges.max_learning_rate);
  h["hpo.l2"] = double_field(&m.hpo_ranges.l2);

  h["train.epochs"] = int_field(&m.train.epochs);
  h["train.batch_size"] = int_field(&m.train.batch_size);
  h["train.learning_rate"] = double_field(&m.train.learning_rate);
  h["train.l2"] = double_field(&m.train.l2);

  AttackSuiteConfig& a = m.attack;
  h["attack.lira.variance"] = [&a](string_view v, const std::string& p) {
    auto mode = ParseLiraVariance(std::string_view(v.data(), v.size()));
    if (!mode.ok()) return FieldError(p, mode.status().message());
    a.lira.variance = *mode;
    return absl::OkStatus();
  };
  h["attack.lira.query_views"] = int_field(&a.lira.query_views);
  h["attack.rmia.gamma"] = double_field(&a.rmia.gamma);
  h["attack.rmia.vote"] = [&a](string_view v, const std::string& p) {
    auto vote = ParseRmiaVote(std::string_view(v.data(), v.size()));
    if (!vote.ok()) return FieldError(p, vote.status().message());
    a.rmia.vote = *vote;
    return absl::OkStatus();
  };
  h["attack.qmia.levels"] = [&a](string_view v, const std::string& p) {
    return ParseDoubleList(v, p, &a.qmia.quantile_levels);
  };
  h["attack.qmia.reference"] = double_field(&a.qmia.reference_level);
  h["attack.qmia.hidden"] = int_field(&a.qmia.regressor.hidden);
  h["attack.ml_leaks.k_top"] = int_field(&a.ml_leaks.k_top);
  h["attack.ml_leaks.shadow"] = int_field(&a.ml_leaks.shadow_index);
  h["attack.ml_leaks.hidden"] = int_field(&a.ml_leaks.classifier.hidden);
  h["attack.trajectory.distill_size"] = int_field(&m.distill_size);
  h["attack.trajectory.distill_epochs"] = int_field(&a.trajectory.distill_epochs);
  h["attack.trajectory.shadows"] = int_field(&a.trajectory.num_shadows);
  h["attack.trajectory.hidden"] = int_field(&a.trajectory.classifier.hidden);
  h["attack.iha.damping"] = double_field(&a.iha.damping);
  h["attack.iha.max_params"] = size_field(&a.iha.max_params);
  return h;
}

absl::Status Prefixed(string_view prefix, const absl::Status& status) {
  if (status.ok()) return status;
  return absl::Status(status.code(), absl::StrCat(prefix, ": ", status.message()));
}

}  // namespace

absl::Status ExperimentManifest::Validate() const {
  if (synthetic) {
    if (synth.num_classes < 2) return FieldError("dataset.classes", "must be >= 2");
    if (synth.dim < 1) return FieldError("dataset.dim", "must be >= 1");
    if (synth.per_class < 1) return FieldError("dataset.per_class", "must be >= 1");
    if (!(synth.separation >= 0)) {
      return FieldError("dataset.separation", "must be >= 0");
    }
    if (synth.num_views < 0) return FieldError("dataset.views", "must be >= 0");
    if (!(synth.view_noise >= 0)) {
      return FieldError("dataset.view_noise", "must be >= 0");
    }
  } else if (dataset_path.empty()) {
    return FieldError("dataset.path", "required when source = path");
  }

  if (shots.empty()) return FieldError("experiment.shots", "must not be empty");
  for (std::size_t i = 0; i < shots.size(); ++i) {
    if (shots[i] < 1) {
      return FieldError(absl::StrCat("experiment.shots[", i, "]"), "must be >= 1");
    }
  }
  if (num_shadows < 1) return FieldError("experiment.shadows", "must be >= 1");
  if (protocol == SplitProtocol::kBalanced && num_shadows % 2 != 0) {
    return FieldError("experiment.shadows",
                      absl::StrCat(num_shadows,
                                   " is odd; the balanced protocol needs an "
                                   "even shadow count"));
  }
  if (repeats < 1) return FieldError("experiment.repeats", "must be >= 1");
  if (attacks.empty()) return FieldError("experiment.attacks", "must not be empty");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < attacks.size(); ++i) {
    const std::string path = absl::StrCat("experiment.attacks[", i, "]");
    if (!IsAttackName(attacks[i])) {
      return FieldError(path, absl::StrCat("unknown attack '", attacks[i], "'"));
    }
    if (!seen.insert(attacks[i]).second) {
      return FieldError(path, absl::StrCat("'", attacks[i], "' listed twice"));
    }
  }
  if (fpr_targets.empty()) {
    return FieldError("experiment.fpr_targets", "must not be empty");
  }
  for (std::size_t i = 0; i < fpr_targets.size(); ++i) {
    if (!(fpr_targets[i] > 0.0 && fpr_targets[i] < 1.0)) {
      return FieldError(absl::StrCat("experiment.fpr_targets[", i, "]"),
                        absl::StrCat(fpr_targets[i], " is outside (0, 1)"));
    }
  }
  if (population_size < 1) {
    return FieldError("experiment.population", "must be >= 1");
  }
  if (workers < 1) return FieldError("experiment.workers", "must be >= 1");

  if (!hpo_fixed) {
    if (hpo_trials < 1) return FieldError("hpo.trials", "must be >= 1");
    RETURN_IF_ERROR(Prefixed("hpo", hpo_ranges.Validate()));
  }
  RETURN_IF_ERROR(Prefixed("train", train.Validate()));

  if (!(attack.rmia.gamma >= 1.0)) {
    return FieldError("attack.rmia.gamma", "must be >= 1");
  }
  if (attack.lira.query_views < 0) {
    return FieldError("attack.lira.query_views", "must be >= 0");
  }
  const auto& levels = attack.qmia.quantile_levels;
  if (levels.empty()) return FieldError("attack.qmia.levels", "must not be empty");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!(levels[i] > 0.0 && levels[i] < 1.0)) {
      return FieldError(absl::StrCat("attack.qmia.levels[", i, "]"),
                        "must lie in (0, 1)");
    }
  }
  if (std::find(levels.begin(), levels.end(), attack.qmia.reference_level) ==
      levels.end()) {
    return FieldError("attack.qmia.reference", "must be one of attack.qmia.levels");
  }
  if (attack.qmia.regressor.hidden < 0) {
    return FieldError("attack.qmia.hidden", "must be >= 0");
  }
  if (attack.ml_leaks.k_top < 0) return FieldError("attack.ml_leaks.k_top", "must be >= 0");
  if (attack.ml_leaks.shadow_index < 0 ||
      attack.ml_leaks.shadow_index >= num_shadows) {
    return FieldError("attack.ml_leaks.shadow", "must name an existing shadow");
  }
  if (attack.ml_leaks.classifier.hidden < 0) {
    return FieldError("attack.ml_leaks.hidden", "must be >= 0");
  }
  if (distill_size < 1) {
    return FieldError("attack.trajectory.distill_size", "must be >= 1");
  }
  if (attack.trajectory.distill_epochs < 1) {
    return FieldError("attack.trajectory.distill_epochs", "must be >= 1");
  }
  if (attack.trajectory.num_shadows < 1) {
    return FieldError("attack.trajectory.shadows", "must be >= 1");
  }
  if (attack.trajectory.classifier.hidden < 0) {
    return FieldError("attack.trajectory.hidden", "must be >= 0");
  }
  if (!(attack.iha.damping >= 0)) {
    return FieldError("attack.iha.damping", "must be >= 0");
  }
  return absl::OkStatus();
}

absl::StatusOr<ExperimentManifest> ParseManifest(std::string_view text) {
  ExperimentManifest manifest;
  const std::map<std::string, Handler> handlers = Handlers(manifest);
  std::set<std::string> sections;
  for (const auto& [key, handler] : handlers) {
    sections.insert(key.substr(0, key.rfind('.')));
  }

  std::string section;
  std::set<std::string> assigned;
  int line_number = 0;
  for (string_view raw :
       absl::StrSplit(string_view(text.data(), text.size()), '\n')) {
    ++line_number;
    string_view line = raw.substr(0, raw.find('#'));
    line = absl::StripAsciiWhitespace(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        return absl::InvalidArgumentError(
            absl::StrCat("line ", line_number, ": malformed section header"));
      }
      section = std::string(absl::StripAsciiWhitespace(line.substr(1, line.size() - 2)));
      if (sections.count(section) == 0) {
        return FieldError(section, absl::StrCat("unknown section (line ",
                                                line_number, ")"));
      }
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == string_view::npos) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_number, ": expected 'key = value'"));
    }
    if (section.empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_number, ": key outside any section"));
    }
    const std::string path = absl::StrCat(
        section, ".", absl::StripAsciiWhitespace(line.substr(0, eq)));
    const string_view value = absl::StripAsciiWhitespace(line.substr(eq + 1));
    const auto handler = handlers.find(path);
    if (handler == handlers.end()) {
      return FieldError(path, absl::StrCat("unknown key (line ", line_number, ")"));
    }
    if (!assigned.insert(path).second) {
      return FieldError(path, absl::StrCat("set twice (line ", line_number, ")"));
    }
    RETURN_IF_ERROR(handler->second(value, path));
  }
  RETURN_IF_ERROR(manifest.Validate());
  return manifest;
}

absl::StatusOr<ExperimentManifest> LoadManifest(const std::string& path) {
  ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  return ParseManifest(text);
}

std::string CanonicalManifest(const ExperimentManifest& m) {
  auto num = [](double v) { return absl::StrFormat("%.17g", v); };
  auto nums = [&](const std::vector<double>& v) {
    std::vector<std::string> parts;
    for (double x : v) parts.push_back(num(x));
    return absl::StrJoin(parts, ", ");
  };
  std::string out;
  auto line = [&out](string_view key, string_view value) {
    absl::StrAppend(&out, key, " = ", value, "\n");
  };
  out += "[dataset]\n";
  line("source", m.synthetic ? "synthetic" : "path");
  if (m.synthetic) {
    line("classes", absl::StrCat(m.synth.num_classes));
    line("dim", absl::StrCat(m.synth.dim));
    line("per_class", absl::StrCat(m.synth.per_class));
    line("separation", num(m.synth.separation));
    line("views", absl::StrCat(m.synth.num_views));
    line("view_noise", num(m.synth.view_noise));
    line("seed", absl::StrCat(m.synth.seed));
  } else {
    line("path", m.dataset_path);
  }
  out += "[experiment]\n";
  line("shots", absl::StrJoin(m.shots, ", "));
  line("shadows", absl::StrCat(m.num_shadows));
  line("protocol", std::string(SplitProtocolName(m.protocol)));
  line("repeats", absl::StrCat(m.repeats));
  line("attacks", absl::StrJoin(m.attacks, ", "));
  line("fpr_targets", nums(m.fpr_targets));
  line("population", absl::StrCat(m.population_size));
  line("seed", absl::StrCat(m.seed));
  out += "[hpo]\n";
  line("strategy",
       m.hpo_fixed ? "fixed" : std::string(HpoStrategyName(m.hpo_strategy)));
  line("trials", absl::StrCat(m.hpo_trials));
  line("min_epochs", absl::StrCat(m.hpo_ranges.min_epochs));
  line("max_epochs", absl::StrCat(m.hpo_ranges.max_epochs));
  line("min_batch_size", absl::StrCat(m.hpo_ranges.min_batch_size));
  line("max_batch_size", absl::StrCat(m.hpo_ranges.max_batch_size));
  line("min_learning_rate", num(m.hpo_ranges.min_learning_rate));
  line("max_learning_rate", num(m.hpo_ranges.max_learning_rate));
  line("l2", num(m.hpo_ranges.l2));
  out += "[train]\n";
  line("epochs", absl::StrCat(m.train.epochs));
  line("batch_size", absl::StrCat(m.train.batch_size));
  line("learning_rate", num(m.train.learning_rate));
  line("l2", num(m.train.l2));
  const AttackSuiteConfig& a = m.attack;
  out += "[attack.lira]\n";
  line("variance", std::string(LiraVarianceName(a.lira.variance)));
  line("query_views", absl::StrCat(a.lira.query_views));
  out += "[attack.rmia]\n";
  line("gamma", num(a.rmia.gamma));
  line("vote", std::string(RmiaVoteName(a.rmia.vote)));
  out += "[attack.qmia]\n";
  line("levels", nums(a.qmia.quantile_levels));
  line("reference", num(a.qmia.reference_level));
  line("hidden", absl::StrCat(a.qmia.regressor.hidden));
  out += "[attack.ml_leaks]\n";
  line("k_top", absl::StrCat(a.ml_leaks.k_top));
  line("shadow", absl::StrCat(a.ml_leaks.shadow_index));
  line("hidden", absl::StrCat(a.ml_leaks.classifier.hidden));
  out += "[attack.trajectory]\n";
  line("distill_size", absl::StrCat(m.distill_size));
  line("distill_epochs", absl::StrCat(a.trajectory.distill_epochs));
  line("shadows", absl::StrCat(a.trajectory.num_shadows));
  line("hidden", absl::StrCat(a.trajectory.classifier.hidden));
  out += "[attack.iha]\n";
  line("damping", num(a.iha.damping));
  line("max_params", absl::StrCat(a.iha.max_params));
  return out;
}

std::string ManifestHash(const ExperimentManifest& manifest) {
  const std::string canonical = CanonicalManifest(manifest);
  return absl::StrFormat("%016x",
                         Fnv1a64(std::string_view(canonical.data(), canonical.size())));
}

}  // namespace miaudit
