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

#include "miaudit/trainer/distill.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "absl/strings/str_cat.h"
#include "miaudit/common/seed.h"
#include "miaudit/common/status_macros.h"

namespace miaudit {
namespace {

double LogSumExp(const Eigen::VectorXd& z) {
  const double m = z.maxCoeff();
  return m + std::log((z.array() - m).exp().sum());
}

double CrossEntropy(const LinearHead& head,
                    const Eigen::Ref<const Eigen::VectorXd>& x, int y) {
  const Eigen::VectorXd z = head.Logits(x);
  return std::max(0.0, LogSumExp(z) - z[y]);
}

// KL(q || softmax(z)) with q given as probabilities.
double KlDivergence(const Eigen::VectorXd& q, const Eigen::VectorXd& z) {
  const double lse = LogSumExp(z);
  double kl = 0.0;
  for (Eigen::Index c = 0; c < q.size(); ++c) {
    if (q[c] > 0) kl += q[c] * (std::log(q[c]) - (z[c] - lse));
  }
  return std::max(0.0, kl);
}

}  // namespace

absl::StatusOr<DistillResult> Distill(const LinearHead& teacher,
                                      const TrainingData& distill_set,
                                      const TrainingData& probes,
                                      std::span<const SampleId> probe_ids,
                                      int distill_epochs,
                                      const TrainConfig& config,
                                      uint64_t seed) {
  RETURN_IF_ERROR(config.Validate());
  if (distill_set.size() == 0) {
    return absl::FailedPreconditionError("empty distillation set");
  }
  if (distill_epochs < 1) {
    return absl::InvalidArgumentError("distill_epochs must be >= 1");
  }
  if (probe_ids.size() != probes.size()) {
    return absl::InvalidArgumentError("probe ids and probe rows differ");
  }
  if (distill_set.dim() != teacher.dim() ||
      (probes.size() > 0 && probes.dim() != teacher.dim())) {
    return absl::InvalidArgumentError("distillation data dimension mismatch");
  }

  const std::size_t n = distill_set.size();
  const int num_classes = teacher.num_classes();
  Eigen::MatrixXd soft_targets(num_classes, n);
  for (std::size_t i = 0; i < n; ++i) {
    soft_targets.col(i) =
        teacher.Posteriors(distill_set.features.row(i).transpose());
  }

  DistillResult result;
  result.student = LinearHead(teacher.dim(), num_classes);
  result.student.set_meta(config.Hash(), seed);
  result.probe_ids.assign(probe_ids.begin(), probe_ids.end());
  result.trajectories.assign(probes.size(), LossTrajectory());
  for (auto& t : result.trajectories) t.reserve(distill_epochs + 1);

  LinearHead& student = result.student;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(DeriveSeed(seed, "distill-shuffle"));
  Eigen::MatrixXd grad_w(num_classes, teacher.dim());
  Eigen::VectorXd grad_b(num_classes);
  const std::size_t batch = static_cast<std::size_t>(config.batch_size);
  uint64_t step = 0;

  for (int epoch = 0; epoch < distill_epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t start = 0; start < n; start += batch, ++step) {
      const std::size_t end = std::min(n, start + batch);
      grad_w.setZero();
      grad_b.setZero();
      for (std::size_t k = start; k < end; ++k) {
        const auto x = distill_set.features.row(order[k]).transpose();
        Eigen::VectorXd residual =
            student.Posteriors(x) - soft_targets.col(order[k]);
        grad_w.noalias() += residual * x.transpose();
        grad_b += residual;
      }
      const double scale = 1.0 / static_cast<double>(end - start);
      student.weights() -= config.learning_rate *
                           (scale * grad_w + config.l2 * student.weights());
      student.bias() -= config.learning_rate * scale * grad_b;
      if (!student.AllFinite()) {
        return absl::AbortedError(
            absl::StrCat("divergence: distillation step ", step));
      }
    }

    double kl = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      kl += KlDivergence(soft_targets.col(i),
                         student.Logits(distill_set.features.row(i).transpose()));
    }
    result.epoch_kl.push_back(kl / static_cast<double>(n));
    for (std::size_t p = 0; p < probes.size(); ++p) {
      result.trajectories[p].push_back(CrossEntropy(
          student, probes.features.row(p).transpose(), probes.labels[p]));
    }
  }
  for (std::size_t p = 0; p < probes.size(); ++p) {
    result.trajectories[p].push_back(CrossEntropy(
        teacher, probes.features.row(p).transpose(), probes.labels[p]));
  }
  return result;
}

absl::StatusOr<DistillResult> Distill(const LinearHead& teacher,
                                      const FeatureDataset& dataset,
                                      std::span<const SampleId> distill_ids,
                                      std::span<const SampleId> probe_ids,
                                      int distill_epochs,
                                      const TrainConfig& config,
                                      uint64_t seed) {
  return Distill(teacher, Gather(dataset, distill_ids),
                 Gather(dataset, probe_ids), probe_ids, distill_epochs, config,
                 seed);
}

}  // namespace miaudit
