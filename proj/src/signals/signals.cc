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

#include "miaudit/signals/signals.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string_view>

#include "absl/strings/str_cat.h"
#include "miaudit/common/seed.h"

namespace miaudit {

double SampleLoss(const LinearHead& head,
                  const Eigen::Ref<const Eigen::VectorXd>& x, int y) {
  const Eigen::VectorXd z = head.Logits(x);
  const double m = z.maxCoeff();
  const double log_norm = m + std::log((z.array() - m).exp().sum());
  return std::max(0.0, log_norm - z[y]);
}

double LogitScale(double p) {
  const double clamped = std::clamp(p, kLogitClamp, 1.0 - kLogitClamp);
  return std::log(clamped / (1.0 - clamped));
}

SignalRecord ComputeSignals(const LinearHead& head,
                            const Eigen::Ref<const Eigen::VectorXd>& x, int y,
                            SampleId id) {
  SignalRecord record;
  record.sample_id = id;
  record.posterior = head.Posteriors(x);
  record.loss = SampleLoss(head, x, y);
  record.confidence = record.posterior[y];
  record.logit_confidence = LogitScale(record.confidence);
  return record;
}

Eigen::VectorXd LossGradient(const LinearHead& head,
                             const Eigen::Ref<const Eigen::VectorXd>& x, int y,
                             double l2) {
  const int d = head.dim();
  const int num_classes = head.num_classes();
  Eigen::VectorXd residual = head.Posteriors(x);
  residual[y] -= 1.0;
  Eigen::VectorXd grad(head.num_params());
  for (int c = 0; c < num_classes; ++c) {
    grad.segment(c * d, d) = residual[c] * x;
    if (l2 > 0) grad.segment(c * d, d) += l2 * head.weights().row(c).transpose();
  }
  grad.tail(num_classes) = residual;
  return grad;
}

void AccumulateSampleHessian(const LinearHead& head,
                             const Eigen::Ref<const Eigen::VectorXd>& x,
                             double weight, Eigen::MatrixXd& accumulator) {
  const int d = head.dim();
  const int num_classes = head.num_classes();
  const int bias_offset = num_classes * d;
  const Eigen::VectorXd p = head.Posteriors(x);
  const Eigen::MatrixXd outer = x * x.transpose();
  for (int c = 0; c < num_classes; ++c) {
    for (int k = 0; k < num_classes; ++k) {
      const double a = weight * ((c == k ? p[c] : 0.0) - p[c] * p[k]);
      if (a == 0.0) continue;
      accumulator.block(c * d, k * d, d, d) += a * outer;
      accumulator.block(c * d, bias_offset + k, d, 1) += a * x;
      accumulator.block(bias_offset + c, k * d, 1, d) += a * x.transpose();
      accumulator(bias_offset + c, bias_offset + k) += a;
    }
  }
}

absl::StatusOr<HeadHessian> EmpiricalHessian(const LinearHead& head,
                                             const TrainingData& data,
                                             double damping,
                                             std::size_t max_params) {
  if (data.size() == 0) {
    return absl::InvalidArgumentError("Hessian of an empty dataset");
  }
  if (!(damping >= 0)) return absl::InvalidArgumentError("damping must be >= 0");
  if (data.dim() != head.dim()) {
    return absl::InvalidArgumentError("data and head dimensions differ");
  }
  const std::size_t num_params = static_cast<std::size_t>(head.num_params());
  if (num_params > max_params) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "Hessian would have P = C * (d + 1) = ", num_params,
        " parameters (limit ", max_params, "); reduce d or C"));
  }
  HeadHessian hessian;
  hessian.damping = damping;
  hessian.matrix = Eigen::MatrixXd::Zero(num_params, num_params);
  const double weight = 1.0 / static_cast<double>(data.size());
  double loss = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const Eigen::VectorXd x = data.features.row(i).transpose();
    AccumulateSampleHessian(head, x, weight, hessian.matrix);
    loss += SampleLoss(head, x, data.labels[i]);
  }
  // Exact symmetry regardless of accumulation order.
  hessian.matrix = 0.5 * (hessian.matrix + hessian.matrix.transpose()).eval();
  hessian.matrix.diagonal().array() += damping;
  hessian.mean_loss = loss * weight;

  const std::string head_bytes = EncodeHead(head);
  uint64_t fp = Fnv1a64(head_bytes);
  fp = Fnv1a64(std::string_view(reinterpret_cast<const char*>(data.features.data()),
                                data.features.size() * sizeof(double)),
               fp);
  fp = Fnv1a64(std::string_view(reinterpret_cast<const char*>(&damping),
                                sizeof(damping)),
               fp);
  hessian.fingerprint = fp;
  return hessian;
}

absl::StatusOr<HessianSolver> HessianSolver::Factor(
    const Eigen::MatrixXd& matrix) {
  HessianSolver solver;
  solver.llt_.compute(matrix);
  if (solver.llt_.info() != Eigen::Success) {
    return absl::FailedPreconditionError(
        "singular Hessian: factorization failed, increase the damping");
  }
  // LLT only rejects non-positive pivots; also reject pivots lost in
  // rounding noise.
  const Eigen::VectorXd pivots =
      solver.llt_.matrixLLT().diagonal().array().square();
  const double tolerance = static_cast<double>(matrix.rows()) *
                           std::numeric_limits<double>::epsilon() *
                           pivots.maxCoeff();
  if (!(pivots.minCoeff() > tolerance)) {
    return absl::FailedPreconditionError(
        "singular Hessian: numerically rank deficient, increase the damping");
  }
  return solver;
}

Eigen::VectorXd HessianSolver::Solve(const Eigen::VectorXd& v) const {
  return llt_.solve(v);
}

absl::StatusOr<Eigen::VectorXd> Ihvp(const HeadHessian& hessian,
                                     const Eigen::VectorXd& v) {
  if (v.size() != hessian.matrix.rows()) {
    return absl::InvalidArgumentError("vector size does not match Hessian");
  }
  auto solver = HessianSolver::Factor(hessian.matrix);
  if (!solver.ok()) return solver.status();
  return solver->Solve(v);
}

}  // namespace miaudit
