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

// Per-sample membership signals of a linear head.
//
// Parameter vectors use the layout [vec_rowmajor(W); b]: entry c * d + j is
// W(c, j) and entry C * d + c is b(c). Gradients, Hessians and iHVPs all
// share it.

#ifndef MIAUDIT_SIGNALS_SIGNALS_H_
#define MIAUDIT_SIGNALS_SIGNALS_H_

#include <cstddef>
#include <cstdint>

#include "Eigen/Core"
#include "Eigen/Cholesky"
#include "absl/status/statusor.h"
#include "miaudit/data/feature_dataset.h"
#include "miaudit/trainer/linear_head.h"

namespace miaudit {

inline constexpr double kLogitClamp = 1e-7;
inline constexpr double kDefaultDamping = 1e-3;
inline constexpr std::size_t kDefaultMaxHessianParams = 20000;

struct SignalRecord {
  SampleId sample_id = 0;
  double loss = 0.0;              // -ln p_y
  double confidence = 0.0;        // p_y
  double logit_confidence = 0.0;  // LogitScale(p_y)
  Eigen::VectorXd posterior;
};

// Cross-entropy -ln softmax(Wx + b)[y], via log-sum-exp; never negative.
double SampleLoss(const LinearHead& head,
                  const Eigen::Ref<const Eigen::VectorXd>& x, int y);

// ln(p / (1 - p)) with p clamped to [1e-7, 1 - 1e-7].
double LogitScale(double p);

SignalRecord ComputeSignals(const LinearHead& head,
                            const Eigen::Ref<const Eigen::VectorXd>& x, int y,
                            SampleId id = 0);

// Flattened d loss / d(W, b) = [(p - e_y) (x) x ; p - e_y], plus l2 * W on
// the W block when l2 > 0.
Eigen::VectorXd LossGradient(const LinearHead& head,
                             const Eigen::Ref<const Eigen::VectorXd>& x, int y,
                             double l2 = 0.0);

// Un-averaged, undamped Hessian of one sample's cross-entropy, added into
// `accumulator` (P x P) with the given weight.
void AccumulateSampleHessian(const LinearHead& head,
                             const Eigen::Ref<const Eigen::VectorXd>& x,
                             double weight, Eigen::MatrixXd& accumulator);

struct HeadHessian {
  Eigen::MatrixXd matrix;  // includes damping * I
  double damping = 0.0;
  double mean_loss = 0.0;
  uint64_t fingerprint = 0;  // of (head, data, damping)
};

// (1/n) sum_i (diag p_i - p_i p_i^T) (x) [x_i; 1][x_i; 1]^T + damping * I,
// in the shared parameter layout. kResourceExhausted when C (d + 1) exceeds
// `max_params`.
absl::StatusOr<HeadHessian> EmpiricalHessian(
    const LinearHead& head, const TrainingData& data, double damping,
    std::size_t max_params = kDefaultMaxHessianParams);

// Cholesky-factored symmetric positive definite matrix for repeated solves.
class HessianSolver {
 public:
  // kFailedPrecondition if the matrix is not numerically positive definite.
  static absl::StatusOr<HessianSolver> Factor(const Eigen::MatrixXd& matrix);
  Eigen::VectorXd Solve(const Eigen::VectorXd& v) const;

 private:
  Eigen::LLT<Eigen::MatrixXd> llt_;
};

// Solves H u = v.
absl::StatusOr<Eigen::VectorXd> Ihvp(const HeadHessian& hessian,
                                     const Eigen::VectorXd& v);

}  // namespace miaudit

#endif  // MIAUDIT_SIGNALS_SIGNALS_H_
