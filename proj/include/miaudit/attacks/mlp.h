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


// Small one-hidden-layer networks used as attack classifiers and quantile
// regressors.

#ifndef MIAUDIT_ATTACKS_MLP_H_
#define MIAUDIT_ATTACKS_MLP_H_

#include <cstdint>
#include <vector>

#include "Eigen/Core"
#include "absl/status/statusor.h"
#include "miaudit/data/feature_dataset.h"

namespace miaudit {

struct MlpConfig {
  int hidden = 64;  // 0 drops the hidden layer and leaves only output biases
  int epochs = 100;
  double learning_rate = 1e-2;
  int batch_size = 16;
};

// Pinball loss of residual r = target - prediction at level tau.
double PinballLoss(double residual, double tau);

class Mlp {
 public:
  // Logistic output trained with binary cross-entropy; labels are 0 or 1.
  static absl::StatusOr<Mlp> TrainBinary(const RowMatrix& inputs,
                                         const std::vector<int>& labels,
                                         const MlpConfig& config,
                                         uint64_t seed);

  // One output per level, trained with the summed pinball loss. Output
  // biases start at the marginal quantiles of `targets`.
  static absl::StatusOr<Mlp> TrainQuantile(const RowMatrix& inputs,
                                           const std::vector<double>& targets,
                                           const std::vector<double>& levels,
                                           const MlpConfig& config,
                                           uint64_t seed);

  // Raw outputs, in target units.
  Eigen::VectorXd Forward(const Eigen::Ref<const Eigen::VectorXd>& input) const;
  double MemberProbability(const Eigen::Ref<const Eigen::VectorXd>& input) const;
  // Forward() sorted ascending, so quantile estimates never cross.
  Eigen::VectorXd Quantiles(const Eigen::Ref<const Eigen::VectorXd>& input) const;

  int input_dim() const { return static_cast<int>(in_mean_.size()); }

 private:
  enum class Loss { kBinary, kPinball };

  static absl::StatusOr<Mlp> Train(const RowMatrix& inputs,
                                   const Eigen::MatrixXd& targets, Loss loss,
                                   const std::vector<double>& levels,
                                   const Eigen::VectorXd& initial_bias,
                                   const MlpConfig& config, uint64_t seed);

  Eigen::VectorXd Standardize(const Eigen::Ref<const Eigen::VectorXd>& x) const;

  Eigen::VectorXd in_mean_;
  Eigen::VectorXd in_scale_;
  Eigen::MatrixXd w1_;  // hidden x in
  Eigen::VectorXd b1_;
  Eigen::MatrixXd w2_;  // out x hidden
  Eigen::VectorXd b2_;
  double out_mean_ = 0.0;  // pinball outputs are fit in standardized units
  double out_scale_ = 1.0;
};

}  // namespace miaudit

#endif  // MIAUDIT_ATTACKS_MLP_H_
