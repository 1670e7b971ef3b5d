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

#ifndef MIAUDIT_TRAINER_LINEAR_HEAD_H_
#define MIAUDIT_TRAINER_LINEAR_HEAD_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "Eigen/Core"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "miaudit/data/feature_dataset.h"

namespace miaudit {

// Hyperparameters of head-only training. Bounds follow the HPO search box.
struct TrainConfig {
  int epochs = 100;
  int batch_size = 32;
  double learning_rate = 1e-2;
  double l2 = 0.0;  // weight decay on W (not b)

  absl::Status Validate() const;
  uint64_t Hash() const;
  std::string DebugString() const;

  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

// Softmax regression head: logits = W x + b, W is C x d.
class LinearHead {
 public:
  LinearHead() = default;
  // Zero-initialized.
  LinearHead(int dim, int num_classes);

  int dim() const { return static_cast<int>(weights_.cols()); }
  int num_classes() const { return static_cast<int>(weights_.rows()); }
  // Number of parameters C * (d + 1).
  int num_params() const { return num_classes() * (dim() + 1); }

  Eigen::MatrixXd& weights() { return weights_; }
  const Eigen::MatrixXd& weights() const { return weights_; }
  Eigen::VectorXd& bias() { return bias_; }
  const Eigen::VectorXd& bias() const { return bias_; }

  uint64_t config_hash() const { return config_hash_; }
  uint64_t seed() const { return seed_; }
  void set_meta(uint64_t config_hash, uint64_t seed) {
    config_hash_ = config_hash;
    seed_ = seed;
  }

  Eigen::VectorXd Logits(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  // Unchecked softmax(W x + b); use PredictPosteriors at API boundaries.
  Eigen::VectorXd Posteriors(const Eigen::Ref<const Eigen::VectorXd>& x) const;

  bool AllFinite() const { return weights_.allFinite() && bias_.allFinite(); }

 private:
  Eigen::MatrixXd weights_;
  Eigen::VectorXd bias_;
  uint64_t config_hash_ = 0;
  uint64_t seed_ = 0;
};

// Numerically stable softmax.
Eigen::VectorXd Softmax(const Eigen::Ref<const Eigen::VectorXd>& logits);

// Returns kInvalidArgument on a dimension mismatch.
absl::StatusOr<Eigen::VectorXd> PredictPosteriors(
    const LinearHead& head, const Eigen::Ref<const Eigen::VectorXd>& x);

// Dense training examples gathered from a dataset.
struct TrainingData {
  RowMatrix features;
  std::vector<int> labels;
  int num_classes = 0;

  std::size_t size() const { return labels.size(); }
  int dim() const { return static_cast<int>(features.cols()); }
};

// Copies the rows of `ids` (query 0 = original view).
TrainingData Gather(const FeatureDataset& dataset,
                    std::span<const SampleId> ids, int query = 0);

// Mini-batch SGD from a zero head on mean cross-entropy + (l2/2)||W||^2.
// Runs epochs * ceil(n / batch) steps, reshuffling each epoch from `seed`;
// the final short batch is kept. kAborted on divergence, naming the step.
absl::StatusOr<LinearHead> TrainHead(const TrainingData& data,
                                     const TrainConfig& config, uint64_t seed);

// Fraction of rows whose argmax posterior equals the label.
double Accuracy(const LinearHead& head, const TrainingData& data);

// Model persistence ("MIAH"): magic | version u32 | d u32 | C u32 |
// W row-major f64 | b f64 | config hash u64.
inline constexpr std::string_view kHeadMagic = "MIAH";
inline constexpr uint32_t kHeadVersion = 1;

std::string EncodeHead(const LinearHead& head);
absl::StatusOr<LinearHead> DecodeHead(std::string_view bytes);
absl::Status SaveHead(const LinearHead& head, const std::string& path);
absl::StatusOr<LinearHead> LoadHead(const std::string& path);

}  // namespace miaudit

#endif  // MIAUDIT_TRAINER_LINEAR_HEAD_H_
