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

#include "miaudit/trainer/linear_head.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "miaudit/common/binary_io.h"
#include "miaudit/common/seed.h"
#include "miaudit/common/status_macros.h"

namespace miaudit {

absl::Status TrainConfig::Validate() const {
  if (epochs < 1 || epochs > 200) {
    return absl::InvalidArgumentError(
        absl::StrCat("epochs = ", epochs, " outside [1, 200]"));
  }
  if (batch_size < 10 || batch_size > 1000) {
    return absl::InvalidArgumentError(
        absl::StrCat("batch_size = ", batch_size, " outside [10, 1000]"));
  }
  if (!(learning_rate >= 1e-7 && learning_rate <= 1e-2)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "learning_rate = ", learning_rate, " outside [1e-7, 1e-2]"));
  }
  if (!(l2 >= 0) || !std::isfinite(l2)) {
    return absl::InvalidArgumentError("l2 must be finite and >= 0");
  }
  return absl::OkStatus();
}

uint64_t TrainConfig::Hash() const {
  ByteWriter w;
  w.Put<int32_t>(epochs);
  w.Put<int32_t>(batch_size);
  w.Put<double>(learning_rate);
  w.Put<double>(l2);
  return Fnv1a64(w.bytes());
}

std::string TrainConfig::DebugString() const {
  return absl::StrFormat("epochs=%d batch_size=%d learning_rate=%.6g l2=%.6g",
                         epochs, batch_size, learning_rate, l2);
}

LinearHead::LinearHead(int dim, int num_classes)
    : weights_(Eigen::MatrixXd::Zero(num_classes, dim)),
      bias_(Eigen::VectorXd::Zero(num_classes)) {}

Eigen::VectorXd LinearHead::Logits(
    const Eigen::Ref<const Eigen::VectorXd>& x) const {
  return weights_ * x + bias_;
}

Eigen::VectorXd LinearHead::Posteriors(
    const Eigen::Ref<const Eigen::VectorXd>& x) const {
  return Softmax(Logits(x));
}

Eigen::VectorXd Softmax(const Eigen::Ref<const Eigen::VectorXd>& logits) {
  // Scalar exp: Eigen's packet exp clamps its argument, so fully saturated
  // logits would leave ~1e-308 residue instead of exact zeros.
  const double top = logits.maxCoeff();
  Eigen::VectorXd p =
      logits.unaryExpr([top](double z) { return std::exp(z - top); });
  p /= p.sum();
  return p;
}

absl::StatusOr<Eigen::VectorXd> PredictPosteriors(
    const LinearHead& head, const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (x.size() != head.dim()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "feature vector has dimension ", x.size(), ", head expects ",
        head.dim()));
  }
  return head.Posteriors(x);
}

TrainingData Gather(const FeatureDataset& dataset,
                    std::span<const SampleId> ids, int query) {
  TrainingData data;
  data.num_classes = dataset.num_classes();
  data.features.resize(static_cast<Eigen::Index>(ids.size()), dataset.dim());
  data.labels.resize(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    data.features.row(i) = dataset.Query(ids[i], query).transpose();
    data.labels[i] = dataset.label(ids[i]);
  }
  return data;
}

absl::StatusOr<LinearHead> TrainHead(const TrainingData& data,
                                     const TrainConfig& config, uint64_t seed) {
  RETURN_IF_ERROR(config.Validate());
  const std::size_t n = data.size();
  if (n == 0) return absl::InvalidArgumentError("empty training set");
  const int num_classes = data.num_classes;

  LinearHead head(data.dim(), num_classes);
  head.set_meta(config.Hash(), seed);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(DeriveSeed(seed, "train-shuffle"));

  Eigen::MatrixXd grad_w(num_classes, data.dim());
  Eigen::VectorXd grad_b(num_classes);
  const std::size_t batch = static_cast<std::size_t>(config.batch_size);
  uint64_t step = 0;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t start = 0; start < n; start += batch, ++step) {
      const std::size_t end = std::min(n, start + batch);
      grad_w.setZero();
      grad_b.setZero();
      double loss = 0.0;
      for (std::size_t k = start; k < end; ++k) {
        const auto x = data.features.row(order[k]).transpose();
        const int y = data.labels[order[k]];
        const Eigen::VectorXd logits = head.Logits(x);
        const double max_logit = logits.maxCoeff();
        const double log_norm =
            max_logit + std::log((logits.array() - max_logit).exp().sum());
        loss += log_norm - logits[y];
        Eigen::VectorXd residual = (logits.array() - log_norm).exp().matrix();
        residual[y] -= 1.0;
        grad_w.noalias() += residual * x.transpose();
        grad_b += residual;
      }
      if (!std::isfinite(loss)) {
        return absl::AbortedError(
            absl::StrCat("divergence: non-finite loss at step ", step));
      }
      const double scale = 1.0 / static_cast<double>(end - start);
      head.weights() -= config.learning_rate *
                        (scale * grad_w + config.l2 * head.weights());
      head.bias() -= config.learning_rate * scale * grad_b;
      if (!head.AllFinite()) {
        return absl::AbortedError(
            absl::StrCat("divergence: non-finite parameters at step ", step));
      }
    }
  }
  return head;
}

double Accuracy(const LinearHead& head, const TrainingData& data) {
  if (data.size() == 0) return 0.0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    Eigen::Index argmax;
    head.Logits(data.features.row(i).transpose()).maxCoeff(&argmax);
    if (argmax == data.labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

std::string EncodeHead(const LinearHead& head) {
  ByteWriter out;
  out.PutBytes(kHeadMagic);
  out.Put<uint32_t>(kHeadVersion);
  out.Put<uint32_t>(head.dim());
  out.Put<uint32_t>(head.num_classes());
  for (int c = 0; c < head.num_classes(); ++c) {
    for (int j = 0; j < head.dim(); ++j) out.Put<double>(head.weights()(c, j));
  }
  for (int c = 0; c < head.num_classes(); ++c) out.Put<double>(head.bias()[c]);
  out.Put<uint64_t>(head.config_hash());
  return out.Release();
}

absl::StatusOr<LinearHead> DecodeHead(std::string_view bytes) {
  ByteReader in(bytes);
  ASSIGN_OR_RETURN(std::string_view magic, in.GetBytes(4));
  if (magic != kHeadMagic) return absl::DataLossError("not a head (bad magic)");
  ASSIGN_OR_RETURN(uint32_t version, in.Get<uint32_t>());
  if (version != kHeadVersion) {
    return absl::DataLossError(
        absl::StrCat("unsupported head version ", version));
  }
  ASSIGN_OR_RETURN(uint32_t dim, in.Get<uint32_t>());
  ASSIGN_OR_RETURN(uint32_t num_classes, in.Get<uint32_t>());
  const uint64_t expected =
      (static_cast<uint64_t>(dim) + 1) * num_classes * sizeof(double) +
      sizeof(uint64_t);
  if (dim == 0 || num_classes == 0 || in.remaining() != expected) {
    return absl::DataLossError("head payload size mismatch");
  }
  LinearHead head(static_cast<int>(dim), static_cast<int>(num_classes));
  for (uint32_t c = 0; c < num_classes; ++c) {
    for (uint32_t j = 0; j < dim; ++j) {
      ASSIGN_OR_RETURN(head.weights()(c, j), in.Get<double>());
    }
  }
  for (uint32_t c = 0; c < num_classes; ++c) {
    ASSIGN_OR_RETURN(head.bias()[c], in.Get<double>());
  }
  ASSIGN_OR_RETURN(uint64_t hash, in.Get<uint64_t>());
  head.set_meta(hash, 0);
  if (!head.AllFinite()) return absl::DataLossError("non-finite head entry");
  return head;
}

absl::Status SaveHead(const LinearHead& head, const std::string& path) {
  return WriteFile(path, EncodeHead(head));
}

absl::StatusOr<LinearHead> LoadHead(const std::string& path) {
  ASSIGN_OR_RETURN(std::string bytes, ReadFile(path));
  return DecodeHead(bytes);
}

}  // namespace miaudit
