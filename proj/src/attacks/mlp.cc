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


#include "miaudit/attacks/mlp.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "miaudit/common/seed.h"

namespace miaudit {
namespace {

double Sigmoid(double t) {
  return t >= 0 ? 1.0 / (1.0 + std::exp(-t)) : std::exp(t) / (1.0 + std::exp(t));
}

double SortedQuantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double h = (v.size() - 1) * q;
  const std::size_t lo = static_cast<std::size_t>(h);
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - lo) * (v[hi] - v[lo]);
}

}  // namespace

double PinballLoss(double residual, double tau) {
  return residual >= 0 ? tau * residual : (tau - 1.0) * residual;
}

absl::StatusOr<Mlp> Mlp::TrainBinary(const RowMatrix& inputs,
                                     const std::vector<int>& labels,
                                     const MlpConfig& config, uint64_t seed) {
  if (labels.size() != static_cast<std::size_t>(inputs.rows())) {
    return absl::InvalidArgumentError("inputs and labels differ in length");
  }
  bool has[2] = {false, false};
  Eigen::MatrixXd targets(inputs.rows(), 1);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 0 && labels[i] != 1) {
      return absl::InvalidArgumentError("binary labels must be 0 or 1");
    }
    has[labels[i]] = true;
    targets(i, 0) = labels[i];
  }
  if (!has[0] || !has[1]) {
    return absl::FailedPreconditionError(
        "attack classifier needs both member and non-member examples");
  }
  return Train(inputs, targets, Loss::kBinary, {}, Eigen::VectorXd::Zero(1),
               config, seed);
}

absl::StatusOr<Mlp> Mlp::TrainQuantile(const RowMatrix& inputs,
                                       const std::vector<double>& targets,
                                       const std::vector<double>& levels,
                                       const MlpConfig& config, uint64_t seed) {
  if (targets.size() != static_cast<std::size_t>(inputs.rows()) ||
      targets.empty()) {
    return absl::InvalidArgumentError("need one target per (non-empty) input");
  }
  if (levels.empty()) return absl::InvalidArgumentError("no quantile levels");
  for (double tau : levels) {
    if (!(tau > 0.0 && tau < 1.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("quantile level ", tau, " outside (0, 1)"));
    }
  }
  const double mean =
      std::accumulate(targets.begin(), targets.end(), 0.0) / targets.size();
  double var = 0.0;
  for (double t : targets) var += (t - mean) * (t - mean);
  const double scale = std::max(std::sqrt(var / targets.size()), 1e-6);

  Eigen::MatrixXd standardized(targets.size(), 1);
  std::vector<double> z(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) {
    z[i] = (targets[i] - mean) / scale;
    standardized(i, 0) = z[i];
  }
  Eigen::VectorXd bias(levels.size());
  for (std::size_t q = 0; q < levels.size(); ++q) {
    bias[q] = SortedQuantile(z, levels[q]);
  }
  auto mlp = Train(inputs, standardized, Loss::kPinball, levels, bias, config,
                   seed);
  if (!mlp.ok()) return mlp.status();
  mlp->out_mean_ = mean;
  mlp->out_scale_ = scale;
  return mlp;
}

absl::StatusOr<Mlp> Mlp::Train(const RowMatrix& inputs,
                               const Eigen::MatrixXd& targets, Loss loss,
                               const std::vector<double>& levels,
                               const Eigen::VectorXd& initial_bias,
                               const MlpConfig& config, uint64_t seed) {
  const int n = static_cast<int>(inputs.rows());
  const int in = static_cast<int>(inputs.cols());
  const int hidden = std::max(config.hidden, 0);
  const int out = static_cast<int>(initial_bias.size());
  if (n == 0) return absl::InvalidArgumentError("no training inputs");
  if (config.epochs < 1 || config.batch_size < 1 ||
      !(config.learning_rate > 0)) {
    return absl::InvalidArgumentError("invalid MLP training settings");
  }

  Mlp mlp;
  mlp.in_mean_ = inputs.colwise().mean().transpose();
  mlp.in_scale_ = Eigen::VectorXd::Ones(in);
  for (int j = 0; j < in; ++j) {
    const double sd = std::sqrt(
        (inputs.col(j).array() - mlp.in_mean_[j]).square().sum() / n);
    if (sd > 1e-12) mlp.in_scale_[j] = sd;
  }

  std::mt19937_64 rng(DeriveSeed(seed, "mlp-init"));
  std::normal_distribution<double> normal(0.0, 1.0);
  mlp.w1_ = Eigen::MatrixXd::Zero(hidden, in);
  mlp.b1_ = Eigen::VectorXd::Zero(hidden);
  mlp.w2_ = Eigen::MatrixXd::Zero(out, hidden);
  mlp.b2_ = initial_bias;
  // He initialisation for the ReLU layer. The quantile head starts at zero
  // so the first predictions are exactly the marginal quantiles.
  const double he1 = std::sqrt(2.0 / std::max(in, 1));
  for (int h = 0; h < hidden; ++h) {
    for (int j = 0; j < in; ++j) mlp.w1_(h, j) = he1 * normal(rng);
  }
  if (loss == Loss::kBinary) {
    // Shrunk so the first member probabilities sit near 1/2.
    const double he2 = std::sqrt(2.0 / std::max(hidden, 1));
    for (int h = 0; h < hidden; ++h) mlp.w2_(0, h) = he2 * normal(rng) * 0.1;
  }

  RowMatrix x(n, in);
  for (int i = 0; i < n; ++i) {
    x.row(i) = mlp.Standardize(inputs.row(i).transpose()).transpose();
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 shuffle(DeriveSeed(seed, "mlp-shuffle"));
  const double lr = config.learning_rate;
  Eigen::MatrixXd gw1(hidden, in), gw2(out, hidden);
  Eigen::VectorXd gb1(hidden), gb2(out);
  int64_t step = 0;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), shuffle);
    for (int start = 0; start < n; start += config.batch_size, ++step) {
      const int end = std::min(n, start + config.batch_size);
      gw1.setZero();
      gw2.setZero();
      gb1.setZero();
      gb2.setZero();
      for (int k = start; k < end; ++k) {
        const int i = order[k];
        const Eigen::VectorXd xi = x.row(i).transpose();
        const Eigen::VectorXd pre = mlp.w1_ * xi + mlp.b1_;
        const Eigen::VectorXd act = pre.cwiseMax(0.0);
        const Eigen::VectorXd o = mlp.w2_ * act + mlp.b2_;
        Eigen::VectorXd delta(out);
        if (loss == Loss::kBinary) {
          delta[0] = Sigmoid(o[0]) - targets(i, 0);
        } else {
          for (int q = 0; q < out; ++q) {
            const double r = targets(i, 0) - o[q];
            delta[q] = r >= 0 ? -levels[q] : 1.0 - levels[q];
          }
        }
        gb2 += delta;
        if (hidden > 0) {
          gw2 += delta * act.transpose();
          Eigen::VectorXd back = mlp.w2_.transpose() * delta;
          for (int h = 0; h < hidden; ++h) {
            if (pre[h] <= 0) back[h] = 0;
          }
          gb1 += back;
          gw1 += back * xi.transpose();
        }
      }
      const double scale = lr / (end - start);
      mlp.w1_ -= scale * gw1;
      mlp.b1_ -= scale * gb1;
      mlp.w2_ -= scale * gw2;
      mlp.b2_ -= scale * gb2;
      if (!mlp.w1_.allFinite() || !mlp.w2_.allFinite() ||
          !mlp.b1_.allFinite() || !mlp.b2_.allFinite()) {
        return absl::AbortedError(
            absl::StrCat("divergence: attack network at step ", step));
      }
    }
  }
  return mlp;
}

Eigen::VectorXd Mlp::Standardize(
    const Eigen::Ref<const Eigen::VectorXd>& x) const {
  return ((x - in_mean_).array() / in_scale_.array()).matrix();
}

Eigen::VectorXd Mlp::Forward(
    const Eigen::Ref<const Eigen::VectorXd>& input) const {
  const Eigen::VectorXd x = Standardize(input);
  Eigen::VectorXd o = b2_;
  if (w1_.rows() > 0) o += w2_ * (w1_ * x + b1_).cwiseMax(0.0);
  return (o.array() * out_scale_ + out_mean_).matrix();
}

double Mlp::MemberProbability(
    const Eigen::Ref<const Eigen::VectorXd>& input) const {
  return Sigmoid(Forward(input)[0]);
}

Eigen::VectorXd Mlp::Quantiles(
    const Eigen::Ref<const Eigen::VectorXd>& input) const {
  Eigen::VectorXd o = Forward(input);
  std::sort(o.data(), o.data() + o.size());
  return o;
}

}  // namespace miaudit
