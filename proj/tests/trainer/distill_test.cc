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


#include <cmath>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "miaudit/data/synth.h"
#include "miaudit/trainer/distill.h"

namespace miaudit {
namespace {

FeatureDataset Store() {
  SynthSpec spec;
  spec.num_classes = 4;
  spec.dim = 6;
  spec.per_class = 100;
  spec.separation = 2.5;
  spec.seed = 17;
  return *SynthGaussian(spec);
}

std::vector<SampleId> Slice(std::size_t begin, std::size_t end, std::size_t step = 1) {
  std::vector<SampleId> ids;
  for (std::size_t i = begin; i < end; i += step) ids.push_back(i);
  return ids;
}

TEST(DistillTest, UniformTeacher) {
  const FeatureDataset ds = Store();
  LinearHead teacher(ds.dim(), ds.num_classes());
  auto result = Distill(teacher, ds, Slice(0, 400, 3), Slice(1, 400, 7), 5,
                        TrainConfig{10, 32, 1e-2, 0.0}, 1);
  ASSERT_TRUE(result.ok());
  EXPECT_NEAR(result->epoch_kl[0], 0.0, 1e-12);
  for (const LossTrajectory& t : result->trajectories) {
    for (double loss : t) EXPECT_NEAR(loss, std::log(4.0), 1e-12);
  }
}

TEST(DistillTest, TrajectoryLength) {
  const FeatureDataset ds = Store();
  auto teacher = TrainHead(Gather(ds, Slice(0, 400, 2)), TrainConfig{20, 32, 1e-2, 0}, 1);
  for (int epochs : {1, 3, 10}) {
    auto result = Distill(*teacher, ds, Slice(1, 400, 4), Slice(0, 40), epochs,
                          TrainConfig{10, 32, 1e-2, 0.0}, 2);
    ASSERT_TRUE(result.ok());
    ASSERT_EQ(result->trajectories.size(), 40u);
    for (const LossTrajectory& t : result->trajectories) {
      ASSERT_EQ(t.size(), static_cast<std::size_t>(epochs + 1));
      for (double loss : t) {
        EXPECT_TRUE(std::isfinite(loss));
        EXPECT_GE(loss, 0.0);
      }
    }
    EXPECT_EQ(result->probe_ids, Slice(0, 40));
  }
}

TEST(DistillTest, KlNonincreasingWithSlack) {
  const FeatureDataset ds = Store();
  auto teacher = TrainHead(Gather(ds, Slice(0, 400, 2)), TrainConfig{50, 16, 1e-2, 0}, 1);
  auto result = Distill(*teacher, ds, Slice(1, 400, 2), Slice(0, 10), 20,
                        TrainConfig{10, 16, 1e-2, 0.0}, 5);
  ASSERT_TRUE(result.ok());
  for (std::size_t e = 1; e < result->epoch_kl.size(); ++e) {
    EXPECT_LE(result->epoch_kl[e], result->epoch_kl[e - 1] * 1.05);
  }
  EXPECT_LT(result->epoch_kl.back(), result->epoch_kl.front());
}

TEST(DistillTest, EmptyDistillSetIsConfigurationError) {
  const FeatureDataset ds = Store();
  LinearHead teacher(ds.dim(), ds.num_classes());
  auto result = Distill(teacher, ds, {}, Slice(0, 3), 2, TrainConfig{}, 1);
  EXPECT_EQ(result.status().code(), absl::StatusCode::kFailedPrecondition);
}

TEST(DistillTest, Deterministic) {
  const FeatureDataset ds = Store();
  auto teacher = TrainHead(Gather(ds, Slice(0, 400, 2)), TrainConfig{20, 32, 1e-2, 0}, 1);
  auto a = Distill(*teacher, ds, Slice(1, 400, 4), Slice(0, 20), 4, TrainConfig{}, 8);
  auto b = Distill(*teacher, ds, Slice(1, 400, 4), Slice(0, 20), 4, TrainConfig{}, 8);
  EXPECT_EQ(a->trajectories, b->trajectories);
  EXPECT_EQ(EncodeHead(a->student), EncodeHead(b->student));
}

}  // namespace
}  // namespace miaudit
