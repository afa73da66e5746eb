// Copyright 2026 The prioritized-replay Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "per/proportional_replay.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <random>

using namespace per;

namespace {

Transition make_transition(int i) { return {i, 0, 0.0, 0.5, i + 1, false}; }

std::unique_ptr<ProportionalReplay> filled(const std::vector<double>& priorities, double alpha) {
  SamplerConfig c;
  c.capacity = priorities.size();
  c.alpha = alpha;
  auto replay = std::make_unique<ProportionalReplay>(c);
  for (std::size_t i = 0; i < priorities.size(); ++i) {
    replay->store(make_transition(static_cast<int>(i)));
    replay->set_priority(i, priorities[i]);
  }
  return replay;
}

}  // namespace

TEST(ProportionalReplayTest, LeavesHoldPriorityToTheAlpha) {
  auto replay = filled({0.5, 2.0, 1.0}, 0.6);
  EXPECT_DOUBLE_EQ(replay->tree().leaf(1), std::pow(2.0, 0.6));
  EXPECT_DOUBLE_EQ(replay->priority(1), 2.0);
}

TEST(ProportionalReplayTest, SampledProbabilitiesMatchFormula) {
  const std::vector<double> p = {0.5, 2.0, 1.0, 3.0};
  auto replay = filled(p, 0.7);
  const auto exact = sampling_probabilities(p, 0.7);
  Rng rng(4);
  const SampledBatch batch = replay->sample(8, rng);
  ASSERT_EQ(batch.size(), 8u);
  for (std::size_t j = 0; j < batch.size(); ++j) {
    EXPECT_NEAR(batch.probabilities[j], exact[batch.indices[j]], 1e-12);
    EXPECT_EQ(batch.transitions[j], replay->transition(batch.indices[j]));
  }
}

TEST(ProportionalReplayTest, AlphaZeroSamplesUniformly) {
  auto replay = filled({0.01, 5.0, 1.0, 100.0}, 0.0);
  Rng rng(6);
  for (int i = 0; i < 20; ++i) {
    for (double prob : replay->sample(4, rng).probabilities) EXPECT_DOUBLE_EQ(prob, 0.25);
  }
}

TEST(ProportionalReplayTest, SetAlphaRewritesLeaves) {
  auto replay = filled({0.5, 2.0}, 1.0);
  replay->set_alpha(0.5);
  EXPECT_DOUBLE_EQ(replay->tree().leaf(1), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(replay->tree().total(), std::sqrt(0.5) + std::sqrt(2.0));
  EXPECT_THROW(replay->set_alpha(-1.0), std::invalid_argument);
}

TEST(ProportionalReplayTest, EvictionZeroesTheLeafFirst) {
  auto replay = filled({4.0, 1.0}, 1.0);
  const SlotId slot = replay->store(make_transition(9));
  EXPECT_EQ(slot, 0u);
  EXPECT_DOUBLE_EQ(replay->priority(0), 1.0);
  EXPECT_DOUBLE_EQ(replay->tree().total(), 2.0);
}

TEST(ProportionalReplayTest, SampleBeforeFullUsesOccupiedMassOnly) {
  SamplerConfig c;
  c.capacity = 16;
  auto replay = std::make_unique<ProportionalReplay>(c);
  replay->store(make_transition(0));
  replay->store(make_transition(1));
  Rng rng(1);
  const SampledBatch batch = replay->sample(16, rng);
  for (SlotId slot : batch.indices) EXPECT_LT(slot, 2u);
}
