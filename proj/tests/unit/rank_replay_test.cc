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


#include "per/rank_replay.hpp"

#include <gtest/gtest.h>

#include <map>
#include <memory>
#include <random>

#include "per/greedy_replay.hpp"

using namespace per;

namespace {

Transition make_transition(int i) { return {i, 1, 0.0, 0.5, i + 1, false}; }

std::unique_ptr<RankReplay> filled(const std::vector<double>& keys, double alpha, std::uint64_t resort = 1) {
  SamplerConfig c;
  c.capacity = keys.size();
  c.alpha = alpha;
  c.resort_interval = resort;
  auto replay = std::make_unique<RankReplay>(c);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    replay->store(make_transition(static_cast<int>(i)));
    replay->set_priority(i, keys[i]);
  }
  return replay;
}

}  // namespace

TEST(RankReplayTest, FullBatchReturnsRanksInOrder) {
  auto replay = filled({0.3, 0.9, 0.1, 0.5}, 0.7);
  Rng rng(1);
  const SampledBatch batch = replay->sample(4, rng);
  EXPECT_EQ(batch.indices, (std::vector<SlotId>{1, 3, 0, 2}));
  for (double p : batch.probabilities) EXPECT_DOUBLE_EQ(p, 0.25);
}

TEST(RankReplayTest, TopRankProbabilityUnderTwoSegments) {
  auto replay = filled({0.3, 0.9, 0.1, 0.5}, 1.0);
  Rng rng(2);
  std::map<SlotId, int> first_segment;
  const int draws = 200000;
  for (int i = 0; i < draws; ++i) {
    const SampledBatch batch = replay->sample(2, rng);
    EXPECT_DOUBLE_EQ(batch.probabilities[0], 0.25);
    ++first_segment[batch.indices[0]];
    EXPECT_TRUE(batch.indices[1] == 0 || batch.indices[1] == 2);
  }
  // Rank 1 (slot 1) is half of the first segment, a quarter overall.
  EXPECT_NEAR(first_segment[1] / static_cast<double>(draws), 0.5, 0.005);
  EXPECT_EQ(first_segment[1] + first_segment[3], draws);
}

TEST(RankReplayTest, FewerTransitionsThanBatchCyclesSegments) {
  auto replay = filled({0.2, 0.4, 0.8}, 0.7);
  Rng rng(3);
  const SampledBatch batch = replay->sample(8, rng);
  ASSERT_EQ(batch.size(), 8u);
  const std::vector<SlotId> order = {2, 1, 0};
  for (std::size_t j = 0; j < 8; ++j) EXPECT_EQ(batch.indices[j], order[j % 3]);
}

TEST(RankReplayTest, PartitionReusedWhileSizeIsClose) {
  SamplerConfig c;
  c.capacity = 200;
  c.alpha = 0.7;
  auto replay = std::make_unique<RankReplay>(c);
  Rng rng(4);
  for (int i = 0; i < 100; ++i) replay->store(make_transition(i));
  replay->sample(16, rng);
  EXPECT_EQ(replay->partition_builds(), 1u);
  for (int i = 0; i < 10; ++i) replay->store(make_transition(i));
  replay->sample(16, rng);
  EXPECT_EQ(replay->partition_builds(), 1u);
  replay->store(make_transition(0));
  replay->sample(16, rng);
  EXPECT_EQ(replay->partition_builds(), 2u);
  EXPECT_EQ(replay->partition()->n, 111u);
}

TEST(RankReplayTest, EmptyAndZeroBatch) {
  SamplerConfig c;
  c.capacity = 4;
  auto replay = std::make_unique<RankReplay>(c);
  Rng rng(1);
  EXPECT_THROW(replay->sample(1, rng), std::logic_error);
  replay->store(make_transition(0));
  EXPECT_THROW(replay->sample(0, rng), std::invalid_argument);
}

TEST(RankReplayTest, NewTransitionSharesTheTopKey) {
  SamplerConfig c;
  c.capacity = 4;
  auto replay = std::make_unique<RankReplay>(c);
  for (int i = 0; i < 3; ++i) replay->store(make_transition(i));
  replay->set_priority(0, 0.3);
  replay->set_priority(1, 0.9);
  replay->set_priority(2, 0.1);
  const SlotId slot = replay->store(make_transition(3));
  EXPECT_DOUBLE_EQ(replay->priority(slot), 0.9);
  // Equal keys order by slot id, so the newcomer sits right behind slot 1.
  EXPECT_EQ(replay->rank_of(1), 0u);
  replay->mutable_rank_store().full_sort();
  EXPECT_EQ(replay->rank_of(slot), 1u);
}

TEST(GreedySelectTest, Examples) {
  EXPECT_EQ(greedy_select(std::vector<double>{0.1, 0.9, 0.3}), 1u);
  EXPECT_EQ(greedy_select(std::vector<double>{0.4, 0.4, 0.4}), 0u);
  EXPECT_THROW(greedy_select(std::vector<double>{}), std::invalid_argument);
}

TEST(GreedySelectTest, ScaleInvariance) {
  Rng rng(10);
  std::uniform_real_distribution<double> key(0.0, 1.0);
  std::uniform_real_distribution<double> scale(1e-3, 1e3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> keys(1 + trial % 30);
    for (double& k : keys) k = key(rng);
    const double c = scale(rng);
    std::vector<double> scaled = keys;
    for (double& k : scaled) k *= c;
    EXPECT_EQ(greedy_select(keys), greedy_select(scaled));
  }
}

TEST(GreedyReplayTest, SelectMatchesLinearArgmax) {
  SamplerConfig c;
  c.capacity = 32;
  auto replay = std::make_unique<GreedyReplay>(c);
  Rng rng(5);
  std::uniform_real_distribution<double> td(-1.0, 1.0);
  for (int i = 0; i < 32; ++i) replay->store(make_transition(i));
  for (int step = 0; step < 2000; ++step) {
    std::vector<double> keys(32);
    for (SlotId s = 0; s < 32; ++s) keys[s] = replay->priority(s);
    const SlotId chosen = replay->select();
    ASSERT_EQ(chosen, greedy_select(keys));
    replay->update_priority(chosen, td(rng));
  }
}

TEST(GreedyReplayTest, ReplayRefreshesStoredError) {
  SamplerConfig c;
  c.capacity = 3;
  auto replay = std::make_unique<GreedyReplay>(c);
  for (int i = 0; i < 3; ++i) replay->store(make_transition(i));
  replay->set_priority(0, 0.1);
  replay->set_priority(1, 0.9);
  replay->set_priority(2, 0.3);
  EXPECT_EQ(replay->select(), 1u);
  replay->update_priority(1, -0.05);
  EXPECT_DOUBLE_EQ(replay->priority(1), 0.05);
  EXPECT_EQ(replay->select(), 2u);
}
