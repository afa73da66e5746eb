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


#include "per/rank_store.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <vector>

using namespace per;

namespace {

std::vector<double> keys_in_order(const RankStore& store) {
  std::vector<double> keys;
  for (std::size_t i = 0; i < store.size(); ++i) keys.push_back(store.key_at(i));
  return keys;
}

}  // namespace

TEST(RankStoreTest, RaisedKeyBecomesRoot) {
  RankStore store(0);
  for (SlotId s = 0; s < 7; ++s) store.insert(s, 1.0 + static_cast<double>(s));
  EXPECT_EQ(store.top(), 6u);
  store.update_key(2, 100.0);
  EXPECT_EQ(store.top(), 2u);
  EXPECT_EQ(store.position(2), 0u);
  EXPECT_TRUE(store.heap_property_holds());
}

TEST(RankStoreTest, EqualKeyUpdateKeepsPosition) {
  RankStore store(0);
  for (SlotId s = 0; s < 9; ++s) store.insert(s, static_cast<double>((s * 5) % 9));
  for (SlotId s = 0; s < 9; ++s) {
    const std::size_t before = store.position(s);
    store.update_key(s, store.key(s));
    EXPECT_EQ(store.position(s), before);
  }
}

TEST(RankStoreTest, TiesGoToTheSmallerSlot) {
  RankStore store(0);
  store.insert(3, 1.0);
  store.insert(1, 1.0);
  store.insert(2, 1.0);
  EXPECT_EQ(store.top(), 1u);
  store.full_sort();
  EXPECT_EQ(store.slot_at(0), 1u);
  EXPECT_EQ(store.slot_at(1), 2u);
  EXPECT_EQ(store.slot_at(2), 3u);
}

TEST(RankStoreTest, Errors) {
  RankStore store;
  EXPECT_THROW(store.top(), std::logic_error);
  store.insert(0, 1.0);
  EXPECT_THROW(store.insert(0, 2.0), std::invalid_argument);
  EXPECT_THROW(store.update_key(5, 1.0), std::out_of_range);
  EXPECT_THROW(store.erase(5), std::out_of_range);
  EXPECT_THROW(store.key(1), std::out_of_range);
}

TEST(RankStoreTest, FullSortFixtures) {
  RankStore sorted_input(0);
  for (SlotId s = 0; s < 10; ++s) sorted_input.insert(s, 10.0 - static_cast<double>(s));
  const auto before = keys_in_order(sorted_input);
  sorted_input.full_sort();
  EXPECT_EQ(keys_in_order(sorted_input), before);

  RankStore reversed(0);
  for (SlotId s = 0; s < 10; ++s) reversed.insert(s, static_cast<double>(s));
  reversed.full_sort();
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(reversed.slot_at(i), 9 - i);
}

TEST(RankStoreTest, FullSortMatchesComparisonSort) {
  RankStore store(0);
  Rng rng(17);
  std::uniform_real_distribution<double> key(0.0, 1.0);
  std::vector<double> keys;
  for (SlotId s = 0; s < 1000; ++s) {
    keys.push_back(key(rng));
    store.insert(s, keys.back());
  }
  store.full_sort();
  std::sort(keys.begin(), keys.end(), std::greater<>());
  EXPECT_EQ(keys_in_order(store), keys);
  EXPECT_TRUE(store.sorted());
  EXPECT_TRUE(store.inverse_consistent());
}

TEST(RankStoreTest, InvariantsUnderRandomOperations) {
  RankStore store(0);
  Rng rng(3);
  std::uniform_real_distribution<double> key(0.0, 5.0);
  std::uniform_int_distribution<SlotId> slot(0, 63);
  std::uniform_int_distribution<int> op(0, 2);
  for (int i = 0; i < 20000; ++i) {
    const SlotId s = slot(rng);
    switch (op(rng)) {
      case 0:
        if (!store.contains(s)) store.insert(s, key(rng));
        break;
      case 1:
        if (store.contains(s)) store.erase(s);
        break;
      default:
        if (store.contains(s)) store.update_key(s, key(rng));
    }
    ASSERT_TRUE(store.heap_property_holds());
    ASSERT_TRUE(store.inverse_consistent());
  }
}

TEST(RankStoreTest, PeriodicResort) {
  RankStore store(5);
  Rng rng(8);
  std::uniform_real_distribution<double> key(0.0, 1.0);
  for (SlotId s = 0; s < 50; ++s) store.insert(s, key(rng));
  for (int i = 1; i <= 4; ++i) {
    store.update_key(static_cast<SlotId>(i), key(rng));
    EXPECT_EQ(store.steps_since_sort(), static_cast<std::uint64_t>(i));
  }
  store.update_key(7, key(rng));
  EXPECT_EQ(store.steps_since_sort(), 0u);
  EXPECT_TRUE(store.sorted());
}

TEST(RankStoreTest, ResortEveryStepGivesExactRanks) {
  RankStore store(1);
  Rng rng(12);
  std::uniform_real_distribution<double> key(0.0, 1.0);
  for (SlotId s = 0; s < 40; ++s) store.insert(s, key(rng));
  store.full_sort();
  for (int i = 0; i < 500; ++i) {
    store.update_key(static_cast<SlotId>(i % 40), key(rng));
    ASSERT_TRUE(store.sorted());
  }
}

TEST(RankStoreTest, ZeroIntervalNeverResorts) {
  RankStore store(0);
  for (SlotId s = 0; s < 8; ++s) store.insert(s, static_cast<double>(s));
  for (int i = 0; i < 100; ++i) store.update_key(0, static_cast<double>(i));
  EXPECT_EQ(store.steps_since_sort(), 100u);
}
