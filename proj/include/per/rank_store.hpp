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

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "per/replay_core.hpp"

namespace per {

/**
 * Array-based binary max-heap keyed on |delta|, also read as an approximately
 * sorted array: heap position + 1 stands in for the rank of a slot.
 *
 * The order is total: larger key first, equal keys by smaller slot id. Every
 * `resort_interval` key updates the array is fully sorted, which restores the
 * exact ranking (a sorted array is also a valid heap). An interval of zero
 * disables re-sorting.
 */
class RankStore {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  explicit RankStore(std::uint64_t resort_interval = 1'000'000);

  /// Throws std::invalid_argument if the slot is already present.
  void insert(SlotId slot, double key);
  /// Throws std::out_of_range if the slot is absent.
  void erase(SlotId slot);
  /// Replaces the key and restores the heap property. Counts toward the
  /// periodic re-sort. Throws std::out_of_range if the slot is absent.
  void update_key(SlotId slot, double key);
  void full_sort();

  bool contains(SlotId slot) const;
  double key(SlotId slot) const;
  /// Zero-based heap position of `slot`.
  std::size_t position(SlotId slot) const;
  SlotId slot_at(std::size_t position) const { return heap_.at(position).slot; }
  double key_at(std::size_t position) const { return heap_.at(position).key; }

  SlotId top() const;
  double top_key() const;
  std::size_t size() const { return heap_.size(); }
  bool empty() const { return heap_.empty(); }

  std::uint64_t steps_since_sort() const { return steps_since_sort_; }
  std::uint64_t resort_interval() const { return resort_interval_; }
  void set_resort_interval(std::uint64_t interval) { resort_interval_ = interval; }

  // Structural checks for tests and validation.
  bool heap_property_holds() const;
  bool inverse_consistent() const;
  bool sorted() const;

 private:
  struct Entry {
    double key;
    SlotId slot;
  };

  static bool before(const Entry& a, const Entry& b) {
    return a.key > b.key || (a.key == b.key && a.slot < b.slot);
  }

  void place(std::size_t position, const Entry& entry);
  void sift_up(std::size_t position);
  void sift_down(std::size_t position);
  void restore(std::size_t position);

  std::vector<Entry> heap_;
  std::vector<std::size_t> slot_to_heap_;
  std::uint64_t steps_since_sort_ = 0;
  std::uint64_t resort_interval_;
};

}  // namespace per
