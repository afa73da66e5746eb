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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace per {

RankStore::RankStore(std::uint64_t resort_interval)
    : resort_interval_(resort_interval) {}

void RankStore::place(std::size_t position, const Entry& entry) {
  heap_[position] = entry;
  slot_to_heap_[entry.slot] = position;
}

void RankStore::sift_up(std::size_t position) {
  const Entry entry = heap_[position];
  while (position > 0) {
    const std::size_t parent = (position - 1) / 2;
    if (!before(entry, heap_[parent])) break;
    place(position, heap_[parent]);
    position = parent;
  }
  place(position, entry);
}

void RankStore::sift_down(std::size_t position) {
  const Entry entry = heap_[position];
  const std::size_t n = heap_.size();
  while (true) {
    std::size_t child = 2 * position + 1;
    if (child >= n) break;
    if (child + 1 < n && before(heap_[child + 1], heap_[child])) ++child;
    if (!before(heap_[child], entry)) break;
    place(position, heap_[child]);
    position = child;
  }
  place(position, entry);
}

void RankStore::restore(std::size_t position) {
  if (position > 0 && before(heap_[position], heap_[(position - 1) / 2])) {
    sift_up(position);
  } else {
    sift_down(position);
  }
}

void RankStore::insert(SlotId slot, double key) {
  if (!std::isfinite(key)) throw std::invalid_argument("RankStore key must be finite");
  if (contains(slot)) {
    throw std::invalid_argument("RankStore slot " + std::to_string(slot) +
                                " already present");
  }
  if (slot >= slot_to_heap_.size()) slot_to_heap_.resize(slot + 1, npos);
  heap_.push_back({key, slot});
  slot_to_heap_[slot] = heap_.size() - 1;
  sift_up(heap_.size() - 1);
}

void RankStore::erase(SlotId slot) {
  const std::size_t position = this->position(slot);
  const Entry last = heap_.back();
  heap_.pop_back();
  slot_to_heap_[slot] = npos;
  if (position < heap_.size()) {
    place(position, last);
    restore(position);
  }
}

void RankStore::update_key(SlotId slot, double key) {
  if (!std::isfinite(key)) throw std::invalid_argument("RankStore key must be finite");
  const std::size_t position = this->position(slot);
  heap_[position].key = key;
  restore(position);
  ++steps_since_sort_;
  if (resort_interval_ != 0 && steps_since_sort_ >= resort_interval_) full_sort();
}

void RankStore::full_sort() {
  std::sort(heap_.begin(), heap_.end(), before);
  for (std::size_t i = 0; i < heap_.size(); ++i) slot_to_heap_[heap_[i].slot] = i;
  steps_since_sort_ = 0;
}

bool RankStore::contains(SlotId slot) const {
  return slot < slot_to_heap_.size() && slot_to_heap_[slot] != npos;
}

double RankStore::key(SlotId slot) const { return heap_[position(slot)].key; }

std::size_t RankStore::position(SlotId slot) const {
  if (!contains(slot)) {
    throw std::out_of_range("RankStore slot " + std::to_string(slot) + " absent");
  }
  return slot_to_heap_[slot];
}

SlotId RankStore::top() const {
  if (heap_.empty()) throw std::logic_error("RankStore is empty");
  return heap_.front().slot;
}

double RankStore::top_key() const {
  if (heap_.empty()) throw std::logic_error("RankStore is empty");
  return heap_.front().key;
}

bool RankStore::heap_property_holds() const {
  for (std::size_t i = 1; i < heap_.size(); ++i) {
    if (before(heap_[i], heap_[(i - 1) / 2])) return false;
  }
  return true;
}

bool RankStore::inverse_consistent() const {
  std::size_t present = 0;
  for (std::size_t slot = 0; slot < slot_to_heap_.size(); ++slot) {
    const std::size_t position = slot_to_heap_[slot];
    if (position == npos) continue;
    ++present;
    if (position >= heap_.size() || heap_[position].slot != slot) return false;
  }
  return present == heap_.size();
}

bool RankStore::sorted() const {
  return std::is_sorted(heap_.begin(), heap_.end(), before);
}

}  // namespace per
