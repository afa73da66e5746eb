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

#include "per/replay_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace per {

void validate(const Transition& t) {
  if (!std::isfinite(t.reward)) {
    throw std::invalid_argument("transition reward must be finite");
  }
  if (!(t.discount >= 0.0 && t.discount <= 1.0)) {
    throw std::invalid_argument("transition discount must lie in [0, 1]");
  }
  if (t.is_terminal && t.discount != 0.0) {
    throw std::invalid_argument("terminal transition must have zero discount");
  }
}

void SamplerConfig::validate() const {
  if (capacity == 0) throw std::invalid_argument("capacity must be positive");
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  if (minibatch == 0) throw std::invalid_argument("minibatch must be positive");
}

std::vector<double> sampling_probabilities(std::span<const double> priorities,
                                           double alpha) {
  if (priorities.empty()) {
    throw std::invalid_argument("sampling_probabilities: empty priority list");
  }
  if (!(alpha >= 0.0)) {
    throw std::invalid_argument("sampling_probabilities: alpha must be >= 0");
  }
  std::vector<double> out(priorities.size());
  for (std::size_t i = 0; i < priorities.size(); ++i) {
    const double p = priorities[i];
    if (!(p > 0.0) || !std::isfinite(p)) {
      throw std::invalid_argument("sampling_probabilities: priority " +
                                  std::to_string(i) + " is not positive");
    }
    out[i] = alpha == 0.0 ? 1.0 : std::pow(p, alpha);
  }
  const double total = std::accumulate(out.begin(), out.end(), 0.0);
  for (double& x : out) x /= total;
  // One renormalization pass tightens the sum to within a few ulps.
  const double again = std::accumulate(out.begin(), out.end(), 0.0);
  for (double& x : out) x /= again;
  return out;
}

double clip_td_error(double td) { return std::clamp(td, -1.0, 1.0); }

TransitionRing::TransitionRing(std::size_t capacity) : items_(capacity) {
  if (capacity == 0) {
    throw std::invalid_argument("replay capacity must be positive");
  }
}

TransitionRing::StoreResult TransitionRing::store(const Transition& t) {
  validate(t);
  const SlotId slot = cursor_;
  const bool evicted = size_ == items_.size();

  Item item;
  item.transition = t;
  item.serial = next_serial_++;
  if (last_slot_ && !items_[*last_slot_].transition.is_terminal &&
      *last_slot_ != slot) {
    item.predecessor = *last_slot_;
    item.predecessor_serial = items_[*last_slot_].serial;
  }
  items_[slot] = item;

  last_slot_ = slot;
  cursor_ = (cursor_ + 1) % items_.size();
  if (!evicted) ++size_;
  return {slot, evicted};
}

const Transition& TransitionRing::at(SlotId slot) const {
  if (!occupied(slot)) {
    throw std::out_of_range("slot " + std::to_string(slot) + " is not occupied");
  }
  return items_[slot].transition;
}

std::optional<SlotId> TransitionRing::predecessor(SlotId slot) const {
  const Item& item = items_.at(slot);
  if (!occupied(slot) || !item.predecessor) return std::nullopt;
  if (items_[*item.predecessor].serial != item.predecessor_serial) {
    return std::nullopt;  // overwritten by the sliding window
  }
  return item.predecessor;
}

void ReplayMemory::require_occupied(SlotId slot) const {
  if (!ring_.occupied(slot)) {
    throw std::out_of_range("slot " + std::to_string(slot) + " is not occupied");
  }
}

}  // namespace per
