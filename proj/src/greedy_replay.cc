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

#include "per/greedy_replay.hpp"

#include <cmath>
#include <stdexcept>

namespace per {

GreedyReplay::GreedyReplay(const SamplerConfig& config)
    : ReplayMemory(config.capacity), config_(config), heap_(0) {
  config_.validate();
}

SlotId GreedyReplay::store(const Transition& t) {
  validate(t);
  if (ring_.full()) heap_.erase(ring_.write_cursor());
  const double key = max_priority();
  const SlotId slot = ring_.store(t).slot;
  heap_.insert(slot, key);
  return slot;
}

void GreedyReplay::update_priority(SlotId slot, double td_error) {
  require_occupied(slot);
  const double td = config_.clip_td ? clip_td_error(td_error) : td_error;
  heap_.update_key(slot, std::abs(td));
}

double GreedyReplay::priority(SlotId slot) const {
  require_occupied(slot);
  return heap_.key(slot);
}

void GreedyReplay::set_priority(SlotId slot, double priority) {
  require_occupied(slot);
  if (!(priority >= 0.0)) throw std::invalid_argument("greedy key must be >= 0");
  heap_.update_key(slot, priority);
}

double GreedyReplay::max_priority() const {
  return heap_.empty() ? 1.0 : heap_.top_key();
}

SlotId GreedyReplay::select() const {
  if (heap_.empty()) throw std::logic_error("cannot select from an empty memory");
  return heap_.top();
}

SlotId greedy_select(std::span<const double> stored_abs_td) {
  if (stored_abs_td.empty()) throw std::invalid_argument("greedy_select: empty memory");
  SlotId best = 0;
  for (SlotId i = 1; i < stored_abs_td.size(); ++i) {
    if (stored_abs_td[i] > stored_abs_td[best]) best = i;
  }
  return best;
}

}  // namespace per
