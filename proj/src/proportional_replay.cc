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

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace per {

ProportionalReplay::ProportionalReplay(const SamplerConfig& config)
    : StochasticReplay(config.capacity),
      config_(config),
      tree_(config.capacity),
      priorities_(config.capacity, 0.0),
      max_tree_(config.capacity) {
  config_.validate();
}

SlotId ProportionalReplay::store(const Transition& t) {
  validate(t);
  if (ring_.full()) {
    // The oldest transition leaves every index structure before the
    // insertion priority is read.
    const SlotId evicted = ring_.write_cursor();
    priorities_[evicted] = 0.0;
    tree_.set_leaf(evicted, 0.0);
    max_tree_.set_leaf(evicted, 0.0);
  }
  const double p = max_priority();
  const SlotId slot = ring_.store(t).slot;
  write(slot, p);
  return slot;
}

void ProportionalReplay::update_priority(SlotId slot, double td_error) {
  require_occupied(slot);
  const double td = config_.clip_td ? clip_td_error(td_error) : td_error;
  set_priority(slot, std::abs(td) + config_.epsilon);
}

double ProportionalReplay::priority(SlotId slot) const {
  require_occupied(slot);
  return priorities_[slot];
}

void ProportionalReplay::set_priority(SlotId slot, double priority) {
  require_occupied(slot);
  if (!std::isfinite(priority)) {
    throw std::invalid_argument("priority must be finite");
  }
  const double p = std::max(priority, config_.epsilon);
  write(slot, p);
}

double ProportionalReplay::max_priority() const {
  return size() == 0 ? 1.0 : max_tree_.max();
}

void ProportionalReplay::write(SlotId slot, double priority) {
  priorities_[slot] = priority;
  max_tree_.set_leaf(slot, priority);
  tree_.set_leaf(slot, config_.alpha == 0.0 ? 1.0 : std::pow(priority, config_.alpha));
}

SampledBatch ProportionalReplay::sample(std::size_t k, Rng& rng) {
  if (size() == 0) throw std::logic_error("cannot sample an empty memory");
  SumTree::Draw draw = tree_.sample_stratified(k, rng);
  SampledBatch batch;
  batch.indices = std::move(draw.leaves);
  batch.probabilities = std::move(draw.probabilities);
  batch.transitions.reserve(k);
  for (SlotId slot : batch.indices) batch.transitions.push_back(ring_.at(slot));
  return batch;
}

void ProportionalReplay::set_alpha(double alpha) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
  if (alpha == config_.alpha) return;
  config_.alpha = alpha;
  for (SlotId slot = 0; slot < size(); ++slot) write(slot, priorities_[slot]);
}

}  // namespace per
