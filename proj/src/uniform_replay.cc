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

#include "per/uniform_replay.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace per {

UniformReplay::UniformReplay(const SamplerConfig& config)
    : StochasticReplay(config.capacity),
      config_(config),
      priorities_(config.capacity, 0.0),
      max_tree_(config.capacity) {
  config_.validate();
}

SlotId UniformReplay::store(const Transition& t) {
  validate(t);
  if (ring_.full()) max_tree_.set_leaf(ring_.write_cursor(), 0.0);
  const double p = max_priority();
  const SlotId slot = ring_.store(t).slot;
  priorities_[slot] = p;
  max_tree_.set_leaf(slot, p);
  return slot;
}

void UniformReplay::update_priority(SlotId slot, double td_error) {
  require_occupied(slot);
  const double td = config_.clip_td ? clip_td_error(td_error) : td_error;
  set_priority(slot, std::abs(td) + config_.epsilon);
}

double UniformReplay::priority(SlotId slot) const {
  require_occupied(slot);
  return priorities_[slot];
}

void UniformReplay::set_priority(SlotId slot, double priority) {
  require_occupied(slot);
  priorities_[slot] = std::max(priority, config_.epsilon);
  max_tree_.set_leaf(slot, priorities_[slot]);
}

double UniformReplay::max_priority() const {
  return size() == 0 ? 1.0 : max_tree_.max();
}

SampledBatch UniformReplay::sample(std::size_t k, Rng& rng) {
  if (size() == 0) throw std::logic_error("cannot sample an empty memory");
  std::uniform_int_distribution<SlotId> pick(0, size() - 1);
  const double prob = 1.0 / static_cast<double>(size());
  SampledBatch batch;
  batch.indices.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    const SlotId slot = pick(rng);
    batch.indices.push_back(slot);
    batch.probabilities.push_back(prob);
    batch.transitions.push_back(ring_.at(slot));
  }
  return batch;
}

}  // namespace per
