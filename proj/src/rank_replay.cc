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

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace per {

RankReplay::RankReplay(const SamplerConfig& config)
    : StochasticReplay(config.capacity),
      config_(config),
      store_(config.resort_interval) {
  config_.validate();
}

SlotId RankReplay::store(const Transition& t) {
  validate(t);
  if (ring_.full()) store_.erase(ring_.write_cursor());
  const double key = max_priority();
  const SlotId slot = ring_.store(t).slot;
  store_.insert(slot, key);
  return slot;
}

void RankReplay::update_priority(SlotId slot, double td_error) {
  require_occupied(slot);
  const double td = config_.clip_td ? clip_td_error(td_error) : td_error;
  store_.update_key(slot, std::abs(td));
}

double RankReplay::priority(SlotId slot) const {
  require_occupied(slot);
  return store_.key(slot);
}

void RankReplay::set_priority(SlotId slot, double priority) {
  require_occupied(slot);
  if (!(priority >= 0.0)) throw std::invalid_argument("rank key must be >= 0");
  store_.update_key(slot, priority);
}

double RankReplay::max_priority() const {
  return store_.empty() ? 1.0 : store_.top_key();
}

void RankReplay::set_alpha(double alpha) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
  config_.alpha = alpha;
}

const Partition& RankReplay::partition_for(std::size_t size, std::size_t k) {
  if (!partition_ || !partition_->reusable_for(size, config_.alpha, k)) {
    partition_ = build_partition(size, config_.alpha, k);
    ++partition_builds_;
  }
  return *partition_;
}

SampledBatch RankReplay::sample(std::size_t k, Rng& rng) {
  if (k == 0) throw std::invalid_argument("sample: k must be positive");
  const std::size_t n = size();
  if (n == 0) throw std::logic_error("cannot sample an empty memory");

  const std::size_t segments = std::min(k, n);
  const std::vector<std::size_t> bounds = partition_for(n, segments).scaled_boundaries(n);

  SampledBatch batch;
  batch.indices.reserve(k);
  batch.probabilities.reserve(k);
  batch.transitions.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t segment = j % segments;
    const std::size_t lo = bounds[segment];
    const std::size_t count = bounds[segment + 1] - lo;
    std::uniform_int_distribution<std::size_t> within(0, count - 1);
    const SlotId slot = store_.slot_at(lo + within(rng));
    batch.indices.push_back(slot);
    batch.probabilities.push_back(1.0 / (static_cast<double>(segments) *
                                         static_cast<double>(count)));
    batch.transitions.push_back(ring_.at(slot));
  }
  return batch;
}

}  // namespace per
