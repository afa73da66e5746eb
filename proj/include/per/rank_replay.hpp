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

#include <optional>

#include "per/partition.hpp"
#include "per/rank_store.hpp"
#include "per/replay_core.hpp"

namespace per {

/**
 * Rank-based prioritization, p = 1/rank(i) with ranks read from a heap over
 * |delta|. A minibatch of k draws exactly one transition from each of k
 * precomputed equal-probability segments, uniformly within the segment.
 *
 * Reported probabilities are those of the segment approximation,
 * (1/k) * (1/segment size), which is what the importance weights correct for.
 */
class RankReplay final : public StochasticReplay {
 public:
  explicit RankReplay(const SamplerConfig& config);

  SlotId store(const Transition& t) override;
  void update_priority(SlotId slot, double td_error) override;
  /// The |delta| sort key, not 1/rank.
  double priority(SlotId slot) const override;
  void set_priority(SlotId slot, double priority) override;
  double max_priority() const override;

  /// k draws, one per segment. With fewer than k resident transitions the
  /// partition has one segment per transition and is cycled until k draws
  /// have been made.
  SampledBatch sample(std::size_t k, Rng& rng) override;

  /// Zero-based rank proxy of a slot (its heap position).
  std::size_t rank_of(SlotId slot) const { return store_.position(slot); }
  double alpha() const { return config_.alpha; }
  void set_alpha(double alpha);

  /// The partition used for the most recent sample, if any.
  const std::optional<Partition>& partition() const { return partition_; }
  std::size_t partition_builds() const { return partition_builds_; }

  const RankStore& rank_store() const { return store_; }
  RankStore& mutable_rank_store() { return store_; }

 private:
  const Partition& partition_for(std::size_t size, std::size_t k);

  SamplerConfig config_;
  RankStore store_;
  std::optional<Partition> partition_;
  std::size_t partition_builds_ = 0;
};

}  // namespace per
