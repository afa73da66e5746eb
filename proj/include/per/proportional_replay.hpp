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

#include <vector>

#include "per/replay_core.hpp"
#include "per/sum_tree.hpp"

namespace per {

/// Proportional prioritization, p = |delta| + epsilon, backed by a sum-tree.
/// Leaves hold p^alpha so the root is the normalizer of the sampling
/// distribution; changing alpha rewrites every leaf.
class ProportionalReplay final : public StochasticReplay {
 public:
  explicit ProportionalReplay(const SamplerConfig& config);

  SlotId store(const Transition& t) override;
  void update_priority(SlotId slot, double td_error) override;
  double priority(SlotId slot) const override;
  void set_priority(SlotId slot, double priority) override;
  double max_priority() const override;

  SampledBatch sample(std::size_t k, Rng& rng) override;

  double alpha() const { return config_.alpha; }
  void set_alpha(double alpha);
  /// Recomputes internal sums from the leaves, discarding accumulated drift.
  void rebuild() { tree_.rebuild(); }

  const SumTree& tree() const { return tree_; }
  SumTree& mutable_tree() { return tree_; }

 private:
  void write(SlotId slot, double priority);

  SamplerConfig config_;
  SumTree tree_;
  std::vector<double> priorities_;
  MaxTree max_tree_;
};

}  // namespace per
