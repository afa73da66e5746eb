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

#include <span>

#include "per/rank_store.hpp"
#include "per/replay_core.hpp"

namespace per {

/// Greedy TD-error prioritization: always replays the transition with the
/// largest stored |delta| (ties to the lowest slot id), kept in a binary heap
/// so selection is O(1) and refreshing a priority is O(log N).
class GreedyReplay final : public ReplayMemory {
 public:
  explicit GreedyReplay(const SamplerConfig& config);

  SlotId store(const Transition& t) override;
  void update_priority(SlotId slot, double td_error) override;
  double priority(SlotId slot) const override;
  void set_priority(SlotId slot, double priority) override;
  double max_priority() const override;

  /// Throws std::logic_error on an empty memory.
  SlotId select() const;

 private:
  SamplerConfig config_;
  RankStore heap_;
};

/// Linear-scan argmax over stored |delta| values; ties to the lowest index.
/// Throws std::invalid_argument on an empty span.
SlotId greedy_select(std::span<const double> stored_abs_td);

}  // namespace per
