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

#include "per/replay_core.hpp"
#include "per/sum_tree.hpp"

namespace per {

/// Uniform replay: every resident transition is equally likely.
/// Priorities are tracked only so the store/update contract holds.
class UniformReplay final : public StochasticReplay {
 public:
  explicit UniformReplay(const SamplerConfig& config);

  SlotId store(const Transition& t) override;
  void update_priority(SlotId slot, double td_error) override;
  double priority(SlotId slot) const override;
  void set_priority(SlotId slot, double priority) override;
  double max_priority() const override;

  SampledBatch sample(std::size_t k, Rng& rng) override;

 private:
  SamplerConfig config_;
  std::vector<double> priorities_;
  MaxTree max_tree_;
};

}  // namespace per
