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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "per/replay_core.hpp"

namespace per {

/// Linear interpolation of an exponent from `start_value` to `end_value`
/// over `budget` steps, held at `end_value` afterwards.
struct AnnealSchedule {
  double start_value = 0.5;
  double end_value = 1.0;
  std::uint64_t budget = 1;

  double value(std::uint64_t t) const;
};

double anneal(const AnnealSchedule& schedule, std::uint64_t t);

/// Unnormalized importance weight (1 / (n * P))^beta.
double raw_is_weight(double probability, std::size_t n, double beta);

/// Importance weights for a sampled batch, divided by the batch maximum so
/// the largest weight is exactly 1. Throws std::invalid_argument on an
/// empty batch, a probability outside (0, 1], n == 0 or beta < 0.
std::vector<double> is_weights(std::span<const double> probabilities, std::size_t n,
                               double beta);

struct PriorityTransformOptions {
  bool predecessor_boost = false;
  // Priority subtracted per global step; 0 disables the staleness bonus.
  double staleness_coefficient = 0.0;
  double epsilon = 1e-6;
};

/// Priority of a just-replayed transition: |delta| + epsilon, less the
/// staleness term `coefficient * global_step`, floored at epsilon.
double apply_priority_transforms(double abs_td, const PriorityTransformOptions& options,
                                 std::uint64_t global_step);

/// New priority of the predecessor of a replayed transition. Unchanged when
/// the boost is off or the predecessor is terminal.
double boost_predecessor(double predecessor_priority, bool predecessor_terminal,
                         double abs_td, const PriorityTransformOptions& options);

/// Writes the post-replay priority of `slot` into `memory`: the plain
/// update_priority, then the optional staleness bonus and predecessor boost.
void refresh_priority(ReplayMemory& memory, SlotId slot, double td_error,
                      const PriorityTransformOptions& options, std::uint64_t global_step);

}  // namespace per
