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

#include "per/weighting.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace per {

double AnnealSchedule::value(std::uint64_t t) const {
  if (budget == 0 || t >= budget) return end_value;
  const double fraction = static_cast<double>(t) / static_cast<double>(budget);
  return start_value + (end_value - start_value) * fraction;
}

double anneal(const AnnealSchedule& schedule, std::uint64_t t) { return schedule.value(t); }

double raw_is_weight(double probability, std::size_t n, double beta) {
  if (!(probability > 0.0 && probability <= 1.0)) {
    throw std::invalid_argument("importance weight needs a probability in (0, 1]");
  }
  if (n == 0) throw std::invalid_argument("importance weight needs n > 0");
  if (!(beta >= 0.0)) throw std::invalid_argument("beta must be >= 0");
  if (beta == 0.0) return 1.0;
  return std::pow(static_cast<double>(n) * probability, -beta);
}

std::vector<double> is_weights(std::span<const double> probabilities, std::size_t n,
                               double beta) {
  if (probabilities.empty()) throw std::invalid_argument("is_weights: empty batch");
  std::vector<double> weights(probabilities.size());
  double largest = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    weights[i] = raw_is_weight(probabilities[i], n, beta);
    largest = std::max(largest, weights[i]);
  }
  for (double& w : weights) w /= largest;
  return weights;
}

double apply_priority_transforms(double abs_td, const PriorityTransformOptions& options,
                                 std::uint64_t global_step) {
  if (!(abs_td >= 0.0)) throw std::invalid_argument("priority base must be >= 0");
  const double stale = options.staleness_coefficient * static_cast<double>(global_step);
  return std::max(abs_td + options.epsilon - stale, options.epsilon);
}

double boost_predecessor(double predecessor_priority, bool predecessor_terminal,
                         double abs_td, const PriorityTransformOptions& options) {
  if (!options.predecessor_boost || predecessor_terminal) return predecessor_priority;
  return predecessor_priority + abs_td;
}

void refresh_priority(ReplayMemory& memory, SlotId slot, double td_error,
                      const PriorityTransformOptions& options, std::uint64_t global_step) {
  memory.update_priority(slot, td_error);
  if (options.staleness_coefficient != 0.0) {
    const double stale =
        options.staleness_coefficient * static_cast<double>(global_step);
    memory.set_priority(slot, std::max(memory.priority(slot) - stale, options.epsilon));
  }
  if (options.predecessor_boost) {
    if (const auto pred = memory.predecessor(slot)) {
      const double boosted =
          boost_predecessor(memory.priority(*pred), memory.transition(*pred).is_terminal,
                            std::abs(td_error), options);
      memory.set_priority(*pred, boosted);
    }
  }
}

}  // namespace per
