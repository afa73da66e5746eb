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

#include "per/cliffwalk.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace per {

CliffwalkSpec CliffwalkSpec::make(int n) {
  if (n < 2 || n > 16) {
    throw std::invalid_argument("Cliffwalk size must be in [2, 16], got " + std::to_string(n));
  }
  return {n, 1.0 - 1.0 / static_cast<double>(n)};
}

StepResult step(const CliffwalkSpec& spec, int state, int action) {
  if (state < 0 || state >= spec.n) throw std::out_of_range("Cliffwalk state out of range");
  if (action != 0 && action != 1) throw std::out_of_range("Cliffwalk action out of range");
  if (action != spec.right_action(state)) {
    return {spec.terminal_state(), 0.0, 0.0, true};
  }
  if (state == spec.n - 1) return {spec.terminal_state(), 1.0, 0.0, true};
  return {state + 1, 0.0, spec.gamma, false};
}

std::size_t transition_count(int n) { return (std::size_t{1} << (n + 1)) - 2; }

std::vector<Transition> fill_memory(const CliffwalkSpec& spec, Rng& rng) {
  const std::size_t sequences = std::size_t{1} << spec.n;
  std::vector<std::uint32_t> order(sequences);
  std::iota(order.begin(), order.end(), 0u);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<Transition> memory;
  memory.reserve(transition_count(spec.n));
  for (const std::uint32_t bits : order) {
    int state = 0;
    for (int t = 0; t < spec.n; ++t) {
      const int action = static_cast<int>((bits >> t) & 1u);
      const StepResult r = step(spec, state, action);
      memory.push_back({state, action, r.reward, r.discount, r.next_state, r.terminal});
      if (r.terminal) break;
      state = r.next_state;
    }
  }
  return memory;
}

QTable ground_truth_q(const CliffwalkSpec& spec) {
  QTable q(spec.n);
  for (int s = 0; s < spec.n; ++s) {
    q.at(s, spec.right_action(s)) = std::pow(spec.gamma, spec.n - 1 - s);
    q.at(s, 1 - spec.right_action(s)) = 0.0;
  }
  return q;
}

double mse_to_truth(std::span<const double> estimate, const QTable& truth) {
  const auto expected = truth.values();
  if (estimate.size() != expected.size()) {
    throw std::invalid_argument("mse_to_truth: estimate does not cover every state-action pair");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const double d = estimate[i] - expected[i];
    total += d * d;
  }
  return total / static_cast<double>(expected.size());
}

double mse_to_truth(std::span<const double> estimate, const CliffwalkSpec& spec) {
  return mse_to_truth(estimate, ground_truth_q(spec));
}

SparseFeatures FeatureMap::features(int state, int action) const {
  if (state < 0 || state >= n_ || (action != 0 && action != 1)) {
    throw std::out_of_range("FeatureMap: state-action pair out of range");
  }
  SparseFeatures f;
  f.index[0] = QTable::index(state, action);
  f.count = 1;
  if (kind_ == FeatureKind::kOneHotWithBias) {
    f.index[1] = 2 * static_cast<std::size_t>(n_);
    f.count = 2;
  }
  return f;
}

}  // namespace per
