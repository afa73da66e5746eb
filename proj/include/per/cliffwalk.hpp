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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "per/replay_core.hpp"

namespace per {

/// n-state chain with one "right" and one "wrong" action per state. The right
/// action alternates with the parity of the state (right_action(s) = s % 2),
/// so no feature can generalize it. States are 0..n-1; `terminal_state()`
/// is the id recorded as the successor of every terminal transition.
struct CliffwalkSpec {
  int n = 2;
  double gamma = 0.5;

  /// Throws std::invalid_argument unless 2 <= n <= 16.
  static CliffwalkSpec make(int n);

  int right_action(int state) const { return state % 2; }
  int terminal_state() const { return n; }
  std::size_t state_action_count() const { return 2 * static_cast<std::size_t>(n); }
};

struct StepResult {
  int next_state;
  double reward;
  double discount;
  bool terminal;
};

/// Throws std::out_of_range for a state outside [0, n) or an action outside {0, 1}.
StepResult step(const CliffwalkSpec& spec, int state, int action);

/// 2^{n+1} - 2.
std::size_t transition_count(int n);

/// Every transition of all 2^n action sequences, each sequence played until
/// it terminates. Sequences are visited in an order shuffled by `rng`; the
/// transitions of one sequence stay contiguous.
std::vector<Transition> fill_memory(const CliffwalkSpec& spec, Rng& rng);

/// Dense Q table indexed by state * 2 + action.
class QTable {
 public:
  QTable() = default;
  explicit QTable(int n) : n_(n), values_(2 * static_cast<std::size_t>(n), 0.0) {}

  double at(int state, int action) const { return values_.at(index(state, action)); }
  double& at(int state, int action) { return values_.at(index(state, action)); }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  int n() const { return n_; }

  static std::size_t index(int state, int action) {
    return 2 * static_cast<std::size_t>(state) + static_cast<std::size_t>(action);
  }

 private:
  int n_ = 0;
  std::vector<double> values_;
};

/// Q*(s, wrong) = 0, Q*(s, right) = gamma^{n-1-s}.
QTable ground_truth_q(const CliffwalkSpec& spec);

/// Mean over all 2n state-action pairs of the squared error against `truth`.
/// Throws std::invalid_argument on a size mismatch.
double mse_to_truth(std::span<const double> estimate, const QTable& truth);
double mse_to_truth(std::span<const double> estimate, const CliffwalkSpec& spec);

enum class FeatureKind { kTabular, kOneHotWithBias };

/// Sparse binary features: a one-hot state-action indicator, plus a shared
/// constant bias feature for the linear representation.
struct SparseFeatures {
  std::array<std::size_t, 2> index{};
  std::size_t count = 0;
};

class FeatureMap {
 public:
  FeatureMap(FeatureKind kind, int n) : kind_(kind), n_(n) {}

  FeatureKind kind() const { return kind_; }
  int n() const { return n_; }
  std::size_t dimension() const {
    return 2 * static_cast<std::size_t>(n_) + (kind_ == FeatureKind::kOneHotWithBias ? 1 : 0);
  }
  /// Throws std::out_of_range for an invalid state-action pair.
  SparseFeatures features(int state, int action) const;

 private:
  FeatureKind kind_;
  int n_;
};

}  // namespace per
