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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "per/cliffwalk.hpp"
#include "per/linear_q.hpp"
#include "per/replay_core.hpp"
#include "per/weighting.hpp"

namespace per {

enum class Strategy { kUniform, kOracle, kGreedyTd, kRankStochastic, kProportionalStochastic };
enum class Representation { kTabular, kLinear };

std::string_view to_string(Strategy strategy);
std::string_view to_string(Representation representation);
std::optional<Strategy> parse_strategy(std::string_view name);
std::optional<Representation> parse_representation(std::string_view name);

inline constexpr Strategy kAllStrategies[] = {
    Strategy::kUniform, Strategy::kOracle, Strategy::kGreedyTd, Strategy::kRankStochastic,
    Strategy::kProportionalStochastic};

/// Largest Cliffwalk size at which the hindsight oracle is run by default.
inline constexpr int kOracleMaxStates = 12;

FeatureMap feature_map_for(Representation representation, int n);

/// delta = R + gamma * Q_target(S', argmax_a Q(S', a)) - Q(S, A). Without a
/// target network Q_target is the online function, which is the plain
/// Q-learning max. Terminal transitions have no bootstrap term.
double td_error(const Transition& t, const LinearQ& online, const LinearQ* target = nullptr);

/// theta += eta * weight * delta * phi(S, A).
void apply_update(LinearQ& q, const Transition& t, double weight, double td);

/// Computes delta under the current parameters, applies the update and
/// returns the delta that was used.
double apply_update(LinearQ& q, const Transition& t, double weight,
                    const LinearQ* target = nullptr);

/**
 * Hindsight oracle: picks the transition whose update, applied now, leaves the
 * smallest mean-squared error to the true Q values. Identical transitions
 * produce identical updates, so each distinct transition is evaluated once
 * and represented by its lowest slot; ties go to the lowest slot.
 */
class HindsightOracle {
 public:
  explicit HindsightOracle(const ReplayMemory& memory);

  SlotId select(const LinearQ& q, const QTable& truth, const LinearQ* target = nullptr) const;
  std::size_t distinct_transitions() const { return candidates_.size(); }

 private:
  struct Candidate {
    SlotId slot;
    Transition transition;
  };
  std::vector<Candidate> candidates_;
};

SlotId oracle_select(const ReplayMemory& memory, const LinearQ& q, const CliffwalkSpec& spec);

/// One applied update, reported to a TrainingObserver.
struct ReplayEvent {
  std::uint64_t update = 0;  // 1-based
  SlotId slot = 0;
  double probability = 1.0;
  double weight = 1.0;
  double beta = 0.0;
  double td_error = 0.0;
  double priority_before = 0.0;
  double priority_after = 0.0;
  double mse = 0.0;
};

class TrainingObserver {
 public:
  virtual ~TrainingObserver() = default;
  virtual void on_store(SlotId /*slot*/, double /*priority*/, double /*max_before*/) {}
  virtual void on_replay(const ReplayEvent& /*event*/) {}
};

struct TrainingConfig {
  int n = 8;
  Strategy strategy = Strategy::kUniform;
  Representation representation = Representation::kTabular;
  std::uint64_t seed = 1;
  std::uint64_t budget = 10'000'000;
  double eta = 0.25;
  double init_stddev = 0.1;
  // Unset: the per-strategy defaults below.
  std::optional<double> alpha;
  std::optional<double> beta0;
  // When set, alpha is annealed linearly to this value over the budget.
  std::optional<double> alpha_end;
  std::uint64_t alpha_update_interval = 10'000;
  double epsilon = 1e-6;
  std::size_t minibatch = 16;
  bool is_weights = true;
  bool clip_td = false;
  // Updates between target-network copies; 1 means no target lag.
  std::uint64_t target_period = 1;
  std::uint64_t resort_interval = 1'000'000;
  // Sum-tree rebuild period, guarding against floating-point drift.
  std::uint64_t rebuild_interval = 1'000'000;
  // Sum a minibatch's weight changes and apply them once, as in the
  // general loop, instead of one sequential update per sampled transition.
  bool accumulate_batch = false;
  bool stop_at_convergence = true;
  double convergence_mse = 1e-3;
  PriorityTransformOptions transforms;
  std::optional<std::vector<double>> initial_theta;
  TrainingObserver* observer = nullptr;
};

double default_alpha(Strategy strategy);
double default_beta0(Strategy strategy);

struct RunRecord {
  int n = 0;
  std::size_t transitions = 0;
  Strategy strategy = Strategy::kUniform;
  Representation representation = Representation::kTabular;
  std::uint64_t seed = 0;
  std::uint64_t updates = 0;
  bool censored = false;
  double wall_ms = 0.0;
  double final_mse = 0.0;
};

/// Fills a Cliffwalk memory exhaustively, then replays until the MSE to the
/// true values drops below `convergence_mse` or the budget is spent (a
/// censored run). The MSE is checked after every applied update.
RunRecord run_training(const TrainingConfig& config);

}  // namespace per
