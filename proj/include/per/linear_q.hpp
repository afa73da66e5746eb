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
#include <vector>

#include "per/cliffwalk.hpp"
#include "per/replay_core.hpp"

namespace per {

/// Q(s, a) = theta^T phi(s, a) over a sparse binary feature map. With the
/// tabular map this is a lookup table; with the bias map every value shares
/// one extra weight.
class LinearQ {
 public:
  explicit LinearQ(FeatureMap features, double eta = 0.25);

  /// theta_i ~ Normal(0, stddev).
  void initialize_normal(Rng& rng, double stddev = 0.1);

  double value(int state, int action) const;
  /// Greedy action in `state`; ties go to action 0.
  int greedy_action(int state) const;
  double max_value(int state) const;

  /// Writes Q for every state-action pair, indexed like QTable.
  void evaluate(std::span<double> out) const;
  QTable table() const;

  /// theta += eta * scaled_td * phi(state, action).
  void add_step(int state, int action, double scaled_td);

  std::span<const double> theta() const { return theta_; }
  /// Throws std::invalid_argument on a dimension mismatch.
  void set_theta(std::span<const double> theta);

  const FeatureMap& features() const { return features_; }
  double eta() const { return eta_; }

  /// Parameters that reproduce `table` exactly (bias weight 0).
  static std::vector<double> theta_for(const QTable& table, const FeatureMap& features);

 private:
  FeatureMap features_;
  double eta_;
  std::vector<double> theta_;
};

}  // namespace per
