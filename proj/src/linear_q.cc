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

#include "per/linear_q.hpp"

#include <stdexcept>

namespace per {

LinearQ::LinearQ(FeatureMap features, double eta)
    : features_(features), eta_(eta), theta_(features.dimension(), 0.0) {
  if (!(eta > 0.0)) throw std::invalid_argument("step size must be positive");
}

void LinearQ::initialize_normal(Rng& rng, double stddev) {
  std::normal_distribution<double> normal(0.0, stddev);
  for (double& w : theta_) w = normal(rng);
}

double LinearQ::value(int state, int action) const {
  const SparseFeatures f = features_.features(state, action);
  double q = 0.0;
  for (std::size_t i = 0; i < f.count; ++i) q += theta_[f.index[i]];
  return q;
}

int LinearQ::greedy_action(int state) const {
  return value(state, 1) > value(state, 0) ? 1 : 0;
}

double LinearQ::max_value(int state) const {
  return value(state, greedy_action(state));
}

void LinearQ::evaluate(std::span<double> out) const {
  const int n = features_.n();
  if (out.size() != 2 * static_cast<std::size_t>(n)) {
    throw std::invalid_argument("LinearQ::evaluate: output size mismatch");
  }
  const double bias =
      features_.kind() == FeatureKind::kOneHotWithBias ? theta_[2 * static_cast<std::size_t>(n)] : 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = theta_[i] + bias;
}

QTable LinearQ::table() const {
  QTable q(features_.n());
  evaluate(q.values());
  return q;
}

void LinearQ::add_step(int state, int action, double scaled_td) {
  const SparseFeatures f = features_.features(state, action);
  const double delta = eta_ * scaled_td;
  for (std::size_t i = 0; i < f.count; ++i) theta_[f.index[i]] += delta;
}

void LinearQ::set_theta(std::span<const double> theta) {
  if (theta.size() != theta_.size()) {
    throw std::invalid_argument("LinearQ::set_theta: dimension mismatch");
  }
  theta_.assign(theta.begin(), theta.end());
}

std::vector<double> LinearQ::theta_for(const QTable& table, const FeatureMap& features) {
  std::vector<double> theta(features.dimension(), 0.0);
  const auto values = table.values();
  for (std::size_t i = 0; i < values.size(); ++i) theta[i] = values[i];
  return theta;
}

}  // namespace per
