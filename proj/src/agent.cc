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

#include "per/agent.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <stdexcept>
#include <tuple>

#include "per/greedy_replay.hpp"
#include "per/proportional_replay.hpp"
#include "per/rank_replay.hpp"
#include "per/uniform_replay.hpp"

namespace per {

std::string_view to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::kUniform: return "uniform";
    case Strategy::kOracle: return "oracle";
    case Strategy::kGreedyTd: return "greedy_td";
    case Strategy::kRankStochastic: return "rank_stochastic";
    case Strategy::kProportionalStochastic: return "proportional_stochastic";
  }
  return "unknown";
}

std::string_view to_string(Representation representation) {
  return representation == Representation::kTabular ? "tabular" : "linear";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
  for (Strategy s : kAllStrategies) {
    if (to_string(s) == name) return s;
  }
  if (name == "greedy") return Strategy::kGreedyTd;
  if (name == "rank") return Strategy::kRankStochastic;
  if (name == "proportional") return Strategy::kProportionalStochastic;
  return std::nullopt;
}

std::optional<Representation> parse_representation(std::string_view name) {
  if (name == "tabular") return Representation::kTabular;
  if (name == "linear") return Representation::kLinear;
  return std::nullopt;
}

FeatureMap feature_map_for(Representation representation, int n) {
  return FeatureMap(representation == Representation::kTabular ? FeatureKind::kTabular
                                                               : FeatureKind::kOneHotWithBias,
                    n);
}

double td_error(const Transition& t, const LinearQ& online, const LinearQ* target) {
  double bootstrap = 0.0;
  if (!t.is_terminal && t.discount != 0.0) {
    const int next_action = online.greedy_action(t.next_state);
    const LinearQ& evaluator = target ? *target : online;
    bootstrap = t.discount * evaluator.value(t.next_state, next_action);
  }
  return t.reward + bootstrap - online.value(t.prev_state, t.action);
}

void apply_update(LinearQ& q, const Transition& t, double weight, double td) {
  q.add_step(t.prev_state, t.action, weight * td);
}

double apply_update(LinearQ& q, const Transition& t, double weight, const LinearQ* target) {
  const double td = td_error(t, q, target);
  apply_update(q, t, weight, td);
  return td;
}

HindsightOracle::HindsightOracle(const ReplayMemory& memory) {
  using Key = std::tuple<int, int, double, double, int, bool>;
  std::map<Key, SlotId> first_slot;
  for (SlotId slot = 0; slot < memory.size(); ++slot) {
    const Transition& t = memory.transition(slot);
    first_slot.try_emplace(
        Key{t.prev_state, t.action, t.reward, t.discount, t.next_state, t.is_terminal}, slot);
  }
  candidates_.reserve(first_slot.size());
  for (const auto& [key, slot] : first_slot) {
    candidates_.push_back({slot, memory.transition(slot)});
  }
  std::sort(candidates_.begin(), candidates_.end(),
            [](const Candidate& a, const Candidate& b) { return a.slot < b.slot; });
}

SlotId HindsightOracle::select(const LinearQ& q, const QTable& truth,
                               const LinearQ* target) const {
  if (candidates_.empty()) throw std::logic_error("oracle on an empty memory");
  std::vector<double> values(truth.values().size());
  q.evaluate(values);
  const double current = mse_to_truth(values, truth);

  LinearQ trial = q;
  const std::vector<double> snapshot(q.theta().begin(), q.theta().end());
  SlotId best = candidates_.front().slot;
  double best_mse = std::numeric_limits<double>::infinity();
  for (const Candidate& c : candidates_) {
    const double td = td_error(c.transition, q, target);
    double after = current;
    if (td != 0.0) {
      apply_update(trial, c.transition, 1.0, td);
      trial.evaluate(values);
      after = mse_to_truth(values, truth);
      trial.set_theta(snapshot);
    }
    if (after < best_mse) {
      best_mse = after;
      best = c.slot;
    }
  }
  return best;
}

SlotId oracle_select(const ReplayMemory& memory, const LinearQ& q, const CliffwalkSpec& spec) {
  return HindsightOracle(memory).select(q, ground_truth_q(spec));
}

double default_alpha(Strategy strategy) {
  switch (strategy) {
    case Strategy::kRankStochastic: return 0.7;
    case Strategy::kProportionalStochastic: return 0.6;
    default: return 0.0;
  }
}

double default_beta0(Strategy strategy) {
  switch (strategy) {
    case Strategy::kRankStochastic: return 0.5;
    case Strategy::kProportionalStochastic: return 0.4;
    default: return 0.0;
  }
}

namespace {

Rng stream_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return Rng(seq);
}

class Trainer {
 public:
  explicit Trainer(const TrainingConfig& config)
      : config_(config),
        spec_(CliffwalkSpec::make(config.n)),
        truth_(ground_truth_q(spec_)),
        q_(feature_map_for(config.representation, config.n), config.eta),
        target_(q_),
        values_(spec_.state_action_count()),
        sample_rng_(stream_rng(config.seed, 3)) {
    if (config.budget == 0) throw std::invalid_argument("training budget must be positive");
    if (config.minibatch == 0) throw std::invalid_argument("minibatch must be positive");
    alpha_ = config.alpha.value_or(default_alpha(config.strategy));
    beta0_ = config.beta0.value_or(default_beta0(config.strategy));
    beta_schedule_ = {beta0_, 1.0, config.budget};
    if (config.alpha_end) alpha_schedule_ = AnnealSchedule{alpha_, *config.alpha_end, config.budget};

    Rng fill_rng = stream_rng(config.seed, 1);
    const std::vector<Transition> transitions = fill_memory(spec_, fill_rng);
    make_memory(transitions.size());
    for (const Transition& t : transitions) {
      const double max_before = memory_->max_priority();
      const SlotId slot = memory_->store(t);
      if (config.observer) config.observer->on_store(slot, memory_->priority(slot), max_before);
    }
    if (config.strategy == Strategy::kOracle) oracle_.emplace(*memory_);

    if (config.initial_theta) {
      q_.set_theta(*config.initial_theta);
    } else {
      Rng init_rng = stream_rng(config.seed, 2);
      q_.initialize_normal(init_rng, config.init_stddev);
    }
    target_ = q_;
  }

  RunRecord run() {
    const auto start = std::chrono::steady_clock::now();
    RunRecord record;
    record.n = spec_.n;
    record.transitions = memory_->size();
    record.strategy = config_.strategy;
    record.representation = config_.representation;
    record.seed = config_.seed;

    double mse = current_mse();
    bool converged = config_.stop_at_convergence && mse < config_.convergence_mse;
    while (!converged && updates_ < config_.budget) {
      switch (config_.strategy) {
        case Strategy::kGreedyTd:
          converged = replay_one(static_cast<GreedyReplay&>(*memory_).select(), 1.0, 1.0, mse);
          break;
        case Strategy::kOracle:
          converged = replay_one(oracle_->select(q_, truth_, target_ptr()), 1.0, 1.0, mse);
          // A zero-error pick leaves theta untouched, so without target lag
          // every later pick is the same no-op: skip to the end of the budget.
          if (!converged && last_td_ == 0.0 && target_ptr() == nullptr) {
            updates_ = config_.budget;
          }
          break;
        default:
          converged = config_.accumulate_batch ? replay_accumulated(mse) : replay_batch(mse);
          break;
      }
    }

    record.updates = updates_;
    record.censored = !(mse < config_.convergence_mse);
    record.final_mse = mse;
    record.wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start).count();
    return record;
  }

 private:
  void make_memory(std::size_t capacity) {
    SamplerConfig sc;
    sc.capacity = capacity;
    sc.alpha = alpha_;
    sc.epsilon = config_.epsilon;
    sc.minibatch = config_.minibatch;
    sc.resort_interval = config_.resort_interval;
    sc.clip_td = config_.clip_td;
    sc.seed = config_.seed;
    switch (config_.strategy) {
      case Strategy::kUniform:
      case Strategy::kOracle:
        memory_ = std::make_unique<UniformReplay>(sc);
        break;
      case Strategy::kGreedyTd:
        memory_ = std::make_unique<GreedyReplay>(sc);
        break;
      case Strategy::kRankStochastic:
        memory_ = std::make_unique<RankReplay>(sc);
        break;
      case Strategy::kProportionalStochastic:
        memory_ = std::make_unique<ProportionalReplay>(sc);
        break;
    }
  }

  bool stochastic_weights() const {
    return config_.is_weights && (config_.strategy == Strategy::kRankStochastic ||
                                  config_.strategy == Strategy::kProportionalStochastic);
  }

  const LinearQ* target_ptr() const { return config_.target_period > 1 ? &target_ : nullptr; }

  double current_mse() {
    q_.evaluate(values_);
    return mse_to_truth(values_, truth_);
  }

  double clipped(double td) const { return config_.clip_td ? clip_td_error(td) : td; }

  // Bookkeeping shared by every applied update; returns true on convergence.
  bool finish_update(ReplayEvent& event, double& mse) {
    if (config_.target_period > 1 && updates_ % config_.target_period == 0) target_ = q_;
    if (config_.strategy == Strategy::kProportionalStochastic && config_.rebuild_interval != 0 &&
        updates_ % config_.rebuild_interval == 0) {
      static_cast<ProportionalReplay&>(*memory_).rebuild();
    }
    if (alpha_schedule_ && updates_ % config_.alpha_update_interval == 0) update_alpha();
    mse = current_mse();
    event.mse = mse;
    if (config_.observer) config_.observer->on_replay(event);
    return config_.stop_at_convergence && mse < config_.convergence_mse;
  }

  void update_alpha() {
    const double alpha = alpha_schedule_->value(updates_);
    if (auto* p = dynamic_cast<ProportionalReplay*>(memory_.get())) p->set_alpha(alpha);
    if (auto* r = dynamic_cast<RankReplay*>(memory_.get())) r->set_alpha(alpha);
  }

  bool replay_one(SlotId slot, double probability, double weight, double& mse) {
    ++updates_;
    ReplayEvent event;
    event.update = updates_;
    event.slot = slot;
    event.probability = probability;
    event.weight = weight;
    event.beta = beta_schedule_.value(updates_);
    const Transition& t = memory_->transition(slot);
    const double td = td_error(t, q_, target_ptr());
    last_td_ = td;
    event.td_error = td;
    event.priority_before = memory_->priority(slot);
    refresh_priority(*memory_, slot, td, config_.transforms, updates_);
    event.priority_after = memory_->priority(slot);
    apply_update(q_, t, weight, clipped(td));
    return finish_update(event, mse);
  }

  bool replay_batch(double& mse) {
    auto& sampler = static_cast<StochasticReplay&>(*memory_);
    const SampledBatch batch = sampler.sample(config_.minibatch, sample_rng_);
    const double min_prob = *std::min_element(batch.probabilities.begin(), batch.probabilities.end());
    const std::size_t n = memory_->size();
    for (std::size_t j = 0; j < batch.size(); ++j) {
      if (updates_ >= config_.budget) return false;
      double weight = 1.0;
      if (stochastic_weights()) {
        const double beta = beta_schedule_.value(updates_ + 1);
        weight = raw_is_weight(batch.probabilities[j], n, beta) / raw_is_weight(min_prob, n, beta);
      }
      if (replay_one(batch.indices[j], batch.probabilities[j], weight, mse)) return true;
    }
    return false;
  }

  bool replay_accumulated(double& mse) {
    auto& sampler = static_cast<StochasticReplay&>(*memory_);
    const SampledBatch batch = sampler.sample(config_.minibatch, sample_rng_);
    const std::size_t n = memory_->size();
    const std::size_t count =
        std::min<std::uint64_t>(batch.size(), config_.budget - updates_);
    const double beta = beta_schedule_.value(updates_ + count);
    std::vector<double> weights(count, 1.0);
    if (stochastic_weights()) {
      weights = is_weights(std::span(batch.probabilities).first(count), n, beta);
    }
    LinearQ accumulated = q_;
    std::vector<ReplayEvent> events;
    for (std::size_t j = 0; j < count; ++j) {
      const SlotId slot = batch.indices[j];
      const Transition& t = memory_->transition(slot);
      ReplayEvent event;
      event.update = updates_ + j + 1;
      event.slot = slot;
      event.probability = batch.probabilities[j];
      event.weight = weights[j];
      event.beta = beta;
      event.td_error = td_error(t, q_, target_ptr());
      event.priority_before = memory_->priority(slot);
      refresh_priority(*memory_, slot, event.td_error, config_.transforms, event.update);
      event.priority_after = memory_->priority(slot);
      apply_update(accumulated, t, weights[j], clipped(event.td_error));
      events.push_back(event);
    }
    q_ = accumulated;
    bool converged = false;
    for (ReplayEvent& event : events) {
      ++updates_;
      converged = finish_update(event, mse);
    }
    return converged;
  }

  TrainingConfig config_;
  CliffwalkSpec spec_;
  QTable truth_;
  LinearQ q_;
  LinearQ target_;
  std::vector<double> values_;
  Rng sample_rng_;
  double alpha_ = 0.0;
  double beta0_ = 0.0;
  AnnealSchedule beta_schedule_;
  std::optional<AnnealSchedule> alpha_schedule_;
  std::unique_ptr<ReplayMemory> memory_;
  std::optional<HindsightOracle> oracle_;
  std::uint64_t updates_ = 0;
  double last_td_ = 0.0;
};

}  // namespace

RunRecord run_training(const TrainingConfig& config) { return Trainer(config).run(); }

}  // namespace per
