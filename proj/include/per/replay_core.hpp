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
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace per {

using SlotId = std::size_t;
using Rng = std::mt19937_64;

/// One step of experience: (S_{t-1}, A_{t-1}, R_t, gamma_t, S_t).
/// `discount` is zero on terminal transitions.
struct Transition {
  int prev_state = 0;
  int action = 0;
  double reward = 0.0;
  double discount = 0.0;
  int next_state = 0;
  bool is_terminal = false;

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// Throws std::invalid_argument if the transition violates its invariants
/// (non-finite reward, discount outside [0,1], terminal with nonzero discount).
void validate(const Transition& t);

struct SamplerConfig {
  std::size_t capacity = 1;
  double alpha = 0.6;
  double epsilon = 1e-6;
  std::size_t minibatch = 32;
  // Rank variant only. Zero disables periodic re-sorting.
  std::uint64_t resort_interval = 1'000'000;
  bool clip_td = false;
  std::uint64_t seed = 0;

  void validate() const;
};

struct SampledBatch {
  std::vector<SlotId> indices;
  std::vector<double> probabilities;
  std::vector<Transition> transitions;
  // Left empty by the samplers; see is_weights().
  std::vector<double> weights;

  std::size_t size() const { return indices.size(); }
};

/// P(i) = p_i^alpha / sum_k p_k^alpha.
/// Throws std::invalid_argument on empty input, nonpositive priorities or
/// negative alpha.
std::vector<double> sampling_probabilities(std::span<const double> priorities,
                                           double alpha);

/// Clamps a TD error to [-1, 1].
double clip_td_error(double td);

/// Fixed-capacity sliding window of transitions. Slots are reused oldest
/// first once the window is full.
class TransitionRing {
 public:
  struct StoreResult {
    SlotId slot;
    bool evicted;
  };

  explicit TransitionRing(std::size_t capacity);

  StoreResult store(const Transition& t);

  const Transition& at(SlotId slot) const;
  bool occupied(SlotId slot) const { return slot < size_; }
  bool full() const { return size_ == items_.size(); }
  /// The transition stored immediately before `slot` within the same episode,
  /// if it is still resident.
  std::optional<SlotId> predecessor(SlotId slot) const;

  std::size_t size() const { return size_; }
  std::size_t capacity() const { return items_.size(); }
  std::size_t write_cursor() const { return cursor_; }

 private:
  struct Item {
    Transition transition;
    std::uint64_t serial = 0;
    std::optional<SlotId> predecessor;
    std::uint64_t predecessor_serial = 0;
  };

  std::vector<Item> items_;
  std::size_t size_ = 0;
  std::size_t cursor_ = 0;
  std::uint64_t next_serial_ = 1;
  std::optional<SlotId> last_slot_;
};

/// Storage contract shared by every replay variant: transitions enter with the
/// current maximum priority and have their priority refreshed after replay.
class ReplayMemory {
 public:
  explicit ReplayMemory(std::size_t capacity) : ring_(capacity) {}
  virtual ~ReplayMemory() = default;

  ReplayMemory(const ReplayMemory&) = delete;
  ReplayMemory& operator=(const ReplayMemory&) = delete;

  virtual SlotId store(const Transition& t) = 0;
  /// Throws std::out_of_range for an unoccupied slot.
  virtual void update_priority(SlotId slot, double td_error) = 0;
  virtual double priority(SlotId slot) const = 0;
  /// Overwrites the stored priority directly (used by priority transforms).
  virtual void set_priority(SlotId slot, double priority) = 0;
  /// Largest priority among resident transitions; 1 for an empty memory.
  /// Newly stored transitions receive this value.
  virtual double max_priority() const = 0;

  const Transition& transition(SlotId slot) const { return ring_.at(slot); }
  std::optional<SlotId> predecessor(SlotId slot) const {
    return ring_.predecessor(slot);
  }
  bool occupied(SlotId slot) const { return ring_.occupied(slot); }
  std::size_t size() const { return ring_.size(); }
  std::size_t capacity() const { return ring_.capacity(); }

 protected:
  void require_occupied(SlotId slot) const;

  TransitionRing ring_;
};

/// A replay memory that draws minibatches stochastically.
class StochasticReplay : public ReplayMemory {
 public:
  using ReplayMemory::ReplayMemory;

  /// Draws k transitions. Throws std::logic_error on an empty memory.
  virtual SampledBatch sample(std::size_t k, Rng& rng) = 0;
};

}  // namespace per
