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

/**
 * Array-backed complete binary tree over `leaf_count()` leaves.
 *
 * Node 0 is the root; node i has children 2i+1 and 2i+2; leaf j lives at node
 * leaf_count()-1+j. The leaf count is the capacity rounded up to a power of
 * two, and leaves beyond the capacity hold 0. Every internal node stores the
 * sum of its children, so the root is the total mass.
 *
 * A counter records how many nodes each operation reads or writes.
 */
class SumTree {
 public:
  struct Draw {
    std::vector<std::size_t> leaves;
    std::vector<double> probabilities;
  };

  explicit SumTree(std::size_t capacity);

  /// Writes a leaf and refreshes its ancestors. Throws on a negative or
  /// non-finite value, or a leaf outside the capacity.
  void set_leaf(std::size_t leaf, double value);
  double leaf(std::size_t leaf) const;
  double total() const { return nodes_[0]; }

  /// Returns the leaf i with prefix(i) <= v < prefix(i) + leaf(i).
  /// Throws std::logic_error on an empty tree, std::out_of_range when v lies
  /// outside [0, total()).
  std::size_t find_by_value(double v) const;

  /// Splits [0, total()) into k equal ranges and draws one value uniformly
  /// from each. Leaves may repeat when a leaf spans several ranges
  /// (in particular whenever fewer than k leaves carry mass).
  Draw sample_stratified(std::size_t k, Rng& rng) const;

  /// Recomputes every internal node from the leaves.
  void rebuild();

  /// True when every internal node equals the sum of its children within
  /// `tolerance * (1 + |node|)`.
  bool sums_consistent(double tolerance = 1e-9) const;

  std::size_t capacity() const { return capacity_; }
  std::size_t leaf_count() const { return leaf_count_; }
  std::size_t depth() const { return depth_; }
  std::span<const double> nodes() const { return nodes_; }

  std::uint64_t node_touches() const { return touches_; }
  void reset_node_touches() { touches_ = 0; }

  /// Overwrites a raw node without propagation. Fault injection only.
  void corrupt_node(std::size_t node, double value) { nodes_.at(node) = value; }

 private:
  std::size_t capacity_;
  std::size_t leaf_count_;
  std::size_t depth_;
  std::vector<double> nodes_;
  mutable std::uint64_t touches_ = 0;
};

/// Companion tree over the same leaf layout holding subtree maxima.
class MaxTree {
 public:
  explicit MaxTree(std::size_t capacity);

  void set_leaf(std::size_t leaf, double value);
  double leaf(std::size_t leaf) const { return nodes_.at(leaf_count_ - 1 + leaf); }
  double max() const { return nodes_[0]; }

 private:
  std::size_t leaf_count_;
  std::vector<double> nodes_;
};

}  // namespace per
