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

#include "per/sum_tree.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace per {

SumTree::SumTree(std::size_t capacity)
    : capacity_(capacity), leaf_count_(std::bit_ceil(capacity)),
      depth_(static_cast<std::size_t>(std::countr_zero(std::bit_ceil(capacity)))),
      nodes_(2 * std::bit_ceil(capacity) - 1, 0.0) {
  if (capacity == 0) throw std::invalid_argument("SumTree capacity must be positive");
}

void SumTree::set_leaf(std::size_t leaf, double value) {
  if (leaf >= capacity_) {
    throw std::out_of_range("SumTree leaf " + std::to_string(leaf) +
                            " outside capacity");
  }
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument("SumTree leaf value must be finite and >= 0");
  }
  std::size_t node = leaf_count_ - 1 + leaf;
  nodes_[node] = value;
  ++touches_;
  while (node != 0) {
    node = (node - 1) / 2;
    nodes_[node] = nodes_[2 * node + 1] + nodes_[2 * node + 2];
    ++touches_;
  }
}

double SumTree::leaf(std::size_t leaf) const {
  if (leaf >= leaf_count_) throw std::out_of_range("SumTree leaf out of range");
  return nodes_[leaf_count_ - 1 + leaf];
}

std::size_t SumTree::find_by_value(double v) const {
  const double total = nodes_[0];
  if (!(total > 0.0)) throw std::logic_error("find_by_value on an empty tree");
  if (!(v >= 0.0 && v < total)) {
    throw std::out_of_range("find_by_value: value outside [0, total)");
  }
  std::size_t node = 0;
  ++touches_;
  while (node < leaf_count_ - 1) {
    const std::size_t left = 2 * node + 1;
    const std::size_t right = left + 1;
    const double left_sum = nodes_[left];
    const double right_sum = nodes_[right];
    if (v < left_sum || !(right_sum > 0.0)) {
      // Rounding can leave v at or past the left sum with an empty right side.
      if (v >= left_sum) v = std::nextafter(left_sum, 0.0);
      node = left;
    } else {
      v -= left_sum;
      if (v >= right_sum) v = std::nextafter(right_sum, 0.0);
      node = right;
    }
    ++touches_;
  }
  return node - (leaf_count_ - 1);
}

SumTree::Draw SumTree::sample_stratified(std::size_t k, Rng& rng) const {
  if (k == 0) throw std::invalid_argument("sample_stratified: k must be positive");
  const double total = nodes_[0];
  if (!(total > 0.0)) throw std::logic_error("sample_stratified on an empty tree");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double width = total / static_cast<double>(k);
  Draw draw;
  draw.leaves.reserve(k);
  draw.probabilities.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    double v = (static_cast<double>(j) + unit(rng)) * width;
    if (v >= total) v = std::nextafter(total, 0.0);
    const std::size_t leaf = find_by_value(v);
    draw.leaves.push_back(leaf);
    draw.probabilities.push_back(nodes_[leaf_count_ - 1 + leaf] / total);
  }
  return draw;
}

void SumTree::rebuild() {
  for (std::size_t node = leaf_count_ - 1; node-- > 0;) {
    nodes_[node] = nodes_[2 * node + 1] + nodes_[2 * node + 2];
  }
}

bool SumTree::sums_consistent(double tolerance) const {
  for (std::size_t node = 0; node + 1 < leaf_count_; ++node) {
    const double expected = nodes_[2 * node + 1] + nodes_[2 * node + 2];
    if (std::abs(nodes_[node] - expected) > tolerance * (1.0 + std::abs(nodes_[node]))) {
      return false;
    }
  }
  return true;
}

MaxTree::MaxTree(std::size_t capacity)
    : leaf_count_(std::bit_ceil(capacity)), nodes_(2 * leaf_count_ - 1, 0.0) {
  if (capacity == 0) throw std::invalid_argument("MaxTree capacity must be positive");
}

void MaxTree::set_leaf(std::size_t leaf, double value) {
  std::size_t node = leaf_count_ - 1 + leaf;
  nodes_.at(node) = value;
  while (node != 0) {
    node = (node - 1) / 2;
    nodes_[node] = std::max(nodes_[2 * node + 1], nodes_[2 * node + 2]);
  }
}

}  // namespace per
