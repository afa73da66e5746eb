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
#include <vector>

namespace per {

/// Equal-probability segmentation of ranks 1..n under P(rank) ~ rank^-alpha.
/// Segment j covers zero-based positions [boundaries[j], boundaries[j+1]).
struct Partition {
  std::vector<std::size_t> boundaries;
  std::size_t n = 0;
  double alpha = 0.0;
  std::size_t k = 0;

  std::size_t segments() const { return k; }
  std::size_t segment_size(std::size_t j) const {
    return boundaries[j + 1] - boundaries[j];
  }
  /// Same alpha and k, and n within 10% of the size it was built for.
  bool reusable_for(std::size_t size, double a, std::size_t segments) const;
  /// Boundaries stretched proportionally onto `size` ranks, kept strictly
  /// increasing.
  std::vector<std::size_t> scaled_boundaries(std::size_t size) const;
};

/// Boundary j (0 < j < k) sits at the smallest rank whose cumulative
/// power-law mass reaches j/k, pushed just far enough to keep every segment
/// non-empty. Throws std::invalid_argument unless n >= k >= 1 and alpha >= 0.
Partition build_partition(std::size_t n, double alpha, std::size_t k);

/// Exact mass of each rank, rank^-alpha / sum_j j^-alpha.
std::vector<double> power_law_masses(std::size_t n, double alpha);

}  // namespace per
