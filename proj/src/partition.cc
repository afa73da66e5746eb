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

#include "per/partition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace per {

namespace {

double rank_weight(std::size_t rank, double alpha) {
  return alpha == 0.0 ? 1.0 : std::pow(static_cast<double>(rank), -alpha);
}

}  // namespace

std::vector<double> power_law_masses(std::size_t n, double alpha) {
  if (n == 0) throw std::invalid_argument("power_law_masses: n must be positive");
  if (!(alpha >= 0.0)) throw std::invalid_argument("power_law_masses: alpha must be >= 0");
  std::vector<double> masses(n);
  double total = 0.0;
  for (std::size_t r = 1; r <= n; ++r) {
    masses[r - 1] = rank_weight(r, alpha);
    total += masses[r - 1];
  }
  for (double& m : masses) m /= total;
  return masses;
}

Partition build_partition(std::size_t n, double alpha, std::size_t k) {
  if (k == 0) throw std::invalid_argument("build_partition: k must be positive");
  if (k > n) throw std::invalid_argument("build_partition: k exceeds n");
  if (!(alpha >= 0.0)) throw std::invalid_argument("build_partition: alpha must be >= 0");

  std::vector<double> cumulative(n);
  double running = 0.0;
  for (std::size_t r = 1; r <= n; ++r) {
    running += rank_weight(r, alpha);
    cumulative[r - 1] = running;
  }
  const double total = running;
  const double kd = static_cast<double>(k);

  Partition part;
  part.n = n;
  part.alpha = alpha;
  part.k = k;
  part.boundaries.assign(k + 1, 0);
  part.boundaries[k] = n;

  std::size_t rank = 0;  // number of ranks consumed so far
  for (std::size_t j = 1; j < k; ++j) {
    // Compare s*k against j*total so exact cases (alpha = 0, k | n) stay exact.
    const double target = static_cast<double>(j) * total;
    while (rank < n && cumulative[rank] * kd < target * (1.0 - 1e-12)) ++rank;
    std::size_t boundary = rank + 1;
    boundary = std::max(boundary, part.boundaries[j - 1] + 1);
    boundary = std::min(boundary, n - (k - j));
    part.boundaries[j] = boundary;
  }
  return part;
}

bool Partition::reusable_for(std::size_t size, double a, std::size_t segments) const {
  if (a != alpha || segments != k || size < k) return false;
  const double lo = 0.9 * static_cast<double>(n);
  const double hi = 1.1 * static_cast<double>(n);
  const double s = static_cast<double>(size);
  return s >= lo && s <= hi;
}

std::vector<std::size_t> Partition::scaled_boundaries(std::size_t size) const {
  if (size == n) return boundaries;
  if (size < k) throw std::invalid_argument("scaled_boundaries: fewer ranks than segments");
  std::vector<std::size_t> out(k + 1);
  out[0] = 0;
  out[k] = size;
  const double scale = static_cast<double>(size) / static_cast<double>(n);
  for (std::size_t j = 1; j < k; ++j) {
    auto b = static_cast<std::size_t>(std::llround(static_cast<double>(boundaries[j]) * scale));
    b = std::max(b, out[j - 1] + 1);
    b = std::min(b, size - (k - j));
    out[j] = b;
  }
  return out;
}

}  // namespace per
