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
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "per/agent.hpp"

namespace per::bench {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitValidation = 2;

/// Environment variable naming the default output directory.
inline constexpr const char* kOutDirEnv = "PER_BENCH_OUT_DIR";

struct SweepConfig {
  std::vector<int> sizes;
  std::vector<Strategy> strategies;
  std::vector<Representation> representations;
  std::vector<std::uint64_t> seeds;
  std::uint64_t budget = 10'000'000;
  std::optional<double> alpha;
  std::optional<double> beta0;
  double eta = 0.25;
  bool clip_td = false;
  bool is_weights = true;
  std::size_t minibatch = 16;
  int oracle_max_states = kOracleMaxStates;
  // When false, wall_ms is written as 0 so reruns are byte-identical.
  bool record_timing = true;
  unsigned jobs = 1;
  std::string out_dir = "results";
};

/// Sizes 2..16, all strategies, both representations, seeds 1..10, jobs set
/// to the hardware concurrency and out_dir from PER_BENCH_OUT_DIR if set.
SweepConfig default_sweep_config();

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line = 0)
      : std::runtime_error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Applies one `key = value` setting. Throws ConfigError.
void apply_setting(SweepConfig& config, std::string_view key, std::string_view value);

/// Reads `key = value` lines; `#` starts a comment. Errors carry the
/// offending line as "<source>:<line>: message".
void apply_config_text(SweepConfig& config, std::istream& in, std::string_view source);
void apply_config_file(SweepConfig& config, const std::string& path);

/// Throws ConfigError on an unusable configuration.
void validate(const SweepConfig& config);

/// "2,4,6", "8-14" and mixtures of both.
std::vector<int> parse_int_list(std::string_view text);
std::vector<std::uint64_t> parse_seed_list(std::string_view text);
bool parse_switch(std::string_view text);

struct SummaryRow {
  int n = 0;
  std::size_t transitions = 0;
  Strategy strategy = Strategy::kUniform;
  Representation representation = Representation::kTabular;
  std::size_t runs = 0;
  double median = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::size_t censored = 0;
  bool skipped = false;
};

struct SweepResult {
  std::vector<RunRecord> runs;
  std::vector<SummaryRow> summary;
};

TrainingConfig training_config_for(const SweepConfig& config, int n, Strategy strategy,
                                   Representation representation, std::uint64_t seed);

using ProgressFn = std::function<void(const RunRecord&, std::size_t done, std::size_t total)>;

/// Runs every (n, strategy, representation, seed) cell on `config.jobs`
/// threads. Output order is independent of scheduling. Oracle cells above
/// `oracle_max_states` are not run and appear in the summary as skipped.
SweepResult run_sweep(const SweepConfig& config, const ProgressFn& progress = {});

/// Censored runs enter the statistics at their update count (the budget),
/// a lower bound on their true value.
std::vector<SummaryRow> summarize(const std::vector<RunRecord>& runs, const SweepConfig& config);

std::string raw_csv(const std::vector<RunRecord>& runs, bool record_timing);
std::string summary_csv(const std::vector<SummaryRow>& rows);

/// Writes raw.csv and summary.csv into config.out_dir; returns their paths.
std::pair<std::string, std::string> write_results(const SweepResult& result,
                                                  const SweepConfig& config);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<std::pair<double, double>>& points);

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

struct ValidationOptions {
  std::uint64_t seed = 2016;
  std::size_t draws = 1'000'000;
  // "" for none, or "tree-sum" to corrupt one internal sum-tree node.
  std::string inject_fault;
};

/// Distributional, conservation, partition and unbiasedness checks for the
/// samplers.
std::vector<CheckResult> validate_samplers(const ValidationOptions& options = {});

std::string format_report(const std::vector<CheckResult>& checks);

/// Total-variation distance between two distributions of equal length.
double total_variation(const std::vector<double>& p, const std::vector<double>& q);

}  // namespace per::bench
