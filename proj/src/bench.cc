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

#include "per/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "per/partition.hpp"
#include "per/proportional_replay.hpp"
#include "per/rank_replay.hpp"
#include "per/rank_store.hpp"
#include "per/sum_tree.hpp"

namespace per::bench {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

template <typename T>
T parse_number(std::string_view text, std::string_view what) {
  T value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ConfigError("invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

double parse_real(std::string_view text, std::string_view what) {
  // std::from_chars for double is unavailable on older toolchains.
  const std::string copy(text);
  char* end = nullptr;
  const double value = std::strtod(copy.c_str(), &end);
  if (copy.empty() || end != copy.c_str() + copy.size() || !std::isfinite(value)) {
    throw ConfigError("invalid " + std::string(what) + " '" + copy + "'");
  }
  return value;
}

template <typename T>
std::vector<T> parse_list(std::string_view text, std::string_view what) {
  std::vector<T> out;
  for (std::string_view item : split(text, ',')) {
    if (item.empty()) throw ConfigError("empty entry in " + std::string(what) + " list");
    const auto dash = item.find('-', 1);
    if (dash != std::string_view::npos) {
      const T lo = parse_number<T>(trim(item.substr(0, dash)), what);
      const T hi = parse_number<T>(trim(item.substr(dash + 1)), what);
      if (hi < lo) throw ConfigError("descending range '" + std::string(item) + "'");
      for (T v = lo; v <= hi; ++v) out.push_back(v);
    } else {
      out.push_back(parse_number<T>(item, what));
    }
  }
  return out;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

std::vector<int> parse_int_list(std::string_view text) { return parse_list<int>(text, "size"); }

std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
  return parse_list<std::uint64_t>(text, "seed");
}

bool parse_switch(std::string_view text) {
  if (text == "on" || text == "true" || text == "1" || text == "yes") return true;
  if (text == "off" || text == "false" || text == "0" || text == "no") return false;
  throw ConfigError("expected on|off, got '" + std::string(text) + "'");
}

SweepConfig default_sweep_config() {
  SweepConfig config;
  for (int n = 2; n <= 16; ++n) config.sizes.push_back(n);
  config.strategies.assign(std::begin(kAllStrategies), std::end(kAllStrategies));
  config.representations = {Representation::kTabular, Representation::kLinear};
  for (std::uint64_t s = 1; s <= 10; ++s) config.seeds.push_back(s);
  config.jobs = std::max(1u, std::thread::hardware_concurrency());
  if (const char* dir = std::getenv(kOutDirEnv); dir != nullptr && *dir != '\0') {
    config.out_dir = dir;
  }
  return config;
}

void apply_setting(SweepConfig& config, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "sizes") {
    config.sizes = parse_int_list(value);
  } else if (key == "strategies") {
    config.strategies.clear();
    for (std::string_view name : split(value, ',')) {
      const auto s = parse_strategy(name);
      if (!s) throw ConfigError("unknown strategy '" + std::string(name) + "'");
      config.strategies.push_back(*s);
    }
  } else if (key == "representations") {
    config.representations.clear();
    for (std::string_view name : split(value, ',')) {
      const auto r = parse_representation(name);
      if (!r) throw ConfigError("unknown representation '" + std::string(name) + "'");
      config.representations.push_back(*r);
    }
  } else if (key == "seeds") {
    config.seeds = parse_seed_list(value);
  } else if (key == "budget") {
    config.budget = static_cast<std::uint64_t>(parse_real(value, "budget"));
  } else if (key == "alpha") {
    config.alpha = parse_real(value, "alpha");
  } else if (key == "beta0") {
    config.beta0 = parse_real(value, "beta0");
  } else if (key == "eta") {
    config.eta = parse_real(value, "eta");
  } else if (key == "clip_td" || key == "clip-td") {
    config.clip_td = parse_switch(value);
  } else if (key == "is_weights" || key == "is-weights") {
    config.is_weights = parse_switch(value);
  } else if (key == "minibatch") {
    config.minibatch = parse_number<std::size_t>(value, "minibatch");
  } else if (key == "oracle_max_states") {
    config.oracle_max_states = parse_number<int>(value, "oracle_max_states");
  } else if (key == "timing") {
    config.record_timing = parse_switch(value);
  } else if (key == "jobs") {
    config.jobs = parse_number<unsigned>(value, "jobs");
  } else if (key == "out_dir" || key == "out-dir") {
    config.out_dir = std::string(value);
  } else {
    throw ConfigError("unknown key '" + std::string(key) + "'");
  }
}

void apply_config_text(SweepConfig& config, std::istream& in, std::string_view source) {
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    const std::string where = std::string(source) + ":" + std::to_string(number) + ": ";
    if (eq == std::string_view::npos) {
      throw ConfigError(where + "expected 'key = value'", number);
    }
    try {
      apply_setting(config, view.substr(0, eq), view.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what(), number);
    }
  }
}

void apply_config_file(SweepConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  apply_config_text(config, in, path);
}

void validate(const SweepConfig& config) {
  if (config.sizes.empty()) throw ConfigError("no problem sizes given");
  for (int n : config.sizes) {
    if (n < 2 || n > 16) {
      throw ConfigError("problem size " + std::to_string(n) + " outside [2, 16]");
    }
  }
  if (config.strategies.empty()) throw ConfigError("no strategies given");
  if (config.representations.empty()) throw ConfigError("no representations given");
  if (config.seeds.empty()) throw ConfigError("no seeds given");
  if (config.budget == 0) throw ConfigError("budget must be positive");
  if (!(config.eta > 0.0)) throw ConfigError("eta must be positive");
  if (config.alpha && !(*config.alpha >= 0.0)) throw ConfigError("alpha must be >= 0");
  if (config.beta0 && !(*config.beta0 >= 0.0 && *config.beta0 <= 1.0)) {
    throw ConfigError("beta0 must lie in [0, 1]");
  }
  if (config.minibatch == 0) throw ConfigError("minibatch must be positive");
  if (config.jobs == 0) throw ConfigError("jobs must be positive");
}

TrainingConfig training_config_for(const SweepConfig& config, int n, Strategy strategy,
                                   Representation representation, std::uint64_t seed) {
  TrainingConfig tc;
  tc.n = n;
  tc.strategy = strategy;
  tc.representation = representation;
  tc.seed = seed;
  tc.budget = config.budget;
  tc.eta = config.eta;
  tc.alpha = config.alpha;
  tc.beta0 = config.beta0;
  tc.clip_td = config.clip_td;
  tc.is_weights = config.is_weights;
  tc.minibatch = config.minibatch;
  return tc;
}

SweepResult run_sweep(const SweepConfig& config, const ProgressFn& progress) {
  validate(config);
  std::vector<TrainingConfig> plan;
  for (int n : config.sizes) {
    for (Representation rep : config.representations) {
      for (Strategy strategy : config.strategies) {
        if (strategy == Strategy::kOracle && n > config.oracle_max_states) continue;
        for (std::uint64_t seed : config.seeds) {
          plan.push_back(training_config_for(config, n, strategy, rep, seed));
        }
      }
    }
  }

  SweepResult result;
  result.runs.resize(plan.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < plan.size(); i = next++) {
      result.runs[i] = run_training(plan[i]);
      if (!config.record_timing) result.runs[i].wall_ms = 0.0;
      const std::size_t finished = ++done;
      if (progress) {
        std::lock_guard lock(progress_mutex);
        progress(result.runs[i], finished, plan.size());
      }
    }
  };
  const unsigned threads = std::min<std::size_t>(config.jobs, std::max<std::size_t>(plan.size(), 1));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  result.summary = summarize(result.runs, config);
  return result;
}

std::vector<SummaryRow> summarize(const std::vector<RunRecord>& runs, const SweepConfig& config) {
  std::vector<SummaryRow> rows;
  for (int n : config.sizes) {
    for (Representation rep : config.representations) {
      for (Strategy strategy : config.strategies) {
        SummaryRow row;
        row.n = n;
        row.transitions = transition_count(n);
        row.strategy = strategy;
        row.representation = rep;
        if (strategy == Strategy::kOracle && n > config.oracle_max_states) {
          row.skipped = true;
          rows.push_back(row);
          continue;
        }
        std::vector<double> updates;
        for (const RunRecord& r : runs) {
          if (r.n != n || r.strategy != strategy || r.representation != rep) continue;
          updates.push_back(static_cast<double>(r.updates));
          if (r.censored) ++row.censored;
        }
        if (updates.empty()) continue;
        std::sort(updates.begin(), updates.end());
        const std::size_t m = updates.size();
        row.runs = m;
        row.median = m % 2 == 1 ? updates[m / 2] : 0.5 * (updates[m / 2 - 1] + updates[m / 2]);
        row.min = updates.front();
        row.max = updates.back();
        rows.push_back(row);
      }
    }
  }
  return rows;
}

std::string raw_csv(const std::vector<RunRecord>& runs, bool record_timing) {
  std::ostringstream out;
  out << "n,transitions,strategy,representation,seed,updates,censored,wall_ms\n";
  for (const RunRecord& r : runs) {
    char wall[32];
    std::snprintf(wall, sizeof wall, "%.3f", record_timing ? r.wall_ms : 0.0);
    out << r.n << ',' << r.transitions << ',' << to_string(r.strategy) << ','
        << to_string(r.representation) << ',' << r.seed << ',' << r.updates << ','
        << (r.censored ? 1 : 0) << ',' << wall << '\n';
  }
  return out.str();
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::ostringstream out;
  out << "n,transitions,strategy,representation,runs,median,min,max,n_censored\n";
  for (const SummaryRow& r : rows) {
    out << r.n << ',' << r.transitions << ',' << to_string(r.strategy) << ','
        << to_string(r.representation) << ',' << r.runs << ',';
    if (r.skipped) {
      out << "skipped,skipped,skipped,0\n";
    } else {
      out << format_number(r.median) << ',' << format_number(r.min) << ','
          << format_number(r.max) << ',' << r.censored << '\n';
    }
  }
  return out.str();
}

std::pair<std::string, std::string> write_results(const SweepResult& result,
                                                  const SweepConfig& config) {
  namespace fs = std::filesystem;
  fs::create_directories(config.out_dir);
  const fs::path raw = fs::path(config.out_dir) / "raw.csv";
  const fs::path summary = fs::path(config.out_dir) / "summary.csv";
  {
    std::ofstream out(raw, std::ios::binary);
    out << raw_csv(result.runs, config.record_timing);
    if (!out) throw std::runtime_error("failed writing " + raw.string());
  }
  {
    std::ofstream out(summary, std::ios::binary);
    out << summary_csv(result.summary);
    if (!out) throw std::runtime_error("failed writing " + summary.string());
  }
  return {raw.string(), summary.string()};
}

double loglog_slope(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) throw std::invalid_argument("loglog_slope needs two points");
  double sx = 0, sy = 0;
  for (const auto& [x, y] : points) {
    if (!(x > 0.0 && y > 0.0)) throw std::invalid_argument("loglog_slope needs positive values");
    sx += std::log(x);
    sy += std::log(y);
  }
  const double mx = sx / static_cast<double>(points.size());
  const double my = sy / static_cast<double>(points.size());
  double sxx = 0, sxy = 0;
  for (const auto& [x, y] : points) {
    const double dx = std::log(x) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y) - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("loglog_slope needs distinct x values");
  return sxy / sxx;
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw std::invalid_argument("total_variation: size mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) d += std::abs(p[i] - q[i]);
  return 0.5 * d;
}

namespace {

std::vector<double> random_priorities(Rng& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.05, 2.0);
  std::vector<double> p(n);
  for (double& x : p) x = u(rng);
  return p;
}

template <typename Sampler>
std::vector<double> empirical_frequencies(Sampler& sampler, std::size_t slots, std::size_t k,
                                          std::size_t draws, Rng& rng) {
  std::vector<double> counts(slots, 0.0);
  std::size_t taken = 0;
  while (taken < draws) {
    const SampledBatch batch = sampler.sample(k, rng);
    for (SlotId slot : batch.indices) counts[slot] += 1.0;
    taken += batch.size();
  }
  for (double& c : counts) c /= static_cast<double>(taken);
  return counts;
}

Transition dummy_transition(int i) { return {i, 0, 0.0, 0.0, i, true}; }

CheckResult sumtree_tv_check(double alpha, const ValidationOptions& options, Rng& rng) {
  constexpr std::size_t kSlots = 16;
  SamplerConfig sc;
  sc.capacity = kSlots;
  sc.alpha = alpha;
  ProportionalReplay replay(sc);
  const std::vector<double> p = random_priorities(rng, kSlots);
  for (std::size_t i = 0; i < kSlots; ++i) {
    replay.set_priority(replay.store(dummy_transition(static_cast<int>(i))), p[i]);
  }
  const auto freq = empirical_frequencies(replay, kSlots, kSlots, options.draws, rng);
  const double tv = total_variation(freq, sampling_probabilities(p, alpha));
  return {"sumtree_tv_alpha_" + format_number(alpha), tv, 0.005, tv < 0.005};
}

CheckResult sumtree_uniform_check(const ValidationOptions& options, Rng& rng) {
  constexpr std::size_t kSlots = 16;
  SamplerConfig sc;
  sc.capacity = kSlots;
  sc.alpha = 0.0;
  ProportionalReplay replay(sc);
  const std::vector<double> p = random_priorities(rng, kSlots);
  for (std::size_t i = 0; i < kSlots; ++i) {
    replay.set_priority(replay.store(dummy_transition(static_cast<int>(i))), p[i]);
  }
  const auto freq = empirical_frequencies(replay, kSlots, 1, options.draws, rng);
  const double tv = total_variation(freq, std::vector<double>(kSlots, 1.0 / kSlots));
  return {"sumtree_alpha0_vs_uniform", tv, 0.005, tv < 0.005};
}

CheckResult rank_self_consistency_check(double alpha, const ValidationOptions& options,
                                        Rng& rng) {
  constexpr std::size_t kSlots = 16;
  constexpr std::size_t kSegments = 4;
  SamplerConfig sc;
  sc.capacity = kSlots;
  sc.alpha = alpha;
  sc.resort_interval = 1;
  RankReplay replay(sc);
  const std::vector<double> keys = random_priorities(rng, kSlots);
  for (std::size_t i = 0; i < kSlots; ++i) {
    replay.set_priority(replay.store(dummy_transition(static_cast<int>(i))), keys[i]);
  }
  const auto freq = empirical_frequencies(replay, kSlots, kSegments, options.draws, rng);
  const Partition part = build_partition(kSlots, alpha, kSegments);
  std::vector<double> expected(kSlots, 0.0);
  for (std::size_t j = 0; j < kSegments; ++j) {
    for (std::size_t pos = part.boundaries[j]; pos < part.boundaries[j + 1]; ++pos) {
      expected[replay.rank_store().slot_at(pos)] =
          1.0 / (static_cast<double>(kSegments) * static_cast<double>(part.segment_size(j)));
    }
  }
  const double tv = total_variation(freq, expected);
  return {"rank_tv_vs_segment_model_alpha_" + format_number(alpha), tv, 0.01, tv < 0.01};
}

std::vector<CheckResult> tree_sum_checks(const ValidationOptions& options, Rng& rng) {
  SumTree tree(1000);
  std::uniform_int_distribution<std::size_t> leaf(0, 999);
  std::uniform_real_distribution<double> value(0.0, 10.0);
  for (int i = 0; i < 100'000; ++i) tree.set_leaf(leaf(rng), value(rng));
  if (options.inject_fault == "tree-sum") tree.corrupt_node(1, tree.nodes()[1] + 1.0);

  double leaves = 0.0;
  for (std::size_t i = 0; i < tree.capacity(); ++i) leaves += tree.leaf(i);
  const double rel = std::abs(tree.total() - leaves) / std::max(leaves, 1e-300);

  double worst = 0.0;
  const auto nodes = tree.nodes();
  for (std::size_t node = 0; node + 1 < tree.leaf_count(); ++node) {
    const double expected = nodes[2 * node + 1] + nodes[2 * node + 2];
    worst = std::max(worst, std::abs(nodes[node] - expected) / (1.0 + std::abs(nodes[node])));
  }
  return {{"tree_sum_root_vs_leaves", rel, 1e-6, rel <= 1e-6},
          {"tree_sum_internal_nodes", worst, 1e-9, worst <= 1e-9}};
}

CheckResult heap_check(Rng& rng) {
  RankStore store(0);
  constexpr std::size_t kSlots = 257;
  std::uniform_real_distribution<double> key(0.0, 1.0);
  for (SlotId s = 0; s < kSlots; ++s) store.insert(s, key(rng));
  std::uniform_int_distribution<SlotId> slot(0, kSlots - 1);
  double violations = 0;
  for (int i = 0; i < 20'000; ++i) {
    store.update_key(slot(rng), key(rng));
    if (!store.heap_property_holds() || !store.inverse_consistent()) violations += 1;
  }
  store.full_sort();
  if (!store.sorted()) violations += 1;
  return {"heap_property_and_sort", violations, 0.0, violations == 0};
}

CheckResult partition_check() {
  struct Fixture {
    double alpha;
    std::vector<std::size_t> ks;
  };
  const std::vector<Fixture> fixtures = {{0.0, {1, 2, 4, 8, 16, 32}},
                                         {0.6, {1, 2, 4, 8, 16, 32}},
                                         {0.7, {1, 2, 4, 8, 16, 32}},
                                         {1.0, {1, 2, 4}}};
  constexpr std::size_t kN = 100'000;
  double worst = 0.0;
  for (const Fixture& f : fixtures) {
    const std::vector<double> mass = power_law_masses(kN, f.alpha);
    for (std::size_t k : f.ks) {
      const Partition part = build_partition(kN, f.alpha, k);
      for (std::size_t j = 0; j < k; ++j) {
        double m = 0.0;
        for (std::size_t r = part.boundaries[j]; r < part.boundaries[j + 1]; ++r) m += mass[r];
        const double kd = static_cast<double>(k);
        worst = std::max(worst, std::abs(m - 1.0 / kd) * 2.0 * kd);
      }
    }
  }
  // Deviation measured in units of the 1/(2k) tolerance.
  return {"partition_mass_balance", worst, 1.0, worst <= 1.0};
}

CheckResult unbiasedness_check(const ValidationOptions& options, Rng& rng) {
  constexpr std::size_t kItems = 8;
  SumTree tree(kItems);
  const std::vector<double> p = random_priorities(rng, kItems);
  std::vector<double> g(kItems);
  std::normal_distribution<double> normal(1.0, 2.0);
  for (double& x : g) x = normal(rng);
  const std::vector<double> probs = sampling_probabilities(p, 0.7);
  for (std::size_t i = 0; i < kItems; ++i) tree.set_leaf(i, probs[i]);

  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t d = 0; d < options.draws; ++d) {
    const std::size_t i = tree.sample_stratified(1, rng).leaves[0];
    const double x = g[i] / (static_cast<double>(kItems) * probs[i]);
    sum += x;
    sum_sq += x * x;
  }
  const double draws = static_cast<double>(options.draws);
  const double mean = sum / draws;
  const double var = std::max(sum_sq / draws - mean * mean, 0.0);
  const double se = std::sqrt(var / draws);
  const double target = std::accumulate(g.begin(), g.end(), 0.0) / kItems;
  const double z = std::abs(mean - target) / se;
  return {"is_unbiasedness_beta1_z", z, 3.0, z <= 3.0};
}

}  // namespace

std::vector<CheckResult> validate_samplers(const ValidationOptions& options) {
  Rng rng(options.seed);
  std::vector<CheckResult> checks;
  for (double alpha : {0.0, 0.6, 0.7, 1.0}) checks.push_back(sumtree_tv_check(alpha, options, rng));
  checks.push_back(sumtree_uniform_check(options, rng));
  for (double alpha : {0.0, 0.7, 1.0}) {
    checks.push_back(rank_self_consistency_check(alpha, options, rng));
  }
  for (CheckResult& c : tree_sum_checks(options, rng)) checks.push_back(std::move(c));
  checks.push_back(heap_check(rng));
  checks.push_back(partition_check());
  checks.push_back(unbiasedness_check(options, rng));
  return checks;
}

std::string format_report(const std::vector<CheckResult>& checks) {
  std::ostringstream out;
  for (const CheckResult& c : checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << " measured=" << format_number(c.measured)
        << " threshold=" << format_number(c.threshold) << '\n';
  }
  return out.str();
}

}  // namespace per::bench
