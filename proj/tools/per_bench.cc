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

// per_bench: Blind Cliffwalk sweeps and sampler validation.
//
//   per_bench sweep [--config FILE] [--sizes 8-12] [--strategies uniform,oracle] ...
//   per_bench run --n 8 --strategy greedy_td --representation tabular --seed 1
//   per_bench validate [--inject-fault tree-sum]

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "per/bench.hpp"

namespace {

using namespace per;
using namespace per::bench;

struct SweepFlags {
  std::string config_file;
  std::optional<std::string> sizes, strategies, representations, seeds, budget, alpha, beta0,
      eta, clip_td, is_weights, out_dir, jobs, minibatch, timing;
  bool quiet = false;
};

int run_sweep_command(const SweepFlags& flags) {
  SweepConfig config = default_sweep_config();
  try {
    if (!flags.config_file.empty()) apply_config_file(config, flags.config_file);
    const std::pair<const char*, const std::optional<std::string>*> overrides[] = {
        {"sizes", &flags.sizes},         {"strategies", &flags.strategies},
        {"representations", &flags.representations},
        {"seeds", &flags.seeds},         {"budget", &flags.budget},
        {"alpha", &flags.alpha},         {"beta0", &flags.beta0},
        {"eta", &flags.eta},             {"clip_td", &flags.clip_td},
        {"is_weights", &flags.is_weights}, {"out_dir", &flags.out_dir},
        {"jobs", &flags.jobs},           {"minibatch", &flags.minibatch},
        {"timing", &flags.timing}};
    for (const auto& [key, value] : overrides) {
      if (*value) {
        try {
          apply_setting(config, key, **value);
        } catch (const ConfigError& e) {
          throw ConfigError(std::string("--") + key + ": " + e.what());
        }
      }
    }
    validate(config);
  } catch (const ConfigError& e) {
    std::cerr << "per_bench: " << e.what() << '\n';
    return kExitUsage;
  }

  const ProgressFn progress = [&](const RunRecord& r, std::size_t done, std::size_t total) {
    if (flags.quiet) return;
    std::fprintf(stderr, "[%zu/%zu] n=%d %s/%s seed=%llu updates=%llu%s\n", done, total, r.n,
                 std::string(to_string(r.strategy)).c_str(),
                 std::string(to_string(r.representation)).c_str(),
                 static_cast<unsigned long long>(r.seed),
                 static_cast<unsigned long long>(r.updates), r.censored ? " (censored)" : "");
  };
  const SweepResult result = run_sweep(config, progress);
  const auto [raw, summary] = write_results(result, config);
  std::cout << raw << '\n' << summary << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prioritized replay benchmark on the Blind Cliffwalk"};
  app.require_subcommand(1);

  SweepFlags sweep;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Sweep sizes, strategies and seeds");
  sweep_cmd->add_option("--config", sweep.config_file, "key = value configuration file");
  sweep_cmd->add_option("--sizes", sweep.sizes, "Problem sizes, e.g. 2-16 or 8,10,12");
  sweep_cmd->add_option("--strategies", sweep.strategies,
                        "uniform,oracle,greedy_td,rank_stochastic,proportional_stochastic");
  sweep_cmd->add_option("--representations", sweep.representations, "tabular,linear");
  sweep_cmd->add_option("--seeds", sweep.seeds, "Seeds, e.g. 1-10");
  sweep_cmd->add_option("--budget", sweep.budget, "Update budget per run");
  sweep_cmd->add_option("--alpha", sweep.alpha, "Prioritization exponent override");
  sweep_cmd->add_option("--beta0", sweep.beta0, "Initial importance-sampling exponent");
  sweep_cmd->add_option("--eta", sweep.eta, "Step size");
  sweep_cmd->add_option("--clip-td", sweep.clip_td, "on|off");
  sweep_cmd->add_option("--is-weights", sweep.is_weights, "on|off");
  sweep_cmd->add_option("--minibatch", sweep.minibatch, "Stochastic minibatch size");
  sweep_cmd->add_option("--timing", sweep.timing, "on|off; off writes wall_ms as 0");
  sweep_cmd->add_option("--out-dir", sweep.out_dir, "Output directory");
  sweep_cmd->add_option("--jobs", sweep.jobs, "Parallel runs");
  sweep_cmd->add_flag("--quiet", sweep.quiet, "No per-run progress");

  TrainingConfig single;
  std::string strategy_name = "uniform", representation_name = "tabular";
  CLI::App* run_cmd = app.add_subcommand("run", "Run a single training trial");
  run_cmd->add_option("--n", single.n, "Number of states")->check(CLI::Range(2, 16));
  run_cmd->add_option("--strategy", strategy_name, "Replay strategy");
  run_cmd->add_option("--representation", representation_name, "tabular|linear");
  run_cmd->add_option("--seed", single.seed, "Seed");
  run_cmd->add_option("--budget", single.budget, "Update budget");
  run_cmd->add_option("--target-period", single.target_period, "Updates between target copies");

  ValidationOptions validation;
  CLI::App* validate_cmd = app.add_subcommand("validate", "Sampler validation suite");
  validate_cmd->add_option("--seed", validation.seed, "Seed");
  validate_cmd->add_option("--draws", validation.draws, "Monte Carlo draws per check");
  validate_cmd->add_option("--inject-fault", validation.inject_fault, "tree-sum")
      ->check(CLI::IsMember({"", "tree-sum"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*sweep_cmd) return run_sweep_command(sweep);

  if (*run_cmd) {
    const auto strategy = parse_strategy(strategy_name);
    const auto representation = parse_representation(representation_name);
    if (!strategy || !representation) {
      std::cerr << "per_bench: unknown strategy or representation\n";
      return kExitUsage;
    }
    single.strategy = *strategy;
    single.representation = *representation;
    const RunRecord r = run_training(single);
    std::cout << raw_csv({r}, true);
    return kExitOk;
  }

  const auto checks = validate_samplers(validation);
  std::cout << format_report(checks);
  for (const CheckResult& c : checks) {
    if (!c.passed) return kExitValidation;
  }
  return kExitOk;
}
