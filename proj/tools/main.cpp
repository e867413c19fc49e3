// Copyright 2026 The WAIR-MPC Authors
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

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wair/experiment.hpp"
#include "wair/verify.hpp"

namespace {

struct Common {
  std::string output_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool strict = false;
  bool deterministic = false;
  bool gnuplot = false;
  int parallel = 1;
};

int load(const std::string& path, const Common& common, wair::ExperimentSpec& spec) {
  try {
    std::vector<std::string> warnings;
    spec = wair::parse_config_file(path, common.strict, &warnings);
    for (const std::string& w : warnings) std::cerr << "warning: " << w << '\n';
  } catch (const wair::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return wair::kExitIoError;
  } catch (const wair::ConfigError& e) {
    std::cerr << path;
    if (e.line() > 0) std::cerr << ':' << e.line();
    std::cerr << ": error: " << e.what() << '\n';
    return wair::kExitConfigError;
  }
  if (!common.output_dir.empty()) spec.output_dir = common.output_dir;
  if (common.seed_set) spec.seed = common.seed;
  return wair::kExitSuccess;
}

wair::RunOptions options_for(const wair::ExperimentSpec& spec, const Common& common) {
  wair::RunOptions opt;
  opt.output_dir = spec.output_dir;
  opt.deterministic = common.deterministic;
  opt.gnuplot = common.gnuplot;
  opt.parallel = common.parallel;
  opt.progress = &std::cout;
  return opt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inclined-running VLIP model predictive control experiments"};
  app.require_subcommand(1);

  Common common;
  std::string config_path;
  std::string suite_text;

  auto add_run_flags = [&](CLI::App* sub) {
    sub->add_option("config", config_path, "YAML experiment file")->required();
    sub->add_option("--output-dir", common.output_dir, "Directory for CSV and summary files");
    sub->add_option("--seed", common.seed, "Seed recorded with the run")
        ->each([&](const std::string&) { common.seed_set = true; });
    sub->add_flag("--strict-config", common.strict, "Reject unknown configuration keys");
    sub->add_flag("--deterministic", common.deterministic,
                  "Write zero solve times so output is byte-reproducible");
    sub->add_flag("--gnuplot", common.gnuplot, "Also write a gnuplot script per run");
  };

  CLI::App* run_cmd = app.add_subcommand("run", "Run one closed-loop simulation");
  add_run_flags(run_cmd);
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Run every point of a parameter sweep");
  add_run_flags(sweep_cmd);
  sweep_cmd->add_option("--parallel", common.parallel, "Concurrent runs")
      ->check(CLI::PositiveNumber);

  CLI::App* verify_cmd = app.add_subcommand("verify", "Run a self-check suite");
  verify_cmd->add_option("suite", suite_text, "qp_oracle | rollout | convergence | invariants")
      ->required()
      ->check(CLI::IsMember({"qp_oracle", "rollout", "convergence", "invariants"}));
  verify_cmd->add_option("--seed", common.seed, "Random seed")->default_val(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? wair::kExitSuccess : wair::kExitConfigError;
  }

  if (verify_cmd->parsed()) {
    const auto suite = wair::verification::parse_suite(suite_text);
    const auto report = wair::verification::run_suite(*suite, common.seed);
    wair::verification::print_report(std::cout, report);
    return report.passed() ? wair::kExitSuccess : 1;
  }

  wair::ExperimentSpec spec;
  if (const int code = load(config_path, common, spec); code != wair::kExitSuccess) {
    return code;
  }
  try {
    const wair::RunOptions opt = options_for(spec, common);
    const int code = run_cmd->parsed() ? wair::run_experiment(spec, opt)
                                       : wair::run_sweep(spec, opt);
    if (code == wair::kExitIoError) {
      std::cerr << "error: cannot write to " << opt.output_dir << '\n';
    }
    return code;
  } catch (const wair::ConfigError& e) {
    std::cerr << config_path << ": error: " << e.what() << '\n';
    return wair::kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << config_path << ": error: " << e.what() << '\n';
    return wair::kExitConfigError;
  }
}
