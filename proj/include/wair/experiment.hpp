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

#ifndef WAIR_EXPERIMENT_HPP_
#define WAIR_EXPERIMENT_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wair/simulator.hpp"

namespace wair {

enum ExitCode : int {
  kExitSuccess = 0,
  kExitConfigError = 2,
  kExitInfeasibleRun = 3,
  kExitIoError = 4,
};

// Raised for malformed or out-of-range configuration. line is 1-based, or 0
// when the problem is not tied to a single line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, int line = 0, std::string field = {});

  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepAxis {
  std::string path;                 // e.g. "slope_deg", "mpc.lambda_min_n"
  std::vector<std::string> values;  // scalar text, parsed like the base key
};

struct ExperimentSpec {
  std::string scenario = "default";
  SimConfig sim;
  std::vector<SweepAxis> sweep;
  std::string output_dir = ".";
  std::uint64_t seed = 1;
};

// Parses the YAML experiment description. Absent keys keep their defaults;
// an empty document yields the default 40 degree scenario. Unknown keys are
// errors when strict is set and are reported through warnings otherwise.
// Throws ConfigError.
ExperimentSpec parse_config(std::string_view text, bool strict = true,
                            std::vector<std::string>* warnings = nullptr);
// Throws IoError when the file cannot be read, ConfigError otherwise.
ExperimentSpec parse_config_file(const std::filesystem::path& path,
                                 bool strict = true,
                                 std::vector<std::string>* warnings = nullptr);

// Sets one configuration value by parameter path. Throws ConfigError.
void apply_parameter(ExperimentSpec& spec, std::string_view path,
                     std::string_view value);

// All parameter paths accepted in config files and sweeps.
std::vector<std::string> parameter_paths();

struct MaterializedRun {
  std::string name;  // file stem
  SimConfig config;
};

// Cartesian product of the sweep axes applied to the base spec; a spec
// without sweep axes yields the base run only.
std::vector<MaterializedRun> materialize_runs(const ExperimentSpec& spec);

struct RunSummary {
  std::string scenario;
  std::string termination;
  std::string message;
  std::size_t rows = 0;
  std::size_t solves = 0;
  std::size_t nonoptimal_solves = 0;
  double tracking_rms_position = 0.0;  // m
  double tracking_rms_velocity = 0.0;  // m/s
  double min_friction_slack = 0.0;     // N, min(mu*lambda_y - lambda_x)
  double min_normal_slack = 0.0;       // N, min(lambda_y - lambda_min_n)
  double max_cone_violation = 0.0;     // N, max(0, -min slack)
  double solve_time_mean_us = 0.0;
  double solve_time_max_us = 0.0;
  double solve_time_p50_us = 0.0;
  double solve_time_p95_us = 0.0;
  double solve_time_p99_us = 0.0;
  double iterations_mean = 0.0;
  int iterations_max = 0;
};

RunSummary summarize(const std::string& scenario, const SimLog& log,
                     const SimConfig& config, bool include_timing = true);

inline constexpr std::string_view kCsvHeader =
    "t,x_com,xdot_com,x_cop,lambda_x,lambda_y,F_x,F_y,x_ref,xdot_ref,world_X,"
    "world_Y,qp_iters,qp_solve_us,qp_status";

// One row per record; doubles in shortest round-trip decimal. With
// include_timing unset, qp_solve_us is written as 0 so output is reproducible.
void write_csv(std::ostream& out, const SimLog& log, bool include_timing = true);
void write_summary(std::ostream& out, const RunSummary& summary);
void write_gnuplot_script(std::ostream& out, const std::string& csv_name);

struct RunOptions {
  std::filesystem::path output_dir = ".";
  bool deterministic = false;
  bool gnuplot = false;
  int parallel = 1;
  std::ostream* progress = nullptr;
};

// Runs the base scenario. Returns an ExitCode.
int run_experiment(const ExperimentSpec& spec, const RunOptions& options);
// Runs every materialized sweep point, up to options.parallel at a time.
int run_sweep(const ExperimentSpec& spec, const RunOptions& options);

}  // namespace wair

#endif  // WAIR_EXPERIMENT_HPP_
