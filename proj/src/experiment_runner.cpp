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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <string>
#include <system_error>
#include <vector>

#include "wair/experiment.hpp"

namespace wair {
namespace {

void put_double(std::ostream& out, double v) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), v);
  out.write(buf, result.ptr - buf);
}

std::string_view termination_name(SimTermination t) {
  switch (t) {
    case SimTermination::kCompleted:
      return "completed";
    case SimTermination::kInfeasible:
      return "infeasible";
    case SimTermination::kNonFinite:
      return "non_finite";
  }
  return "unknown";
}

double percentile(std::vector<double> sorted, double p) {
  if (sorted.empty()) return 0.0;
  const auto rank = static_cast<std::size_t>(
      std::ceil(p / 100.0 * static_cast<double>(sorted.size())));
  return sorted[std::clamp<std::size_t>(rank, 1, sorted.size()) - 1];
}

struct RunOutcome {
  int code = kExitSuccess;
  std::string message;
};

RunOutcome run_one(const std::string& name, const SimConfig& config,
                   const RunOptions& options) {
  RunOutcome outcome;
  const SimLog log = run(config);
  const RunSummary summary = summarize(name, log, config, !options.deterministic);

  const auto csv_path = options.output_dir / (name + ".csv");
  const auto summary_path = options.output_dir / (name + ".summary.txt");
  std::ofstream csv(csv_path);
  std::ofstream sum(summary_path);
  if (!csv || !sum) {
    return {kExitIoError, "cannot write outputs for run '" + name + "' in " +
                              options.output_dir.string()};
  }
  write_csv(csv, log, !options.deterministic);
  write_summary(sum, summary);
  if (options.gnuplot) {
    std::ofstream plot(options.output_dir / (name + ".gp"));
    if (!plot) return {kExitIoError, "cannot write gnuplot script for " + name};
    write_gnuplot_script(plot, name + ".csv");
  }
  csv.close();
  sum.close();
  if (csv.fail() || sum.fail()) {
    return {kExitIoError, "write failed for run '" + name + "'"};
  }

  if (log.termination != SimTermination::kCompleted) {
    outcome.code = kExitInfeasibleRun;
    outcome.message = name + ": " + log.message;
  } else {
    outcome.message = name + ": " + std::to_string(log.records.size()) + " rows";
  }
  return outcome;
}

bool prepare_output_dir(const RunOptions& options) {
  std::error_code ec;
  std::filesystem::create_directories(options.output_dir, ec);
  return !ec && std::filesystem::is_directory(options.output_dir);
}

}  // namespace

RunSummary summarize(const std::string& scenario, const SimLog& log,
                     const SimConfig& config, bool include_timing) {
  RunSummary s;
  s.scenario = scenario;
  s.termination = std::string(termination_name(log.termination));
  s.message = log.message;
  s.rows = log.records.size();
  s.solves = log.solves.size();

  double sq_pos = 0.0, sq_vel = 0.0;
  double friction_slack = INFINITY, normal_slack = INFINITY;
  for (const SimRecord& r : log.records) {
    sq_pos += std::pow(r.state.x_com - r.x_ref, 2);
    sq_vel += std::pow(r.state.xdot_com - r.xdot_ref, 2);
    friction_slack =
        std::min(friction_slack, config.mpc.mu_s * r.grf.lambda_y - r.grf.lambda_x);
    normal_slack =
        std::min(normal_slack, r.grf.lambda_y - config.mpc.lambda_min_n);
  }
  if (!log.records.empty()) {
    const double n = static_cast<double>(log.records.size());
    s.tracking_rms_position = std::sqrt(sq_pos / n);
    s.tracking_rms_velocity = std::sqrt(sq_vel / n);
    s.min_friction_slack = friction_slack;
    s.min_normal_slack = normal_slack;
    s.max_cone_violation =
        std::max(0.0, -std::min(friction_slack, normal_slack));
  }

  std::vector<double> times_us;
  double iter_sum = 0.0;
  for (const SolveStats& st : log.solves) {
    times_us.push_back(st.solve_time * 1e6);
    iter_sum += st.iterations;
    s.iterations_max = std::max(s.iterations_max, st.iterations);
    if (st.status != QpStatus::kOptimal) ++s.nonoptimal_solves;
  }
  if (!log.solves.empty()) {
    s.iterations_mean = iter_sum / static_cast<double>(log.solves.size());
    if (include_timing) {
      std::sort(times_us.begin(), times_us.end());
      double total = 0.0;
      for (double t : times_us) total += t;
      s.solve_time_mean_us = total / static_cast<double>(times_us.size());
      s.solve_time_max_us = times_us.back();
      s.solve_time_p50_us = percentile(times_us, 50.0);
      s.solve_time_p95_us = percentile(times_us, 95.0);
      s.solve_time_p99_us = percentile(times_us, 99.0);
    }
  }
  return s;
}

void write_csv(std::ostream& out, const SimLog& log, bool include_timing) {
  out << kCsvHeader << '\n';
  for (const SimRecord& r : log.records) {
    const double fields[] = {r.t,
                             r.state.x_com,
                             r.state.xdot_com,
                             r.x_cop,
                             r.grf.lambda_x,
                             r.grf.lambda_y,
                             r.thruster.f_x,
                             r.thruster.f_y,
                             r.x_ref,
                             r.xdot_ref,
                             r.world_position.x(),
                             r.world_position.y()};
    for (double v : fields) {
      put_double(out, v);
      out << ',';
    }
    out << r.solver.iterations << ',';
    put_double(out, include_timing ? r.solver.solve_time * 1e6 : 0.0);
    out << ',' << to_string(r.solver.status) << '\n';
  }
}

void write_summary(std::ostream& out, const RunSummary& s) {
  auto kv = [&](std::string_view key, double v) {
    out << key << " = ";
    put_double(out, v);
    out << '\n';
  };
  out << "scenario = " << s.scenario << '\n';
  out << "termination = " << s.termination << '\n';
  if (!s.message.empty()) out << "message = " << s.message << '\n';
  out << "rows = " << s.rows << '\n';
  out << "solves = " << s.solves << '\n';
  out << "nonoptimal_solves = " << s.nonoptimal_solves << '\n';
  kv("tracking_rms_position_m", s.tracking_rms_position);
  kv("tracking_rms_velocity_mps", s.tracking_rms_velocity);
  kv("min_friction_slack_n", s.min_friction_slack);
  kv("min_normal_slack_n", s.min_normal_slack);
  kv("max_cone_violation_n", s.max_cone_violation);
  kv("solve_time_mean_us", s.solve_time_mean_us);
  kv("solve_time_max_us", s.solve_time_max_us);
  kv("solve_time_p50_us", s.solve_time_p50_us);
  kv("solve_time_p95_us", s.solve_time_p95_us);
  kv("solve_time_p99_us", s.solve_time_p99_us);
  kv("iterations_mean", s.iterations_mean);
  out << "iterations_max = " << s.iterations_max << '\n';
}

void write_gnuplot_script(std::ostream& out, const std::string& csv_name) {
  out << "set datafile separator ','\n"
      << "set key autotitle columnhead\n"
      << "set multiplot layout 3,1\n"
      << "set title 'Tracking (slope frame)'\n"
      << "plot '" << csv_name << "' using 1:2 with lines, '' using 1:9 with lines, "
      << "'' using 1:3 with lines, '' using 1:10 with lines\n"
      << "set title 'Ground reaction forces'\n"
      << "plot '" << csv_name << "' using 1:5 with lines, '' using 1:6 with lines\n"
      << "set title 'Thruster forces'\n"
      << "plot '" << csv_name << "' using 1:7 with lines, '' using 1:8 with lines\n"
      << "unset multiplot\n";
}

int run_experiment(const ExperimentSpec& spec, const RunOptions& options) {
  if (!prepare_output_dir(options)) return kExitIoError;
  const RunOutcome outcome = run_one(spec.scenario, spec.sim, options);
  if (options.progress) *options.progress << outcome.message << '\n';
  return outcome.code;
}

int run_sweep(const ExperimentSpec& spec, const RunOptions& options) {
  if (!prepare_output_dir(options)) return kExitIoError;
  const std::vector<MaterializedRun> runs = materialize_runs(spec);
  std::vector<RunOutcome> outcomes(runs.size());
  const int threads = std::max(1, options.parallel);
  const auto count = static_cast<long long>(runs.size());

#pragma omp parallel for num_threads(threads) schedule(dynamic)
  for (long long i = 0; i < count; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      outcomes[idx] = run_one(runs[idx].name, runs[idx].config, options);
    } catch (const std::exception& e) {
      outcomes[idx] = {kExitConfigError, runs[idx].name + ": " + e.what()};
    }
  }

  int code = kExitSuccess;
  for (const RunOutcome& o : outcomes) {
    if (options.progress) *options.progress << o.message << '\n';
    if (o.code == kExitIoError) {
      code = kExitIoError;
    } else if (o.code != kExitSuccess && code == kExitSuccess) {
      code = o.code;
    }
  }
  return code;
}

}  // namespace wair
