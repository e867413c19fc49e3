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

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <system_error>

#include <yaml-cpp/yaml.h>

#include "wair/experiment.hpp"

namespace wair {
namespace {

using Setter = std::function<void(ExperimentSpec&, std::string_view)>;

double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

double parse_double(std::string_view path, std::string_view text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw ConfigError("expected a finite number, got '" + std::string(text) + "'",
                      0, std::string(path));
  }
  return value;
}

long long parse_integer(std::string_view path, std::string_view text) {
  long long value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("expected an integer, got '" + std::string(text) + "'", 0,
                      std::string(path));
  }
  return value;
}

void require(bool ok, std::string_view path, const std::string& what) {
  if (!ok) throw ConfigError(what, 0, std::string(path));
}

// A number setter with an optional range check.
Setter number(std::function<void(ExperimentSpec&, double)> set,
              std::function<bool(double)> valid = {}, std::string what = {}) {
  return [set = std::move(set), valid = std::move(valid),
          what = std::move(what)](ExperimentSpec& spec, std::string_view text) {
    // The path is attached by the caller.
    const double v = parse_double({}, text);
    if (valid && !valid(v)) throw ConfigError(what + ", got " + std::string(text));
    set(spec, v);
  };
}

bool positive(double v) { return v > 0.0; }
bool non_negative(double v) { return v >= 0.0; }

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = [] {
    std::map<std::string, Setter, std::less<>> t;
    t["scenario"] = [](ExperimentSpec& s, std::string_view v) {
      require(!v.empty(), "scenario", "scenario name must be non-empty");
      s.scenario = std::string(v);
    };
    t["output_dir"] = [](ExperimentSpec& s, std::string_view v) {
      s.output_dir = std::string(v);
    };
    t["seed"] = [](ExperimentSpec& s, std::string_view v) {
      const long long seed = parse_integer("seed", v);
      require(seed >= 0, "seed", "seed must be non-negative");
      s.seed = static_cast<std::uint64_t>(seed);
    };
    t["duration"] = number([](ExperimentSpec& s, double v) { s.sim.duration = v; },
                           non_negative, "duration must be >= 0");
    t["sim_dt"] = number([](ExperimentSpec& s, double v) { s.sim.sim_dt = v; },
                         positive, "sim_dt must be > 0");
    t["mpc_period"] = number([](ExperimentSpec& s, double v) { s.sim.mpc_period = v; },
                             positive, "mpc_period must be > 0");
    t["slope_deg"] = number(
        [](ExperimentSpec& s, double v) { s.sim.slope_alpha = deg_to_rad(v); },
        [](double v) { return std::abs(v) < 90.0; },
        "slope_deg must satisfy |slope_deg| < 90");
    t["cop_stride"] = number([](ExperimentSpec& s, double v) { s.sim.cop_stride = v; },
                             positive, "cop_stride must be > 0");
    t["cop_update_rule"] = [](ExperimentSpec& s, std::string_view v) {
      require(v == "symmetric_about_cop", "cop_update_rule",
              "cop_update_rule must be 'symmetric_about_cop'");
      s.sim.cop_update_rule = CopUpdateRule::kSymmetricAboutCop;
    };
    t["mass"] = number([](ExperimentSpec& s, double v) { s.sim.vlip.mass = v; },
                       positive, "mass must be > 0");
    t["y0"] = number([](ExperimentSpec& s, double v) { s.sim.vlip.y0 = v; }, positive,
                     "y0 must be > 0");
    t["gravity"] = number([](ExperimentSpec& s, double v) { s.sim.vlip.gravity = v; },
                          positive, "gravity must be > 0");
    t["cruise_speed"] = number(
        [](ExperimentSpec& s, double v) { s.sim.reference_spec.cruise_speed = v; });
    t["step_time"] = number(
        [](ExperimentSpec& s, double v) { s.sim.reference_spec.step_time = v; },
        non_negative, "step_time must be >= 0");
    t["step_velocity"] = number(
        [](ExperimentSpec& s, double v) { s.sim.reference_spec.step_velocity = v; });
    t["initial_x_com"] = number(
        [](ExperimentSpec& s, double v) { s.sim.initial_state.x_com = v; });
    t["initial_xdot_com"] = number(
        [](ExperimentSpec& s, double v) { s.sim.initial_state.xdot_com = v; });

    t["mpc.horizon"] = [](ExperimentSpec& s, std::string_view v) {
      const long long h = parse_integer("mpc.horizon", v);
      require(h >= 1 && h <= 1000, "mpc.horizon", "horizon must be in [1, 1000]");
      s.sim.mpc.horizon = static_cast<int>(h);
    };
    t["mpc.dt"] = number([](ExperimentSpec& s, double v) { s.sim.mpc.dt = v; },
                         positive, "dt must be > 0");
    t["mpc.q_position"] = number(
        [](ExperimentSpec& s, double v) { s.sim.mpc.q_weight(0) = v; }, non_negative,
        "q_position must be >= 0");
    t["mpc.q_velocity"] = number(
        [](ExperimentSpec& s, double v) { s.sim.mpc.q_weight(1) = v; }, non_negative,
        "q_velocity must be >= 0");
    t["mpc.u_min_x"] = number([](ExperimentSpec& s, double v) { s.sim.mpc.u_min(0) = v; });
    t["mpc.u_max_x"] = number([](ExperimentSpec& s, double v) { s.sim.mpc.u_max(0) = v; });
    t["mpc.u_min_y"] = number([](ExperimentSpec& s, double v) { s.sim.mpc.u_min(1) = v; });
    t["mpc.u_max_y"] = number([](ExperimentSpec& s, double v) { s.sim.mpc.u_max(1) = v; });
    t["mpc.mu_s"] = number([](ExperimentSpec& s, double v) { s.sim.mpc.mu_s = v; },
                           positive, "mu_s must be > 0");
    t["mpc.lambda_min_n"] = number(
        [](ExperimentSpec& s, double v) { s.sim.mpc.lambda_min_n = v; }, non_negative,
        "lambda_min_n must be >= 0");
    t["mpc.friction_mode"] = [](ExperimentSpec& s, std::string_view v) {
      if (v == "one_sided") {
        s.sim.mpc.friction_mode = FrictionMode::kOneSided;
      } else if (v == "two_sided") {
        s.sim.mpc.friction_mode = FrictionMode::kTwoSided;
      } else {
        throw ConfigError("friction_mode must be 'one_sided' or 'two_sided'");
      }
    };
    t["mpc.linearization"] = [](ExperimentSpec& s, std::string_view v) {
      if (v == "full_taylor") {
        s.sim.mpc.linearization = LinearizationMode::kFullTaylor;
      } else if (v == "simplified") {
        s.sim.mpc.linearization = LinearizationMode::kSimplified;
      } else {
        throw ConfigError("linearization must be 'full_taylor' or 'simplified'");
      }
    };
    t["mpc.solver_tolerance"] = number(
        [](ExperimentSpec& s, double v) { s.sim.mpc.solver.tolerance = v; }, positive,
        "solver_tolerance must be > 0");
    t["mpc.solver_max_iterations"] = [](ExperimentSpec& s, std::string_view v) {
      const long long it = parse_integer("mpc.solver_max_iterations", v);
      require(it >= 1 && it <= 100000, "mpc.solver_max_iterations",
              "solver_max_iterations must be in [1, 100000]");
      s.sim.mpc.solver.max_iterations = static_cast<int>(it);
    };
    t["mpc.solver_regularization"] = number(
        [](ExperimentSpec& s, double v) { s.sim.mpc.solver.regularization = v; },
        non_negative, "solver_regularization must be >= 0");
    return t;
  }();
  return table;
}

int line_of(const YAML::Node& node) { return node.Mark().line + 1; }

std::string scalar_text(const YAML::Node& node, const std::string& path) {
  if (!node.IsScalar()) {
    throw ConfigError("expected a scalar value", line_of(node), path);
  }
  return node.Scalar();
}

void set_with_context(ExperimentSpec& spec, const std::string& path,
                      const std::string& value, int line) {
  try {
    apply_parameter(spec, path, value);
  } catch (const ConfigError& e) {
    throw ConfigError(e.what(), line, path);
  }
}

}  // namespace

ConfigError::ConfigError(const std::string& message, int line, std::string field)
    : std::runtime_error(message), line_(line), field_(std::move(field)) {}

void apply_parameter(ExperimentSpec& spec, std::string_view path,
                     std::string_view value) {
  const auto& table = setters();
  const auto it = table.find(path);
  if (it == table.end()) {
    throw ConfigError("unknown parameter '" + std::string(path) + "'", 0,
                      std::string(path));
  }
  try {
    it->second(spec, value);
  } catch (const ConfigError& e) {
    throw ConfigError(e.what(), e.line(), std::string(path));
  }
}

std::vector<std::string> parameter_paths() {
  std::vector<std::string> paths;
  for (const auto& [key, setter] : setters()) paths.push_back(key);
  return paths;
}

ExperimentSpec parse_config(std::string_view text, bool strict,
                            std::vector<std::string>* warnings) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw ConfigError("malformed YAML: " + e.msg, e.mark.line + 1);
  }

  ExperimentSpec spec;
  if (root.IsNull()) {
    spec.sim.validate();
    return spec;
  }
  if (!root.IsMap()) {
    throw ConfigError("top level must be a mapping of keys to values",
                      line_of(root));
  }

  auto unknown = [&](const std::string& path, int line) {
    const std::string msg = "unknown key '" + path + "'";
    if (strict) throw ConfigError(msg, line, path);
    if (warnings) warnings->push_back("line " + std::to_string(line) + ": " + msg);
  };

  YAML::Node sweep_node;
  for (const auto& entry : root) {
    const std::string key = entry.first.as<std::string>();
    const int line = line_of(entry.first);
    if (key == "sweep") {
      sweep_node = entry.second;
      continue;
    }
    if (key == "mpc") {
      if (!entry.second.IsMap()) throw ConfigError("'mpc' must be a mapping", line, key);
      for (const auto& sub : entry.second) {
        const std::string path = "mpc." + sub.first.as<std::string>();
        const int sub_line = line_of(sub.first);
        if (!setters().contains(path)) {
          unknown(path, sub_line);
          continue;
        }
        set_with_context(spec, path, scalar_text(sub.second, path), sub_line);
      }
      continue;
    }
    if (!setters().contains(key)) {
      unknown(key, line);
      continue;
    }
    set_with_context(spec, key, scalar_text(entry.second, key), line);
  }

  if (sweep_node && !sweep_node.IsNull()) {
    if (!sweep_node.IsMap()) {
      throw ConfigError("'sweep' must map parameter paths to value lists",
                        line_of(sweep_node), "sweep");
    }
    for (const auto& axis_node : sweep_node) {
      SweepAxis axis;
      axis.path = axis_node.first.as<std::string>();
      const int line = line_of(axis_node.first);
      if (!setters().contains(axis.path) || axis.path == "scenario" ||
          axis.path == "output_dir" || axis.path == "seed") {
        throw ConfigError("cannot sweep over '" + axis.path + "'", line, axis.path);
      }
      if (axis_node.second.IsSequence()) {
        for (const auto& v : axis_node.second) {
          axis.values.push_back(scalar_text(v, axis.path));
        }
      } else {
        axis.values.push_back(scalar_text(axis_node.second, axis.path));
      }
      if (axis.values.empty()) {
        throw ConfigError("sweep axis has no values", line, axis.path);
      }
      for (const auto& v : axis.values) {
        ExperimentSpec probe = spec;
        set_with_context(probe, axis.path, v, line);
      }
      spec.sweep.push_back(std::move(axis));
    }
  }

  try {
    spec.sim.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return spec;
}

ExperimentSpec parse_config_file(const std::filesystem::path& path, bool strict,
                                 std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), strict, warnings);
}

std::vector<MaterializedRun> materialize_runs(const ExperimentSpec& spec) {
  std::vector<MaterializedRun> runs{{spec.scenario, spec.sim}};
  for (const SweepAxis& axis : spec.sweep) {
    std::vector<MaterializedRun> next;
    next.reserve(runs.size() * axis.values.size());
    for (const MaterializedRun& run : runs) {
      for (const std::string& value : axis.values) {
        ExperimentSpec probe = spec;
        probe.sim = run.config;
        apply_parameter(probe, axis.path, value);
        next.push_back({run.name + "__" + axis.path + "=" + value, probe.sim});
      }
    }
    runs = std::move(next);
  }
  for (const MaterializedRun& run : runs) {
    try {
      run.config.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string(e.what()) + " (run " + run.name + ")");
    }
  }
  return runs;
}

}  // namespace wair
