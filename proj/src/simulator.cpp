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

#include "wair/simulator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wair {
namespace {

long long step_count(double span, double dt) {
  return std::llround(span / dt);
}

}  // namespace

void SimConfig::validate() const {
  if (!(sim_dt > 0.0)) throw std::invalid_argument("SimConfig: sim_dt must be positive");
  if (!(duration >= 0.0)) {
    throw std::invalid_argument("SimConfig: duration must be non-negative");
  }
  if (!(cop_stride > 0.0)) {
    throw std::invalid_argument("SimConfig: cop_stride must be positive");
  }
  if (!(mpc_period >= sim_dt)) {
    throw std::invalid_argument("SimConfig: mpc_period must be >= sim_dt");
  }
  const double ratio = mpc_period / sim_dt;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio) {
    throw std::invalid_argument(
        "SimConfig: mpc_period must be an integer multiple of sim_dt");
  }
  if (!initial_state.finite()) {
    throw std::invalid_argument("SimConfig: initial state must be finite");
  }
  VlipParams p = vlip;
  p.slope_alpha = slope_alpha;
  p.validate();
  mpc.validate();
}

VlipState rk4_step(const VlipParams& params, const VlipState& state,
                   double x_cop, const GroundReaction& grf, double dt) {
  auto deriv = [&](const VlipState& s) {
    return VlipState{s.xdot_com, cop_acceleration(params, s, x_cop, grf)};
  };
  auto offset = [](const VlipState& s, const VlipState& k, double h) {
    return VlipState{s.x_com + h * k.x_com, s.xdot_com + h * k.xdot_com};
  };
  const VlipState k1 = deriv(state);
  const VlipState k2 = deriv(offset(state, k1, 0.5 * dt));
  const VlipState k3 = deriv(offset(state, k2, 0.5 * dt));
  const VlipState k4 = deriv(offset(state, k3, dt));
  VlipState next{
      state.x_com + dt / 6.0 * (k1.x_com + 2.0 * k2.x_com + 2.0 * k3.x_com + k4.x_com),
      state.xdot_com +
          dt / 6.0 * (k1.xdot_com + 2.0 * k2.xdot_com + 2.0 * k3.xdot_com + k4.xdot_com)};
  if (!next.finite()) throw std::domain_error("rk4_step: state became non-finite");
  return next;
}

ReferenceTrajectory generate_reference(const ReferenceSpec& spec,
                                       double duration, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("generate_reference: dt must be positive");
  const long long n = step_count(duration, dt);
  const long long step_index = step_count(spec.step_time, dt);
  std::vector<ReferenceSample> samples;
  samples.reserve(static_cast<std::size_t>(n + 1));
  for (long long i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) * dt;
    ReferenceSample s;
    s.t = t;
    if (i < step_index) {
      s.xdot_ref = spec.cruise_speed;
      s.x_ref = spec.cruise_speed * t;
    } else {
      s.xdot_ref = spec.step_velocity;
      s.x_ref = spec.cruise_speed * spec.step_time +
                spec.step_velocity * (t - spec.step_time);
    }
    samples.push_back(s);
  }
  return ReferenceTrajectory(std::move(samples));
}

Eigen::Vector2d slope_to_world(double x, double y, double slope_alpha) {
  const double c = std::cos(slope_alpha);
  const double s = std::sin(slope_alpha);
  return {c * x - s * y, s * x + c * y};
}

double update_cop(const VlipState& state, double x_cop, double cop_stride) {
  if (state.x_com - x_cop > 0.5 * cop_stride) return x_cop + cop_stride;
  return x_cop;
}

SimLog run(const SimConfig& config) {
  config.validate();
  SimLog log;
  const long long steps = step_count(config.duration, config.sim_dt);
  if (steps == 0) return log;

  VlipParams params = config.vlip;
  params.slope_alpha = config.slope_alpha;
  const long long mpc_every = step_count(config.mpc_period, config.sim_dt);
  const ReferenceTrajectory reference =
      generate_reference(config.reference_spec, config.duration, config.sim_dt);

  MpcController controller(config.mpc, params);
  VlipState state = config.initial_state;
  double x_cop = state.x_com;
  GroundReaction grf;
  SolveStats stats;

  log.records.reserve(static_cast<std::size_t>(steps));
  log.solves.reserve(static_cast<std::size_t>(steps / mpc_every + 1));

  for (long long i = 0; i < steps; ++i) {
    const double t = static_cast<double>(i) * config.sim_dt;
    if (i % mpc_every == 0) {
      const MpcResult result = controller.step(state, x_cop, reference, t);
      stats = {result.solution.iterations, result.solution.solve_time,
               result.solution.status};
      log.solves.push_back(stats);
      if (result.solution.status == QpStatus::kInfeasible) {
        log.termination = SimTermination::kInfeasible;
        log.message = "MPC QP infeasible at t = " + std::to_string(t) + " s";
        return log;
      }
      grf = result.u0;
    }

    SimRecord rec;
    rec.t = t;
    rec.state = state;
    rec.x_cop = x_cop;
    rec.grf = grf;
    const double xddot = cop_acceleration(params, state, x_cop, grf);
    rec.thruster = recover_thruster_forces(params, xddot, grf);
    const ReferenceSample ref = reference.at(t);
    rec.x_ref = ref.x_ref;
    rec.xdot_ref = ref.xdot_ref;
    rec.world_position = slope_to_world(state.x_com, params.y0, params.slope_alpha);
    rec.solver = stats;
    log.records.push_back(rec);

    try {
      state = rk4_step(params, state, x_cop, grf, config.sim_dt);
    } catch (const std::domain_error& e) {
      log.termination = SimTermination::kNonFinite;
      log.message = std::string(e.what()) + " at t = " + std::to_string(t) + " s";
      return log;
    }
    x_cop = update_cop(state, x_cop, config.cop_stride);
  }
  return log;
}

}  // namespace wair
