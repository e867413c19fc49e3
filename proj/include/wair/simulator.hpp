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

#ifndef WAIR_SIMULATOR_HPP_
#define WAIR_SIMULATOR_HPP_

#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "wair/mpc.hpp"
#include "wair/qp_solver.hpp"
#include "wair/vlip_dynamics.hpp"

namespace wair {

enum class CopUpdateRule {
  // Advance to the next fixed foothold once the COM leads the COP by more
  // than half a stride, so the body sweeps [-stride/2, +stride/2] about it.
  kSymmetricAboutCop,
};

struct ReferenceSpec {
  double cruise_speed = 0.2;   // m/s
  double step_time = 5.0;      // s
  double step_velocity = 0.4;  // m/s
};

struct SimConfig {
  double duration = 10.0;     // s
  double sim_dt = 0.001;      // s
  double mpc_period = 0.01;   // s
  double slope_alpha = 40.0 * std::numbers::pi / 180.0;  // rad; copied into vlip by run()
  double cop_stride = 0.1;    // m
  CopUpdateRule cop_update_rule = CopUpdateRule::kSymmetricAboutCop;
  ReferenceSpec reference_spec;
  VlipState initial_state{0.0, 0.2};
  VlipParams vlip;
  MpcConfig mpc;

  // Throws std::invalid_argument. A zero duration is accepted and yields an
  // empty log.
  void validate() const;
};

struct SolveStats {
  int iterations = 0;
  double solve_time = 0.0;  // s
  QpStatus status = QpStatus::kOptimal;
};

struct SimRecord {
  double t = 0.0;
  VlipState state;
  double x_cop = 0.0;
  GroundReaction grf;
  ThrusterForce thruster;
  double x_ref = 0.0;
  double xdot_ref = 0.0;
  Eigen::Vector2d world_position = Eigen::Vector2d::Zero();
  SolveStats solver;
};

enum class SimTermination { kCompleted, kInfeasible, kNonFinite };

struct SimLog {
  std::vector<SimRecord> records;  // one per integration step
  std::vector<SolveStats> solves;  // one per MPC solve
  SimTermination termination = SimTermination::kCompleted;
  std::string message;
};

// Classical RK4 with grf and x_cop held over the step. Throws
// std::domain_error if the result is not finite.
VlipState rk4_step(const VlipParams& params, const VlipState& state,
                   double x_cop, const GroundReaction& grf, double dt);

// Piecewise-constant velocity (cruise before step_time, step_velocity from
// step_time on) integrated into a position ramp, sampled every dt on
// [0, duration].
ReferenceTrajectory generate_reference(const ReferenceSpec& spec,
                                       double duration, double dt);

// Rotates a slope-frame point into the world frame.
Eigen::Vector2d slope_to_world(double x, double y, double slope_alpha);

double update_cop(const VlipState& state, double x_cop, double cop_stride);

SimLog run(const SimConfig& config);

}  // namespace wair

#endif  // WAIR_SIMULATOR_HPP_
