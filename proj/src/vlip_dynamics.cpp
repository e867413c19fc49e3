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

#include "wair/vlip_dynamics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace wair {

void VlipParams::validate() const {
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw std::invalid_argument("VlipParams: mass must be positive, got " +
                                std::to_string(mass));
  }
  if (!(y0 > 0.0) || !std::isfinite(y0)) {
    throw std::invalid_argument("VlipParams: y0 must be positive, got " +
                                std::to_string(y0));
  }
  if (!(gravity > 0.0) || !std::isfinite(gravity)) {
    throw std::invalid_argument("VlipParams: gravity must be positive, got " +
                                std::to_string(gravity));
  }
  if (!(std::abs(slope_alpha) < std::numbers::pi / 2.0)) {
    throw std::invalid_argument(
        "VlipParams: |slope_alpha| must be below pi/2, got " +
        std::to_string(slope_alpha));
  }
}

bool VlipState::finite() const {
  return std::isfinite(x_com) && std::isfinite(xdot_com);
}

Eigen::Vector2d LtiModel::to_model_state(const VlipState& state) const {
  return {state.x_com - linearization_point.x_cop0, state.xdot_com};
}

double LtiModel::predict_acceleration(const VlipState& state,
                                      const GroundReaction& grf) const {
  const Eigen::Vector2d x = to_model_state(state);
  const Eigen::Vector2d u(grf.lambda_x, grf.lambda_y);
  return a_matrix.row(1).dot(x) + b_matrix.row(1).dot(u) + affine_offset(1);
}

double cop_acceleration(const VlipParams& params, const VlipState& state,
                        double x_cop, const GroundReaction& grf) {
  if (!state.finite() || !std::isfinite(x_cop) ||
      !std::isfinite(grf.lambda_x) || !std::isfinite(grf.lambda_y)) {
    throw std::invalid_argument("cop_acceleration: non-finite input");
  }
  const double m = params.mass;
  return -(x_cop - state.x_com) * grf.lambda_y / (m * params.y0) -
         grf.lambda_x / m;
}

ThrusterForce recover_thruster_forces(const VlipParams& params,
                                      double xddot_com,
                                      const GroundReaction& grf) {
  const double m = params.mass;
  const double g = params.gravity;
  ThrusterForce f;
  f.f_x = m * xddot_com + grf.lambda_x + m * g * std::sin(params.slope_alpha);
  f.f_y = m * g * std::cos(params.slope_alpha) - grf.lambda_y;
  return f;
}

double zmp_residual(const VlipParams& params, const VlipState& state,
                    double x_cop, const GroundReaction& grf, double xddot,
                    double yddot) {
  const double m = params.mass;
  return (xddot + grf.lambda_x / m) * params.y0 -
         (yddot - grf.lambda_y / m) * (x_cop - state.x_com);
}

LtiModel linearize(const VlipParams& params, const LinearizationPoint& point,
                   LinearizationMode mode) {
  const double m = params.mass;
  const double k = m * params.y0;
  const double lever = point.x_com0 - point.x_cop0;

  LtiModel model;
  model.linearization_point = point;
  model.mode = mode;
  model.a_matrix << 0.0, 1.0, 0.0, 0.0;
  model.b_matrix << 0.0, 0.0, -1.0 / m, lever / k;

  if (mode == LinearizationMode::kSimplified) {
    model.a_matrix(1, 0) = -point.lambda_y0 / k;
    return model;
  }

  // d(xdd)/d(x_com) = +lambda_y0/(m*y0); the pendulum is unstable about the COP.
  model.a_matrix(1, 0) = point.lambda_y0 / k;
  const double f0 = lever * point.lambda_y0 / k;
  model.affine_offset(1) =
      f0 - model.a_matrix(1, 0) * lever - model.b_matrix(1, 1) * point.lambda_y0;
  return model;
}

}  // namespace wair
