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

#ifndef WAIR_VLIP_DYNAMICS_HPP_
#define WAIR_VLIP_DYNAMICS_HPP_

#include <Eigen/Core>

namespace wair {

// Planar variable-length inverted pendulum on an inclined plane, driven by a
// ground reaction force at the center of pressure (COP) and a thruster force
// collocated at the center of mass.
//
// Frame: x runs along the slope (positive up-slope), y is perpendicular to
// the slope plane pointing outward. The COM height y0 above the plane is
// constant, so the vertical acceleration is zero throughout.
//
// Sign convention for the tangential ground force follows
//   m*xdd = -lambda_x - m*g*sin(alpha) + F_x
//   m*ydd =  lambda_y - m*g*cos(alpha) + F_y
// so up-slope traction corresponds to a negative lambda_x.

struct VlipParams {
  double mass = 8.0;         // kg
  double y0 = 0.45;          // m
  double gravity = 9.81;     // m/s^2
  double slope_alpha = 0.0;  // rad

  // Throws std::invalid_argument when an invariant is violated.
  void validate() const;
};

struct VlipState {
  double x_com = 0.0;     // m
  double xdot_com = 0.0;  // m/s

  bool finite() const;
};

struct GroundReaction {
  double lambda_x = 0.0;  // N, tangential
  double lambda_y = 0.0;  // N, normal
};

struct ThrusterForce {
  double f_x = 0.0;  // N, along slope
  double f_y = 0.0;  // N, normal to slope
};

enum class LinearizationMode {
  // A[1][0] = -lambda_y0/(m*y0) and no affine term; B keeps the 1/m factor.
  kSimplified,
  // Complete first-order expansion of the COP acceleration, with affine term.
  kFullTaylor,
};

struct LinearizationPoint {
  double x_com0 = 0.0;     // m
  double x_cop0 = 0.0;     // m
  double lambda_y0 = 0.0;  // N
};

// Continuous LTI model  d/dt[xi; xidot] = A*[xi; xidot] + B*[lambda_x; lambda_y] + d
// where xi = x_com - x_cop0 is the COM position in the COP frame.
struct LtiModel {
  Eigen::Matrix2d a_matrix = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d b_matrix = Eigen::Matrix2d::Zero();
  Eigen::Vector2d affine_offset = Eigen::Vector2d::Zero();
  LinearizationPoint linearization_point;
  LinearizationMode mode = LinearizationMode::kFullTaylor;

  // COP-frame state vector for a slope-frame state.
  Eigen::Vector2d to_model_state(const VlipState& state) const;
  // Model prediction of the COM acceleration.
  double predict_acceleration(const VlipState& state,
                              const GroundReaction& grf) const;
};

// xdd_com = -(x_cop - x_com)*lambda_y/(m*y0) - lambda_x/m.
// Throws std::invalid_argument on non-finite input.
double cop_acceleration(const VlipParams& params, const VlipState& state,
                        double x_cop, const GroundReaction& grf);

// Thruster force that makes the planar equations of motion hold with the
// given COM acceleration and zero acceleration normal to the slope.
ThrusterForce recover_thruster_forces(const VlipParams& params,
                                      double xddot_com,
                                      const GroundReaction& grf);

// (xdd + lambda_x/m)*y0 - (ydd - lambda_y/m)*(x_cop - x_com). Zero iff the
// zero-moment-point condition about the COM holds.
double zmp_residual(const VlipParams& params, const VlipState& state,
                    double x_cop, const GroundReaction& grf, double xddot,
                    double yddot);

LtiModel linearize(const VlipParams& params, const LinearizationPoint& point,
                   LinearizationMode mode);

}  // namespace wair

#endif  // WAIR_VLIP_DYNAMICS_HPP_
