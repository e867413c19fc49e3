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

#include "wair/hrom_kinematics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace wair::hrom {

Eigen::Matrix3d rot_x(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  Eigen::Matrix3d r;
  r << 1, 0, 0,
       0, c, -s,
       0, s, c;
  return r;
}

Eigen::Matrix3d rot_y(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  Eigen::Matrix3d r;
  r << c, 0, s,
       0, 1, 0,
       -s, 0, c;
  return r;
}

Eigen::Matrix3d rot_z(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  Eigen::Matrix3d r;
  r << c, -s, 0,
       s, c, 0,
       0, 0, 1;
  return r;
}

Eigen::Matrix3d body_rotation(const Eigen::Vector3d& euler) {
  return rot_x(euler(0)) * rot_y(euler(1)) * rot_z(euler(2));
}

void BodyState::validate() const {
  constexpr double pi = std::numbers::pi;
  for (int i = 0; i < 3; ++i) {
    if (!(phi_body(i) > -pi && phi_body(i) <= pi)) {
      throw std::invalid_argument("BodyState: Euler angle " + std::to_string(i) +
                                  " outside (-pi, pi]");
    }
  }
  if (!(std::abs(phi_body(1)) < pi / 2.0)) {
    throw std::invalid_argument("BodyState: pitch must lie in (-pi/2, pi/2)");
  }
  if (!p_body.allFinite()) throw std::invalid_argument("BodyState: non-finite position");
}

void LegJoints::validate() const {
  if (!(length_min > 0.0) || !(length_max >= length_min)) {
    throw std::invalid_argument("LegJoints: need 0 < length_min <= length_max");
  }
  for (const LegState& leg : legs) {
    if (!(leg.length >= length_min && leg.length <= length_max)) {
      throw std::invalid_argument("LegJoints: leg length " +
                                  std::to_string(leg.length) + " out of range");
    }
  }
}

Eigen::Vector3d foot_position(const BodyState& body, const LegJoints& legs,
                              LegId leg) {
  const LegState& l = legs[leg];
  const Eigen::Matrix3d r_body = body_rotation(body.phi_body);
  const Eigen::Vector3d leg_vector =
      rot_y(l.phi) * rot_x(l.gamma) * Eigen::Vector3d(0.0, 0.0, -l.length);
  return body.p_body + r_body * l.hip_offset + r_body * leg_vector;
}

Eigen::Vector3d thruster_position(const BodyState& body,
                                  const Eigen::Vector3d& mount_offset) {
  return body.p_body + body_rotation(body.phi_body) * mount_offset;
}

Eigen::Matrix3d euler_rate_matrix(const Eigen::Vector3d& euler) {
  const double pitch = euler(1);
  if (std::abs(std::abs(pitch) - std::numbers::pi / 2.0) < kGimbalMargin) {
    throw std::invalid_argument("euler_rate_matrix: pitch too close to +-pi/2");
  }
  // omega = Rz' Ry' e_x * roll_dot + Rz' e_y * pitch_dot + e_z * yaw_dot
  const Eigen::Matrix3d rz_t = rot_z(euler(2)).transpose();
  const Eigen::Matrix3d ry_t = rot_y(pitch).transpose();
  Eigen::Matrix3d e;
  e.col(0) = rz_t * ry_t * Eigen::Vector3d::UnitX();
  e.col(1) = rz_t * Eigen::Vector3d::UnitY();
  e.col(2) = Eigen::Vector3d::UnitZ();
  return e;
}

FootForces distribute_contact_forces(const ContactPair& pair) {
  if (!(pair.foot_hind < pair.foot_front)) {
    throw std::invalid_argument(
        "distribute_contact_forces: hind foot must be behind the front foot");
  }
  if (!(pair.x_cop >= pair.foot_hind && pair.x_cop <= pair.foot_front)) {
    throw std::invalid_argument(
        "distribute_contact_forces: COP outside the support segment");
  }
  const double front_share =
      (pair.x_cop - pair.foot_hind) / (pair.foot_front - pair.foot_hind);
  FootForces f;
  f.front.lambda_y = pair.lambda_total.lambda_y * front_share;
  f.front.lambda_x = pair.lambda_total.lambda_x * front_share;
  f.hind.lambda_y = pair.lambda_total.lambda_y - f.front.lambda_y;
  f.hind.lambda_x = pair.lambda_total.lambda_x - f.front.lambda_x;
  return f;
}

}  // namespace wair::hrom
