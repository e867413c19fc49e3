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

#ifndef WAIR_HROM_KINEMATICS_HPP_
#define WAIR_HROM_KINEMATICS_HPP_

#include <array>
#include <utility>

#include <Eigen/Core>

#include "wair/vlip_dynamics.hpp"

namespace wair::hrom {

// Rotation conventions. Body orientation uses intrinsic roll-pitch-yaw
// (x, then y, then z): R_B = Rx(roll) * Ry(pitch) * Rz(yaw). Every rotation in
// this module goes through these helpers.
Eigen::Matrix3d rot_x(double angle);
Eigen::Matrix3d rot_y(double angle);
Eigen::Matrix3d rot_z(double angle);
Eigen::Matrix3d body_rotation(const Eigen::Vector3d& euler);

// Distance from pitch = +-pi/2 below which the Euler rates are undefined.
inline constexpr double kGimbalMargin = 1e-6;

struct BodyState {
  Eigen::Vector3d p_body = Eigen::Vector3d::Zero();    // m, inertial
  Eigen::Vector3d phi_body = Eigen::Vector3d::Zero();  // rad, (roll, pitch, yaw)

  // Throws std::invalid_argument outside (-pi, pi] or near gimbal lock.
  void validate() const;
};

enum class LegId { kFR = 0, kHR = 1, kFL = 2, kHL = 3 };

struct LegState {
  double phi = 0.0;     // rad, hip frontal
  double gamma = 0.0;   // rad, hip sagittal
  double length = 0.4;  // m
  Eigen::Vector3d hip_offset = Eigen::Vector3d::Zero();  // m, body frame
};

struct LegJoints {
  std::array<LegState, 4> legs;
  double length_min = 0.2;  // m
  double length_max = 0.6;  // m

  LegState& operator[](LegId id) { return legs[static_cast<std::size_t>(id)]; }
  const LegState& operator[](LegId id) const {
    return legs[static_cast<std::size_t>(id)];
  }

  void validate() const;
};

// p_f = p_B + R_B*hip_offset + R_B*Ry(phi)*Rx(gamma)*[0, 0, -l].
// The hip frontal angle is applied about y, as in the model definition.
Eigen::Vector3d foot_position(const BodyState& body, const LegJoints& legs,
                              LegId leg);

Eigen::Vector3d thruster_position(const BodyState& body,
                                  const Eigen::Vector3d& mount_offset);

// E such that omega_body = E * d(euler)/dt. det(E) = cos(pitch).
Eigen::Matrix3d euler_rate_matrix(const Eigen::Vector3d& euler);

// Two stance feet on the slope line carrying the pendulum's single contact
// force, with the COP between them.
struct ContactPair {
  double foot_front = 0.0;  // m, slope frame
  double foot_hind = 0.0;   // m
  GroundReaction lambda_total;
  double x_cop = 0.0;  // m
};

struct FootForces {
  GroundReaction front;
  GroundReaction hind;
};

// Lever rule on the normal force; tangential force split in the same ratio so
// each foot keeps the total's friction ratio. Throws std::invalid_argument if
// the COP is outside [foot_hind, foot_front] or the feet are not ordered.
FootForces distribute_contact_forces(const ContactPair& pair);

}  // namespace wair::hrom

#endif  // WAIR_HROM_KINEMATICS_HPP_
