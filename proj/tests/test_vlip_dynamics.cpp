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

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <gtest/gtest.h>

#include "wair/vlip_dynamics.hpp"

namespace wair {
namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

TEST(CopAcceleration, VanishesWithCopUnderComAndNoTangentialForce) {
  VlipParams p;
  EXPECT_EQ(cop_acceleration(p, {0.3, 1.0}, 0.3, {0.0, 123.0}), 0.0);
}

TEST(CopAcceleration, LeverArmTerm) {
  VlipParams p;  // m = 8, y0 = 0.45
  EXPECT_NEAR(cop_acceleration(p, {0.05, 0.0}, 0.0, {0.0, 60.0}),
              0.833333333333333333, 1e-15);
}

TEST(CopAcceleration, TangentialTerm) {
  VlipParams p;
  EXPECT_DOUBLE_EQ(cop_acceleration(p, {0.2, 0.0}, 0.2, {8.0, 40.0}), -1.0);
}

TEST(CopAcceleration, RejectsNonFinite) {
  VlipParams p;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(cop_acceleration(p, {nan, 0.0}, 0.0, {}), std::invalid_argument);
  EXPECT_THROW(cop_acceleration(p, {0.0, 0.0}, 0.0, {0.0, INFINITY}),
               std::invalid_argument);
}

TEST(ThrusterForces, LevelStaticStanceNeedsNoThrust) {
  VlipParams p;
  const ThrusterForce f = recover_thruster_forces(p, 0.0, {0.0, p.mass * p.gravity});
  EXPECT_NEAR(f.f_x, 0.0, 1e-12);
  EXPECT_NEAR(f.f_y, 0.0, 1e-12);
}

TEST(ThrusterForces, FortyDegreeSlope) {
  VlipParams p;
  p.slope_alpha = 40.0 * kDeg;
  const ThrusterForce f = recover_thruster_forces(p, 0.0, {0.0, 40.0});
  EXPECT_NEAR(f.f_x, 50.4459716081996063, 1e-12);
  EXPECT_NEAR(f.f_y, 20.1191678959773962, 1e-12);
}

TEST(ZmpResidual, ConsistentAccelerationGivesZero) {
  VlipParams p;
  const VlipState s{0.12, 0.3};
  const GroundReaction g{3.0, 70.0};
  const double xdd = cop_acceleration(p, s, 0.05, g);
  EXPECT_NEAR(zmp_residual(p, s, 0.05, g, xdd, 0.0), 0.0, 1e-13);
  EXPECT_EQ(zmp_residual(p, {0.1, 0.0}, 0.1, {0.0, 50.0}, 0.0, 0.0), 0.0);
}

TEST(ZmpResidual, LinearInAccelerationWithSlopeY0) {
  VlipParams p;
  const VlipState s{0.12, 0.3};
  const GroundReaction g{3.0, 70.0};
  const double xdd = cop_acceleration(p, s, 0.05, g);
  EXPECT_NEAR(zmp_residual(p, s, 0.05, g, xdd + 1.0, 0.0), 0.45, 1e-13);
}

TEST(Linearize, ZeroNormalForceIsDoubleIntegrator) {
  VlipParams p;
  for (auto mode : {LinearizationMode::kSimplified, LinearizationMode::kFullTaylor}) {
    const LtiModel m = linearize(p, {0.1, 0.0, 0.0}, mode);
    EXPECT_EQ(m.a_matrix(0, 0), 0.0);
    EXPECT_EQ(m.a_matrix(0, 1), 1.0);
    EXPECT_EQ(m.a_matrix(1, 0), 0.0);
    EXPECT_EQ(m.a_matrix(1, 1), 0.0);
  }
}

TEST(Linearize, StiffnessMagnitudeAndSignPerMode) {
  VlipParams p;
  const LtiModel exact = linearize(p, {0.0, 0.0, 60.0}, LinearizationMode::kSimplified);
  const LtiModel taylor = linearize(p, {0.0, 0.0, 60.0}, LinearizationMode::kFullTaylor);
  EXPECT_NEAR(exact.a_matrix(1, 0), -16.6666666666666667, 1e-12);
  EXPECT_NEAR(taylor.a_matrix(1, 0), 16.6666666666666667, 1e-12);
  EXPECT_EQ(exact.affine_offset, Eigen::Vector2d::Zero());
}

TEST(Linearize, NoLeverArmMeansNoNormalForceInput) {
  VlipParams p;
  for (auto mode : {LinearizationMode::kSimplified, LinearizationMode::kFullTaylor}) {
    const LtiModel m = linearize(p, {0.3, 0.3, 60.0}, mode);
    EXPECT_EQ(m.b_matrix(1, 1), 0.0);
    EXPECT_DOUBLE_EQ(m.b_matrix(1, 0), -1.0 / p.mass);
  }
}

TEST(Linearize, FullTaylorExactAtLinearizationPoint) {
  VlipParams p;
  const LinearizationPoint pt{0.07, 0.02, 55.0};
  const LtiModel m = linearize(p, pt, LinearizationMode::kFullTaylor);
  const VlipState s{pt.x_com0, -0.4};
  const GroundReaction g{2.5, pt.lambda_y0};
  EXPECT_NEAR(m.predict_acceleration(s, g), cop_acceleration(p, s, pt.x_cop0, g),
              1e-13);
}

TEST(VlipParams, Validation) {
  VlipParams p;
  EXPECT_NO_THROW(p.validate());
  p.mass = 0.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = {};
  p.slope_alpha = 95.0 * kDeg;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

}  // namespace
}  // namespace wair
