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

#include "wair/simulator.hpp"
#include "wair/verify.hpp"

namespace wair {
namespace {

TEST(Rk4Step, BallisticWithoutForces) {
  VlipParams p;
  const VlipState s = rk4_step(p, {0.5, 0.3}, 0.1, {}, 0.01);
  EXPECT_NEAR(s.x_com, 0.503, 1e-15);
  EXPECT_EQ(s.xdot_com, 0.3);
}

TEST(Rk4Step, ConvergesAtFourthOrder) {
  VlipParams p;
  const auto r = verification::rk4_convergence(p, {0.02, 0.2}, 0.0, {2.0, 60.0}, 1.0,
                                               {10, 20, 40, 80});
  EXPECT_GE(r.order, 3.7);
  EXPECT_LE(r.order, 4.3);
}

TEST(Rk4Step, RejectsNonFiniteState) {
  VlipParams p;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EXPECT_ANY_THROW(rk4_step(p, {nan, 0.0}, 0.0, {}, 0.01));
}

TEST(GenerateReference, PiecewiseIntegration) {
  const ReferenceTrajectory ref = generate_reference({}, 10.0, 0.001);
  EXPECT_NEAR(ref.at(5.0).x_ref, 1.0, 1e-12);
  EXPECT_NEAR(ref.at(6.0).x_ref, 1.4, 1e-12);
  EXPECT_EQ(ref.at(4.0).xdot_ref, 0.2);
  EXPECT_EQ(ref.at(6.0).xdot_ref, 0.4);
}

TEST(SlopeToWorld, LevelGroundIsIdentity) {
  const Eigen::Vector2d w = slope_to_world(1.3, 0.45, 0.0);
  EXPECT_EQ(w.x(), 1.3);
  EXPECT_EQ(w.y(), 0.45);
}

TEST(SlopeToWorld, RotatesBySlope) {
  const double a = 40.0 * std::numbers::pi / 180.0;
  const Eigen::Vector2d w = slope_to_world(1.0, 0.0, a);
  EXPECT_NEAR(w.x(), std::cos(a), 1e-15);
  EXPECT_NEAR(w.y(), std::sin(a), 1e-15);
}

TEST(UpdateCop, Rule) {
  EXPECT_EQ(update_cop({0.2, 0.0}, 0.2, 0.1), 0.2);
  EXPECT_NEAR(update_cop({0.051, 0.0}, 0.0, 0.1), 0.1, 1e-15);
  EXPECT_EQ(update_cop({0.049, 0.0}, 0.0, 0.1), 0.0);
}

TEST(Run, ZeroDurationGivesEmptyLog) {
  SimConfig cfg;
  cfg.duration = 0.0;
  const SimLog log = run(cfg);
  EXPECT_TRUE(log.records.empty());
  EXPECT_EQ(log.termination, SimTermination::kCompleted);
}

TEST(Run, DefaultScenarioRespectsConeAndIsDeterministic) {
  SimConfig cfg;
  cfg.duration = 2.0;
  const SimLog a = run(cfg);
  const SimLog b = run(cfg);
  ASSERT_EQ(a.termination, SimTermination::kCompleted);
  ASSERT_EQ(a.records.size(), 2000u);
  ASSERT_EQ(a.solves.size(), 200u);
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    const SimRecord& r = a.records[i];
    EXPECT_GE(r.grf.lambda_y, cfg.mpc.lambda_min_n - 1e-6);
    EXPECT_LE(r.grf.lambda_x, cfg.mpc.mu_s * r.grf.lambda_y + 1e-6);
    EXPECT_EQ(r.state.x_com, b.records[i].state.x_com);
    EXPECT_EQ(r.grf.lambda_x, b.records[i].grf.lambda_x);
  }
}

TEST(Run, InfeasibleSolveStopsWithPartialLog) {
  SimConfig cfg;
  cfg.mpc.u_max.y() = 0.0;
  const SimLog log = run(cfg);
  EXPECT_EQ(log.termination, SimTermination::kInfeasible);
  EXPECT_FALSE(log.message.empty());
  EXPECT_LT(log.records.size(), 10000u);
}

TEST(SimConfig, Validation) {
  SimConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.mpc_period = 0.0005;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.sim_dt = -1.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

}  // namespace
}  // namespace wair
