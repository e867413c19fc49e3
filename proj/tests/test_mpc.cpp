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

#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "wair/mpc.hpp"

namespace wair {
namespace {

bool satisfied(const ConstraintSet& c, const Eigen::VectorXd& u) {
  return ((c.g_matrix * u - c.h_vector).array() <= 0.0).all();
}

TEST(Discretize, ZeroModelGivesIdentity) {
  LtiModel m;
  const Discretization d = discretize(m, 0.01);
  EXPECT_EQ(d.f_matrix, Eigen::Matrix2d::Identity());
  EXPECT_EQ(d.g_matrix, Eigen::Matrix2d::Zero());
}

TEST(Discretize, ForwardEuler) {
  LtiModel m;
  m.a_matrix << 0.0, 1.0, 60.0 / (8.0 * 0.45), 0.0;
  const Discretization d = discretize(m, 0.01);
  EXPECT_DOUBLE_EQ(d.f_matrix(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(d.f_matrix(0, 1), 0.01);
  EXPECT_NEAR(d.f_matrix(1, 0), 0.1666666666666667, 1e-15);
  EXPECT_DOUBLE_EQ(d.f_matrix(1, 1), 1.0);
  EXPECT_THROW(discretize(m, 0.0), std::invalid_argument);
}

class CondenseTest : public ::testing::Test {
 protected:
  Eigen::Matrix2d f{{1.0, 0.01}, {0.2, 1.0}};
  Eigen::Matrix2d g{{0.0, 0.0}, {-0.00125, 0.0004}};
};

TEST_F(CondenseTest, HorizonOne) {
  const PredictionMatrices p = condense(f, g, 1);
  EXPECT_EQ(p.h_matrix, Eigen::MatrixXd(g));
  EXPECT_EQ(p.w_matrix, Eigen::MatrixXd(f));
}

TEST_F(CondenseTest, HorizonTwoBlockStructure) {
  const PredictionMatrices p = condense(f, g, 2);
  ASSERT_EQ(p.h_matrix.rows(), 4);
  ASSERT_EQ(p.h_matrix.cols(), 4);
  EXPECT_EQ(Eigen::Matrix2d(p.h_matrix.block(0, 0, 2, 2)), g);
  EXPECT_EQ(Eigen::Matrix2d(p.h_matrix.block(0, 2, 2, 2)), Eigen::Matrix2d::Zero());
  EXPECT_EQ(Eigen::Matrix2d(p.h_matrix.block(2, 0, 2, 2)), Eigen::Matrix2d(f * g));
  EXPECT_EQ(Eigen::Matrix2d(p.h_matrix.block(2, 2, 2, 2)), g);
  EXPECT_EQ(Eigen::Matrix2d(p.w_matrix.block(0, 0, 2, 2)), f);
  EXPECT_EQ(Eigen::Matrix2d(p.w_matrix.block(2, 0, 2, 2)), Eigen::Matrix2d(f * f));
  EXPECT_EQ(p.horizon(), 2);
}

TEST_F(CondenseTest, AffineRolloutMatchesIteration) {
  const Eigen::Vector2d c(0.001, -0.02);
  const PredictionMatrices p = condense(f, g, 4, c);
  Eigen::Vector2d x = Eigen::Vector2d::Zero();
  for (int k = 0; k < 4; ++k) {
    x = f * x + c;
    EXPECT_NEAR((p.affine_rollout.segment<2>(2 * k) - x).norm(), 0.0, 1e-15);
  }
}

TEST_F(CondenseTest, OnReferenceCostVanishes) {
  const PredictionMatrices p = condense(f, g, 5);
  const Eigen::Vector2d x0(0.03, 0.2);
  const Eigen::VectorXd z_ref = p.w_matrix * x0;
  const QuadraticCost cost = build_cost(p, x0, z_ref, {100.0, 10.0});
  EXPECT_LT(cost.b_vector.norm(), 1e-12);
  EXPECT_LT(std::abs(cost.c), 1e-12);
}

TEST_F(CondenseTest, ZeroWeightsGiveZeroCost) {
  const PredictionMatrices p = condense(f, g, 3);
  const QuadraticCost cost =
      build_cost(p, {0.1, 0.4}, Eigen::VectorXd::Ones(6), Eigen::Vector2d::Zero());
  EXPECT_EQ(cost.r_matrix, Eigen::MatrixXd::Zero(6, 6));
  EXPECT_EQ(cost.b_vector, Eigen::VectorXd::Zero(6));
  EXPECT_EQ(cost.c, 0.0);
}

TEST(BuildConstraints, FrictionRows) {
  MpcConfig cfg;  // mu = 0.5
  const ConstraintSet c = build_constraints(cfg, 1);
  EXPECT_EQ(c.g_matrix.rows(), 6);
  EXPECT_TRUE(satisfied(c, Eigen::Vector2d(20.0, 50.0)));
  EXPECT_FALSE(satisfied(c, Eigen::Vector2d(30.0, 50.0)));
  // Normal-force floor active with zero slack.
  const Eigen::VectorXd slack = c.h_vector - c.g_matrix * Eigen::Vector2d(0.0, 10.0);
  EXPECT_EQ(slack(0), 0.0);
}

TEST(BuildConstraints, TwoSidedConeAddsLowerFace) {
  MpcConfig cfg;
  cfg.friction_mode = FrictionMode::kTwoSided;
  const ConstraintSet c = build_constraints(cfg, 5);
  EXPECT_EQ(c.g_matrix.rows(), 35);
  EXPECT_FALSE(satisfied(build_constraints(cfg, 1), Eigen::Vector2d(-30.0, 50.0)));
  EXPECT_TRUE(satisfied(build_constraints(MpcConfig{}, 1), Eigen::Vector2d(-30.0, 50.0)));
  cfg.lambda_min_n = 0.0;
  EXPECT_THROW(build_constraints(cfg, 5), std::invalid_argument);
}

TEST(ReferenceTrajectory, InterpolatesAndExtrapolates) {
  const ReferenceTrajectory ref({{0.0, 0.0, 0.2}, {1.0, 0.2, 0.2}});
  EXPECT_DOUBLE_EQ(ref.at(0.5).x_ref, 0.1);
  EXPECT_DOUBLE_EQ(ref.at(2.0).x_ref, 0.4);
  EXPECT_DOUBLE_EQ(ref.at(2.0).xdot_ref, 0.2);
  EXPECT_THROW(ReferenceTrajectory({{1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}}),
               std::invalid_argument);
}

TEST(MpcStep, OnReferencePicksSmallestNormalForce) {
  MpcConfig cfg;
  VlipParams params;
  const ReferenceTrajectory ref({{0.0, 0.0, 0.2}, {10.0, 2.0, 0.2}});
  const LtiModel model =
      linearize(params, {0.0, 0.0, cfg.lambda_min_n}, cfg.linearization);
  const MpcResult r = mpc_step(cfg, model, {0.0, 0.2}, ref, 0.0);
  ASSERT_EQ(r.solution.status, QpStatus::kOptimal);
  EXPECT_EQ(r.solution.u_star.size(), 10);
  EXPECT_NEAR(r.u0.lambda_y, cfg.lambda_min_n, 1e-6);
  EXPECT_NEAR(r.u0.lambda_x, 0.0, 1e-6);
}

TEST(MpcStep, ConflictingBoundsAreInfeasible) {
  MpcConfig cfg;
  cfg.u_max.y() = 0.0;  // below the normal-force floor
  VlipParams params;
  const ReferenceTrajectory ref({{0.0, 0.0, 0.2}, {10.0, 2.0, 0.2}});
  const LtiModel model = linearize(params, {0.0, 0.0, 10.0}, cfg.linearization);
  EXPECT_EQ(mpc_step(cfg, model, {0.0, 0.2}, ref, 0.0).solution.status,
            QpStatus::kInfeasible);
}

TEST(MpcController, TracksLinearizationForce) {
  MpcConfig cfg;
  MpcController ctl(cfg, VlipParams{});
  EXPECT_EQ(ctl.linearization_lambda_y(), cfg.lambda_min_n);
  const ReferenceTrajectory ref({{0.0, 0.0, 0.2}, {10.0, 2.0, 0.2}});
  const MpcResult r = ctl.step({0.01, 0.25}, 0.0, ref, 0.0);
  EXPECT_EQ(ctl.linearization_lambda_y(), r.u0.lambda_y);
  EXPECT_GE(r.u0.lambda_y, cfg.lambda_min_n - 1e-6);
  EXPECT_LE(r.u0.lambda_x, cfg.mu_s * r.u0.lambda_y + 1e-6);
}

TEST(MpcConfig, Validation) {
  MpcConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.horizon = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.u_min.x() = 300.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

}  // namespace
}  // namespace wair
