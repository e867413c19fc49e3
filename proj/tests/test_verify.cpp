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
#include <string>

#include <Eigen/Eigenvalues>

#include <gtest/gtest.h>

#include "wair/verify.hpp"

namespace wair::verification {
namespace {

TEST(Verify, SuiteNamesRoundTrip) {
  for (Suite s : {Suite::kQpOracle, Suite::kRollout, Suite::kConvergence,
                  Suite::kInvariants}) {
    EXPECT_EQ(parse_suite(suite_name(s)), s);
  }
  EXPECT_FALSE(parse_suite("other").has_value());
}

TEST(Verify, RandomQpIsStrictlyConvexAndFeasible) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 50; ++i) {
    const QpProblem qp = random_strictly_convex_qp(rng, 5, 9, 1e4);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(qp.p_matrix);
    const auto ev = eig.eigenvalues();
    EXPECT_GT(ev(0), 0.0);
    EXPECT_LE(ev(4) / ev(0), 1e4 * (1.0 + 1e-9));
  }
}

TEST(Verify, ReplayJsonContainsProblemData) {
  std::mt19937_64 rng(1);
  const std::string json = to_json(random_strictly_convex_qp(rng, 2, 3));
  for (const char* key : {"\"P\"", "\"q\"", "\"G\"", "\"h\""}) {
    EXPECT_NE(json.find(key), std::string::npos);
  }
}

TEST(Verify, ExactPendulumMatchesClosedForm) {
  VlipParams p;
  const GroundReaction g{0.0, 36.0};  // omega^2 = 36 / 3.6 = 10
  const double w = std::sqrt(10.0);
  const VlipState s = exact_pendulum_state(p, {0.01, 0.0}, 0.0, g, 0.3);
  EXPECT_NEAR(s.x_com, 0.01 * std::cosh(w * 0.3), 1e-14);
  EXPECT_NEAR(s.xdot_com, 0.01 * w * std::sinh(w * 0.3), 1e-13);
}

class SuiteTest : public ::testing::TestWithParam<Suite> {};

TEST_P(SuiteTest, Passes) {
  const SuiteReport r = run_suite(GetParam(), 1);
  for (const CheckResult& c : r.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
}

INSTANTIATE_TEST_SUITE_P(AllSuites, SuiteTest,
                         ::testing::Values(Suite::kQpOracle, Suite::kRollout,
                                           Suite::kConvergence, Suite::kInvariants),
                         [](const ::testing::TestParamInfo<Suite>& info) {
                           return std::string(suite_name(info.param));
                         });

}  // namespace
}  // namespace wair::verification
