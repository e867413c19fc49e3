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

#ifndef WAIR_MPC_HPP_
#define WAIR_MPC_HPP_

#include <vector>

#include <Eigen/Core>

#include "wair/qp_solver.hpp"
#include "wair/vlip_dynamics.hpp"

namespace wair {

enum class FrictionMode {
  // lambda_x <= mu*lambda_y only.
  kOneSided,
  // |lambda_x| <= mu*lambda_y.
  kTwoSided,
};

struct MpcConfig {
  int horizon = 5;
  double dt = 0.01;  // s
  // Tracking weights on (position, velocity), replicated over the horizon.
  Eigen::Vector2d q_weight{100.0, 10.0};
  // Per-input bounds on (lambda_x, lambda_y), N.
  Eigen::Vector2d u_min{-200.0, -200.0};
  Eigen::Vector2d u_max{200.0, 200.0};
  double mu_s = 0.5;
  double lambda_min_n = 10.0;  // N
  FrictionMode friction_mode = FrictionMode::kOneSided;
  LinearizationMode linearization = LinearizationMode::kFullTaylor;
  SolverConfig solver;

  // Throws std::invalid_argument.
  void validate() const;
};

struct Discretization {
  Eigen::Matrix2d f_matrix = Eigen::Matrix2d::Identity();
  Eigen::Matrix2d g_matrix = Eigen::Matrix2d::Zero();
  Eigen::Vector2d affine_step = Eigen::Vector2d::Zero();  // d * dt
};

// Forward Euler: F = I + A dt, G = B dt.
Discretization discretize(const LtiModel& model, double dt);

// Stacked prediction Z = H U + W X0 + affine_rollout over the horizon, with
// Z = [X_1; ...; X_nh] and U = [u_0; ...; u_{nh-1}].
struct PredictionMatrices {
  Eigen::Matrix2d f_matrix = Eigen::Matrix2d::Identity();
  Eigen::Matrix2d g_matrix = Eigen::Matrix2d::Zero();
  Eigen::MatrixXd h_matrix;
  Eigen::MatrixXd w_matrix;
  Eigen::VectorXd affine_rollout;

  int horizon() const { return static_cast<int>(w_matrix.rows() / 2); }
  Eigen::VectorXd predict(const Eigen::Vector2d& x0,
                          const Eigen::VectorXd& inputs) const;
};

PredictionMatrices condense(const Eigen::Matrix2d& f, const Eigen::Matrix2d& g,
                            int horizon,
                            const Eigen::Vector2d& affine_step =
                                Eigen::Vector2d::Zero());

// J(U) = U' R U + b' U + c.
struct QuadraticCost {
  Eigen::MatrixXd r_matrix;
  Eigen::VectorXd b_vector;
  double c = 0.0;

  double evaluate(const Eigen::VectorXd& inputs) const;
};

QuadraticCost build_cost(const PredictionMatrices& pred,
                         const Eigen::Vector2d& x0,
                         const Eigen::VectorXd& z_ref,
                         const Eigen::Vector2d& q_weight);

// Rows of G U <= h for the normal-force floor, friction cone and input box.
struct ConstraintSet {
  Eigen::MatrixXd g_matrix;
  Eigen::VectorXd h_vector;
};

ConstraintSet build_constraints(const MpcConfig& config, int horizon);

struct ReferenceSample {
  double t = 0.0;
  double x_ref = 0.0;     // m, slope frame
  double xdot_ref = 0.0;  // m/s
};

// Time-indexed slope-frame reference. Queries between samples interpolate
// linearly; queries past the end extrapolate at the last velocity.
class ReferenceTrajectory {
 public:
  ReferenceTrajectory() = default;
  // Throws std::invalid_argument unless timestamps strictly increase and all
  // values are finite.
  explicit ReferenceTrajectory(std::vector<ReferenceSample> samples);

  const std::vector<ReferenceSample>& samples() const { return samples_; }
  bool empty() const { return samples_.empty(); }
  ReferenceSample at(double t) const;

 private:
  std::vector<ReferenceSample> samples_;
};

// References for X_1..X_nh starting at t, in the model (COP) frame.
Eigen::VectorXd stacked_reference(const ReferenceTrajectory& reference,
                                  double t, double dt, int horizon,
                                  double x_cop);

struct MpcResult {
  GroundReaction u0;
  QpSolution solution;
};

MpcResult mpc_step(const MpcConfig& config, const LtiModel& model,
                   const VlipState& x0, const ReferenceTrajectory& reference,
                   double t, QpSolver& solver);
MpcResult mpc_step(const MpcConfig& config, const LtiModel& model,
                   const VlipState& x0, const ReferenceTrajectory& reference,
                   double t);

// Receding-horizon controller. Relinearizes at every step around the current
// state and the previous step's normal force; steps must be taken in order.
class MpcController {
 public:
  MpcController(MpcConfig config, VlipParams params);

  MpcResult step(const VlipState& state, double x_cop,
                 const ReferenceTrajectory& reference, double t);

  const MpcConfig& config() const { return config_; }
  double linearization_lambda_y() const { return lambda_y0_; }

 private:
  MpcConfig config_;
  VlipParams params_;
  QpSolver solver_;
  double lambda_y0_;
};

}  // namespace wair

#endif  // WAIR_MPC_HPP_
