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

#ifndef WAIR_QP_SOLVER_HPP_
#define WAIR_QP_SOLVER_HPP_

#include <string_view>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Cholesky>

namespace wair {

// minimize 1/2 u'Pu + q'u  subject to  G u <= h.
struct QpProblem {
  Eigen::MatrixXd p_matrix;
  Eigen::VectorXd q_vector;
  Eigen::MatrixXd g_matrix;
  Eigen::VectorXd h_vector;

  int num_variables() const { return static_cast<int>(q_vector.size()); }
  int num_constraints() const { return static_cast<int>(h_vector.size()); }

  double objective(const Eigen::VectorXd& u) const;

  // Checks dimensions, symmetry (1e-10 relative) and positive
  // semidefiniteness (eigenvalues >= -1e-9 * |P|). Throws std::invalid_argument.
  void validate() const;
};

enum class QpStatus { kOptimal, kMaxIterations, kInfeasible };

std::string_view to_string(QpStatus status);

struct QpSolution {
  Eigen::VectorXd u_star;
  Eigen::VectorXd multipliers;  // one per inequality row, >= 0
  QpStatus status = QpStatus::kMaxIterations;
  int iterations = 0;
  // Residuals at the returned iterate, measured on the internally normalized
  // problem (dimensionless).
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double duality_gap = 0.0;
  double solve_time = 0.0;  // s
  // Complementarity s'z after each iteration, recorded when requested.
  std::vector<double> gap_trace;
};

struct SolverConfig {
  double tolerance = 1e-8;
  int max_iterations = 50;
  // Added to the diagonal of P when its smallest eigenvalue is below 1e-12.
  double regularization = 1e-10;
  bool record_gap_trace = false;

  void validate() const;
};

struct KktResiduals {
  double stationarity = 0.0;       // |P u + q + G' lambda|_inf
  double primal = 0.0;             // max(0, max_i (G u - h)_i)
  double complementarity = 0.0;    // max_i |lambda_i (h - G u)_i|
  double dual_infeasibility = 0.0; // max(0, -min_i lambda_i)
};

KktResiduals kkt_residuals(const QpProblem& problem, const Eigen::VectorXd& u,
                           const Eigen::VectorXd& multipliers);

// Dense Mehrotra predictor-corrector primal-dual interior-point method.
// The instance owns its workspace; reuse it across solves of equal size to
// avoid reallocation. Not safe to share between threads mid-solve.
class QpSolver {
 public:
  explicit QpSolver(SolverConfig config = {});

  QpSolution solve(const QpProblem& problem);

  const SolverConfig& config() const { return config_; }

 private:
  SolverConfig config_;

  Eigen::MatrixXd p_;
  Eigen::VectorXd q_;
  Eigen::MatrixXd kkt_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
  Eigen::LDLT<Eigen::MatrixXd> ldlt_;
  Eigen::VectorXd u_, s_, z_, du_, ds_, dz_;
  Eigen::VectorXd r_dual_, r_primal_, r_comp_, w_, rhs_;
};

QpSolution solve(const QpProblem& problem, const SolverConfig& config = {});

// Exhaustive enumeration of all 2^m active sets. Each candidate solves the
// equality-constrained KKT system; the primal-feasible candidate with the
// lowest objective wins (ties broken by lowest active-set mask). Requires
// n <= 12, m <= 24 and P positive definite; throws std::invalid_argument
// otherwise. Returns kInfeasible when no candidate is feasible.
//
// The OpenMP version splits the mask range across threads and must agree
// bitwise with the serial reference.
QpSolution active_set_oracle(const QpProblem& problem);
QpSolution active_set_oracle_serial(const QpProblem& problem);

inline constexpr int kOracleMaxVariables = 12;
inline constexpr int kOracleMaxConstraints = 24;

}  // namespace wair

#endif  // WAIR_QP_SOLVER_HPP_
