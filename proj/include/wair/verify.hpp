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

#ifndef WAIR_VERIFY_HPP_
#define WAIR_VERIFY_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "wair/qp_solver.hpp"
#include "wair/vlip_dynamics.hpp"

// Property suites shared by the `verify` subcommand and the acceptance tests.
// Each oracle here is computed independently of the code path it checks:
// enumeration for the QP, explicit step-by-step rollout for condensation,
// direct stacked-error norms for the cost, and the matrix exponential for RK4.
namespace wair::verification {

enum class Suite { kQpOracle, kRollout, kConvergence, kInvariants };

std::optional<Suite> parse_suite(std::string_view name);
std::string_view suite_name(Suite suite);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  std::string replay;  // JSON of the first failing case, if any
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool passed() const;
};

SuiteReport run_suite(Suite suite, std::uint64_t seed);
void print_report(std::ostream& out, const SuiteReport& report);

// Random strictly convex QP: P = V diag(eig) V' with eig log-uniform so that
// cond(P) <= max_condition, and h chosen so a random point is strictly
// feasible.
QpProblem random_strictly_convex_qp(std::mt19937_64& rng, int n, int m,
                                    double max_condition = 1e4);
std::string to_json(const QpProblem& problem);

// max over stationarity/(1+|q|), primal/(1+|h|), complementarity/(1+|f|),
// dual infeasibility/(1+|lambda|).
double relative_kkt_error(const QpProblem& problem, const QpSolution& solution);

struct OracleComparison {
  int instances = 0;
  int solver_optimal = 0;
  int oracle_optimal = 0;
  double max_u_error = 0.0;         // |u_ipm - u_oracle|_inf
  double max_objective_gap = 0.0;   // |f_ipm - f_oracle| / (1 + |f_oracle|)
  double max_kkt_error = 0.0;       // relative_kkt_error over optimal returns
  bool parallel_matches_serial = true;
  std::string first_failure;        // JSON replay
};

// Solver vs enumeration oracle on random instances with n in [1, max_n],
// m in [1, max_m]. Also checks the OpenMP oracle against the serial one.
OracleComparison compare_with_oracle(std::uint64_t seed, int instances,
                                     int max_n = 8, int max_m = 12,
                                     double u_tolerance = 1e-6);

struct ConvergenceResult {
  std::vector<double> step_sizes;
  std::vector<double> errors;
  double order = 0.0;  // least-squares slope of log(error) vs log(dt)
};

// Global RK4 error at t = horizon against the matrix-exponential solution of
// the pendulum with fixed COP and constant forces.
ConvergenceResult rk4_convergence(const VlipParams& params,
                                  const VlipState& initial, double x_cop,
                                  const GroundReaction& grf, double horizon,
                                  const std::vector<int>& step_counts);

// Exact state after t seconds of constant-force pendulum motion, via the
// matrix exponential of the augmented linear system.
VlipState exact_pendulum_state(const VlipParams& params, const VlipState& initial,
                               double x_cop, const GroundReaction& grf, double t);

struct RolloutCheck {
  double max_rollout_error = 0.0;    // |HU + WX0 + r - iterated|_inf
  double max_cost_rel_error = 0.0;   // |J_RBc - J_direct| / (1 + |J_direct|)
};

RolloutCheck check_condensation(std::uint64_t seed, int instances);

}  // namespace wair::verification

#endif  // WAIR_VERIFY_HPP_
