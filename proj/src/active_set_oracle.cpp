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

#include <bit>
#include <chrono>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/LU>

#include "wair/qp_solver.hpp"

namespace wair {
namespace {

// Quantities shared read-only by every candidate.
struct OracleData {
  int n = 0;
  int m = 0;
  Eigen::VectorXd u_free;      // -P^{-1} q
  Eigen::MatrixXd pinv_gt;     // P^{-1} G'
  Eigen::MatrixXd schur;       // G P^{-1} G'
  Eigen::VectorXd free_slack;  // G u_free - h
  double feas_tol = 0.0;
};

struct Candidate {
  double objective = std::numeric_limits<double>::infinity();
  std::uint32_t mask = 0;
  bool found = false;

  bool better_than(const Candidate& other) const {
    if (!found) return false;
    if (!other.found) return true;
    if (objective != other.objective) return objective < other.objective;
    return mask < other.mask;
  }
};

OracleData prepare(const QpProblem& problem) {
  problem.validate();
  OracleData d;
  d.n = problem.num_variables();
  d.m = problem.num_constraints();
  if (d.n > kOracleMaxVariables || d.m > kOracleMaxConstraints) {
    throw std::invalid_argument("active_set_oracle: problem exceeds n <= 12, m <= 24");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(problem.p_matrix);
  if (d.n > 0 && llt.info() != Eigen::Success) {
    throw std::invalid_argument("active_set_oracle: P must be positive definite");
  }
  d.u_free = llt.solve(-problem.q_vector);
  d.pinv_gt = llt.solve(problem.g_matrix.transpose());
  d.schur = problem.g_matrix * d.pinv_gt;
  d.free_slack = problem.g_matrix * d.u_free - problem.h_vector;
  d.feas_tol =
      1e-9 * (1.0 + (d.m > 0 ? problem.h_vector.lpNorm<Eigen::Infinity>() : 0.0));
  return d;
}

struct Workspace {
  std::vector<int> rows;
  Eigen::MatrixXd s_aa;
  Eigen::VectorXd rhs;
  Eigen::VectorXd lambda;
  Eigen::VectorXd u;
};

// Solves the equality-constrained subproblem for one active set. Returns false
// when the active rows are linearly dependent.
bool solve_active_set(const OracleData& d, std::uint32_t mask, Workspace& ws) {
  ws.rows.clear();
  for (int i = 0; i < d.m; ++i) {
    if (mask & (std::uint32_t{1} << i)) ws.rows.push_back(i);
  }
  const int k = static_cast<int>(ws.rows.size());
  ws.u = d.u_free;
  ws.lambda.resize(k);
  if (k == 0) return true;
  ws.s_aa.resize(k, k);
  ws.rhs.resize(k);
  for (int a = 0; a < k; ++a) {
    ws.rhs(a) = d.free_slack(ws.rows[a]);
    for (int b = 0; b < k; ++b) ws.s_aa(a, b) = d.schur(ws.rows[a], ws.rows[b]);
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(ws.s_aa);
  lu.setThreshold(1e-10);
  if (!lu.isInvertible()) return false;
  ws.lambda = lu.solve(ws.rhs);
  for (int a = 0; a < k; ++a) ws.u -= d.pinv_gt.col(ws.rows[a]) * ws.lambda(a);
  return true;
}

void consider(const QpProblem& problem, const OracleData& d, std::uint32_t mask,
              Workspace& ws, Candidate& best) {
  if (std::popcount(mask) > d.n) return;
  if (!solve_active_set(d, mask, ws)) return;
  if (d.m > 0) {
    const double violation =
        (problem.g_matrix * ws.u - problem.h_vector).maxCoeff();
    if (violation > d.feas_tol) return;
  }
  Candidate c{problem.objective(ws.u), mask, true};
  if (c.better_than(best)) best = c;
}

QpSolution finalize(const QpProblem& problem, const OracleData& d,
                    const Candidate& best, std::uint64_t examined,
                    std::chrono::steady_clock::time_point start) {
  QpSolution sol;
  sol.iterations = static_cast<int>(examined);
  sol.multipliers = Eigen::VectorXd::Zero(d.m);
  if (!best.found) {
    sol.status = QpStatus::kInfeasible;
    sol.u_star = d.u_free;
  } else {
    Workspace ws;
    solve_active_set(d, best.mask, ws);
    sol.u_star = ws.u;
    for (std::size_t a = 0; a < ws.rows.size(); ++a) {
      sol.multipliers(ws.rows[a]) = ws.lambda(static_cast<Eigen::Index>(a));
    }
    sol.status = QpStatus::kOptimal;
    const KktResiduals r = kkt_residuals(problem, sol.u_star, sol.multipliers);
    sol.dual_residual = r.stationarity;
    sol.primal_residual = r.primal;
    sol.duality_gap = r.complementarity;
  }
  sol.solve_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return sol;
}

}  // namespace

QpSolution active_set_oracle_serial(const QpProblem& problem) {
  const auto start = std::chrono::steady_clock::now();
  const OracleData d = prepare(problem);
  const std::uint64_t total = std::uint64_t{1} << d.m;
  Workspace ws;
  Candidate best;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    consider(problem, d, static_cast<std::uint32_t>(mask), ws, best);
  }
  return finalize(problem, d, best, total, start);
}

QpSolution active_set_oracle(const QpProblem& problem) {
  const auto start = std::chrono::steady_clock::now();
  const OracleData d = prepare(problem);
  const std::int64_t total = std::int64_t{1} << d.m;
  Candidate best;
#pragma omp parallel
  {
    Workspace ws;
    Candidate local;
#pragma omp for schedule(static)
    for (std::int64_t mask = 0; mask < total; ++mask) {
      consider(problem, d, static_cast<std::uint32_t>(mask), ws, local);
    }
#pragma omp critical(wair_oracle_merge)
    {
      if (local.better_than(best)) best = local;
    }
  }
  return finalize(problem, d, best, static_cast<std::uint64_t>(total), start);
}

}  // namespace wair
