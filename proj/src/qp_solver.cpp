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

#include "wair/qp_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace wair {
namespace {

constexpr double kFractionToBoundary = 0.99;
constexpr double kSingularEigenvalue = 1e-12;
constexpr double kInfeasibilityTolerance = 1e-9;
constexpr int kMaxBacktracks = 40;
constexpr int kPolishRefinements = 5;

double inf_norm(const Eigen::VectorXd& v) {
  return v.size() == 0 ? 0.0 : v.lpNorm<Eigen::Infinity>();
}

// Largest alpha in (0, 1] keeping v + alpha*dv >= 0.
double max_step(const Eigen::VectorXd& v, const Eigen::VectorXd& dv) {
  double alpha = 1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (dv(i) < 0.0) alpha = std::min(alpha, -v(i) / dv(i));
  }
  return alpha;
}

// Re-solves the equality-constrained KKT system on the active set identified
// by the interior point (z_i > s_i). Accepted only if the result is primal
// feasible with nonnegative multipliers, so it never replaces a valid
// optimum with an invalid one.
bool polish(const Eigen::MatrixXd& p, const Eigen::VectorXd& q,
            const Eigen::MatrixXd& g, const Eigen::VectorXd& h, double tol,
            Eigen::VectorXd& u, Eigen::VectorXd& s, Eigen::VectorXd& z) {
  const auto n = u.size();
  std::vector<Eigen::Index> active;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    if (z(i) > s(i)) active.push_back(i);
  }
  const auto k = static_cast<Eigen::Index>(active.size());
  if (k > n) return false;
  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(n + k, n + k);
  Eigen::VectorXd rhs(n + k);
  kkt.topLeftCorner(n, n) = p;
  rhs.head(n) = -q;
  for (Eigen::Index j = 0; j < k; ++j) {
    kkt.block(0, n + j, n, 1) = g.row(active[j]).transpose();
    kkt.block(n + j, 0, 1, n) = g.row(active[j]);
    rhs(n + j) = h(active[j]);
  }
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(kkt);
  if (!lu.isInvertible()) return false;
  const Eigen::VectorXd x = lu.solve(rhs);
  if (!x.allFinite()) return false;
  const Eigen::VectorXd u_new = x.head(n);
  const Eigen::VectorXd slack = h - g * u_new;
  if (slack.size() > 0 && -slack.minCoeff() > tol * (1.0 + inf_norm(h))) return false;
  Eigen::VectorXd z_new = Eigen::VectorXd::Zero(z.size());
  for (Eigen::Index j = 0; j < k; ++j) {
    if (x(n + j) < 0.0) return false;
    z_new(active[j]) = x(n + j);
  }
  u = u_new;
  z = z_new;
  s = slack.cwiseMax(0.0);
  return true;
}

bool is_certificate(const Eigen::MatrixXd& g, const Eigen::VectorXd& h,
                    const Eigen::VectorXd& y) {
  const double hy = h.dot(y);
  return hy < 0.0 && inf_norm(g.transpose() * y) <= kInfeasibilityTolerance * (-hy);
}

double min_eigenvalue(const Eigen::MatrixXd& p) {
  if (p.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(p, Eigen::EigenvaluesOnly);
  return eig.eigenvalues()(0);
}

void check_dimensions(const QpProblem& problem) {
  const auto n = problem.q_vector.size();
  const auto m = problem.h_vector.size();
  if (problem.p_matrix.rows() != n || problem.p_matrix.cols() != n) {
    throw std::invalid_argument("QpProblem: P must be " + std::to_string(n) +
                                "x" + std::to_string(n));
  }
  if (problem.g_matrix.rows() != m || (m > 0 && problem.g_matrix.cols() != n)) {
    throw std::invalid_argument("QpProblem: G must be " + std::to_string(m) +
                                "x" + std::to_string(n));
  }
  if (!problem.p_matrix.allFinite() || !problem.q_vector.allFinite() ||
      !problem.g_matrix.allFinite() || !problem.h_vector.allFinite()) {
    throw std::invalid_argument("QpProblem: non-finite entries");
  }
}

void check_symmetric(const Eigen::MatrixXd& p) {
  const double scale = std::max(1.0, p.cwiseAbs().maxCoeff());
  if ((p - p.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw std::invalid_argument("QpProblem: P is not symmetric");
  }
}

void check_psd(const Eigen::MatrixXd& p, double lambda_min) {
  const double norm = p.cwiseAbs().maxCoeff();
  if (lambda_min < -1e-9 * std::max(norm, 1e-300)) {
    throw std::invalid_argument("QpProblem: P is not positive semidefinite (" +
                                std::to_string(lambda_min) + ")");
  }
}

}  // namespace

std::string_view to_string(QpStatus status) {
  switch (status) {
    case QpStatus::kOptimal:
      return "optimal";
    case QpStatus::kMaxIterations:
      return "max_iterations";
    case QpStatus::kInfeasible:
      return "infeasible";
  }
  return "unknown";
}

double QpProblem::objective(const Eigen::VectorXd& u) const {
  return 0.5 * u.dot(p_matrix * u) + q_vector.dot(u);
}

void QpProblem::validate() const {
  check_dimensions(*this);
  if (num_variables() == 0) return;
  check_symmetric(p_matrix);
  check_psd(p_matrix, min_eigenvalue(p_matrix));
}

void SolverConfig::validate() const {
  if (!(tolerance > 0.0)) {
    throw std::invalid_argument("SolverConfig: tolerance must be positive");
  }
  if (max_iterations < 1) {
    throw std::invalid_argument("SolverConfig: max_iterations must be >= 1");
  }
  if (!(regularization >= 0.0)) {
    throw std::invalid_argument("SolverConfig: regularization must be >= 0");
  }
}

KktResiduals kkt_residuals(const QpProblem& problem, const Eigen::VectorXd& u,
                           const Eigen::VectorXd& multipliers) {
  if (u.size() != problem.num_variables() ||
      multipliers.size() != problem.num_constraints()) {
    throw std::invalid_argument("kkt_residuals: dimension mismatch");
  }
  KktResiduals r;
  Eigen::VectorXd grad = problem.p_matrix * u + problem.q_vector;
  if (problem.num_constraints() > 0) {
    grad += problem.g_matrix.transpose() * multipliers;
    const Eigen::VectorXd slack = problem.h_vector - problem.g_matrix * u;
    r.primal = std::max(0.0, -slack.minCoeff());
    r.complementarity = multipliers.cwiseProduct(slack).cwiseAbs().maxCoeff();
    r.dual_infeasibility = std::max(0.0, -multipliers.minCoeff());
  }
  r.stationarity = inf_norm(grad);
  return r;
}

QpSolver::QpSolver(SolverConfig config) : config_(config) {
  config_.validate();
}

QpSolution QpSolver::solve(const QpProblem& problem) {
  const auto start = std::chrono::steady_clock::now();
  check_dimensions(problem);
  const int n = problem.num_variables();
  const int m = problem.num_constraints();

  QpSolution sol;
  auto finish = [&](QpStatus status) {
    sol.status = status;
    sol.solve_time = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    return sol;
  };

  if (n == 0) {
    sol.u_star.resize(0);
    sol.multipliers.resize(m);
    sol.multipliers.setZero();
    const bool feasible = m == 0 || problem.h_vector.minCoeff() >= 0.0;
    return finish(feasible ? QpStatus::kOptimal : QpStatus::kInfeasible);
  }

  check_symmetric(problem.p_matrix);
  p_ = problem.p_matrix;
  const double lambda_min = min_eigenvalue(p_);
  check_psd(p_, lambda_min);
  if (lambda_min < kSingularEigenvalue) {
    p_.diagonal().array() += config_.regularization;
  }

  // Normalize the objective so that max(|P|, |q|) = 1; the optimizer is
  // unchanged and multipliers scale by the same factor.
  const double magnitude =
      std::max(p_.cwiseAbs().maxCoeff(), inf_norm(problem.q_vector));
  const double scale = magnitude > 0.0 ? 1.0 / magnitude : 1.0;
  p_ *= scale;
  q_ = scale * problem.q_vector;

  const auto& g = problem.g_matrix;
  const auto& h = problem.h_vector;
  const double q_norm = inf_norm(q_);
  const double q_norm_raw = inf_norm(problem.q_vector);
  const double h_norm = inf_norm(h);
  const double tol = config_.tolerance;

  // Start from the (regularized) unconstrained minimizer.
  ldlt_.compute(p_);
  u_ = ldlt_.solve(-q_);
  if (!u_.allFinite()) u_.setZero();

  if (m == 0) {
    r_dual_ = p_ * u_ + q_;
    sol.u_star = u_;
    sol.multipliers.resize(0);
    sol.dual_residual = inf_norm(r_dual_);
    const bool ok = sol.dual_residual <= tol * (1.0 + q_norm);
    return finish(ok ? QpStatus::kOptimal : QpStatus::kMaxIterations);
  }

  // Push the slacks to strict feasibility.
  s_ = h - g * u_;
  for (int i = 0; i < m; ++i) s_(i) = std::max(s_(i), 1.0);
  z_ = Eigen::VectorXd::Ones(m);

  auto residuals = [&] {
    r_dual_.noalias() = p_ * u_;
    r_dual_ += q_;
    r_dual_.noalias() += g.transpose() * z_;
    r_primal_.noalias() = g * u_;
    r_primal_ += s_ - h;
  };

  // Newton direction for complementarity right-hand side r_comp_.
  auto direction = [&] {
    rhs_ = -r_dual_;
    rhs_.noalias() -=
        g.transpose() *
        (w_.cwiseProduct(r_primal_) - r_comp_.cwiseQuotient(s_));
    if (llt_.info() == Eigen::Success) {
      du_ = llt_.solve(rhs_);
    } else {
      du_ = ldlt_.solve(rhs_);
    }
    dz_.noalias() = g * du_;
    dz_ += r_primal_;
    dz_ = w_.cwiseProduct(dz_) - r_comp_.cwiseQuotient(s_);
    ds_ = -(r_comp_ + s_.cwiseProduct(dz_)).cwiseQuotient(z_);
  };

  auto gap_after = [&](double alpha) {
    return (s_ + alpha * ds_).dot(z_ + alpha * dz_);
  };

  QpStatus status = QpStatus::kMaxIterations;
  int iter = 0;
  int refinements = 0;
  Eigen::VectorXd z_prev;
  Eigen::VectorXd u_keep, s_keep, z_keep;
  for (;; ++iter) {
    residuals();
    const double gap = s_.dot(z_);
    sol.dual_residual = inf_norm(r_dual_);
    sol.primal_residual = inf_norm(r_primal_);
    sol.duality_gap = gap;

    const double objective = 0.5 * u_.dot(p_ * u_) + q_.dot(u_);
    const bool dual_ok = sol.dual_residual <= tol * (1.0 + q_norm) &&
                         sol.dual_residual / scale <= tol * (1.0 + q_norm_raw);
    const bool primal_ok = sol.primal_residual <= tol * (1.0 + h_norm);
    const bool gap_ok =
        gap <= tol && gap / scale <= tol * (1.0 + std::abs(objective) / scale);
    if (dual_ok && primal_ok && gap_ok) {
      status = QpStatus::kOptimal;
      if (polish(p_, q_, g, h, tol, u_, s_, z_)) {
        residuals();
        sol.dual_residual = inf_norm(r_dual_);
        sol.primal_residual = inf_norm(r_primal_);
        sol.duality_gap = s_.dot(z_);
        break;
      }
      // Weakly active rows separate further with a few more steps.
      if (refinements == 0) {
        u_keep = u_;
        s_keep = s_;
        z_keep = z_;
      }
      if (++refinements > kPolishRefinements) break;
    } else if (status == QpStatus::kOptimal) {
      u_ = u_keep;
      s_ = s_keep;
      z_ = z_keep;
      residuals();
      break;
    }

    // Primal infeasibility certificate: y >= 0, G'y ~ 0, h'y < 0. Tried on
    // z itself and on the positive part of the last multiplier step, which
    // aligns with the certificate ray long before z does.
    if (sol.primal_residual > tol * (1.0 + h_norm) &&
        (is_certificate(g, h, z_) ||
         (iter > 0 && is_certificate(g, h, (z_ - z_prev).cwiseMax(0.0))))) {
      status = QpStatus::kInfeasible;
      break;
    }
    z_prev = z_;

    if (iter >= config_.max_iterations) break;

    w_ = z_.cwiseQuotient(s_);
    kkt_ = p_;
    kkt_.noalias() += g.transpose() * w_.asDiagonal() * g;
    llt_.compute(kkt_);
    if (llt_.info() != Eigen::Success) ldlt_.compute(kkt_);

    // Predictor.
    r_comp_ = s_.cwiseProduct(z_);
    direction();
    const double alpha_aff = std::min(max_step(s_, ds_), max_step(z_, dz_));
    const double mu = gap / m;
    const double mu_aff = gap_after(alpha_aff) / m;
    const double sigma = std::pow(std::clamp(mu_aff / mu, 0.0, 1.0), 3);

    // Corrector with second-order term.
    const Eigen::VectorXd second_order = ds_.cwiseProduct(dz_);
    r_comp_ = s_.cwiseProduct(z_) + second_order;
    r_comp_.array() -= sigma * mu;
    direction();

    double alpha = std::min(
        1.0, kFractionToBoundary * std::min(max_step(s_, ds_), max_step(z_, dz_)));
    int backtracks = 0;
    while (gap_after(alpha) > gap && backtracks < kMaxBacktracks) {
      alpha *= 0.5;
      ++backtracks;
    }
    if (gap_after(alpha) > gap) {
      // Fall back to the centered Newton step, whose gap derivative is
      // -(1 - sigma) s'z < 0.
      r_comp_ = s_.cwiseProduct(z_);
      r_comp_.array() -= sigma * mu;
      direction();
      alpha = std::min(1.0, kFractionToBoundary *
                                std::min(max_step(s_, ds_), max_step(z_, dz_)));
      backtracks = 0;
      while (gap_after(alpha) > gap && backtracks < kMaxBacktracks) {
        alpha *= 0.5;
        ++backtracks;
      }
      if (gap_after(alpha) > gap) alpha = 0.0;
    }

    u_ += alpha * du_;
    s_ += alpha * ds_;
    z_ += alpha * dz_;
    if (config_.record_gap_trace) sol.gap_trace.push_back(s_.dot(z_));
    if (alpha == 0.0) {
      ++iter;
      residuals();
      break;
    }
  }

  sol.iterations = iter;
  sol.u_star = u_;
  sol.multipliers = z_ / scale;
  return finish(status);
}

QpSolution solve(const QpProblem& problem, const SolverConfig& config) {
  QpSolver solver(config);
  return solver.solve(problem);
}

}  // namespace wair
