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

#include "wair/mpc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace wair {

void MpcConfig::validate() const {
  if (horizon < 1) throw std::invalid_argument("MpcConfig: horizon must be >= 1");
  if (!(dt > 0.0)) throw std::invalid_argument("MpcConfig: dt must be positive");
  if (!(mu_s > 0.0)) throw std::invalid_argument("MpcConfig: mu_s must be positive");
  if (!(lambda_min_n >= 0.0)) {
    throw std::invalid_argument("MpcConfig: lambda_min_n must be >= 0");
  }
  if (!(q_weight.array() >= 0.0).all()) {
    throw std::invalid_argument("MpcConfig: q_weight must be non-negative");
  }
  if (!(u_min.array() <= u_max.array()).all()) {
    throw std::invalid_argument("MpcConfig: u_min must not exceed u_max");
  }
  if (friction_mode == FrictionMode::kTwoSided && !(lambda_min_n > 0.0)) {
    throw std::invalid_argument(
        "MpcConfig: two-sided friction cone needs lambda_min_n > 0");
  }
  solver.validate();
}

Discretization discretize(const LtiModel& model, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("discretize: dt must be positive");
  Discretization d;
  d.f_matrix = Eigen::Matrix2d::Identity() + model.a_matrix * dt;
  d.g_matrix = model.b_matrix * dt;
  d.affine_step = model.affine_offset * dt;
  return d;
}

Eigen::VectorXd PredictionMatrices::predict(const Eigen::Vector2d& x0,
                                            const Eigen::VectorXd& inputs) const {
  return h_matrix * inputs + w_matrix * x0 + affine_rollout;
}

PredictionMatrices condense(const Eigen::Matrix2d& f, const Eigen::Matrix2d& g,
                            int horizon, const Eigen::Vector2d& affine_step) {
  if (horizon < 1) throw std::invalid_argument("condense: horizon must be >= 1");
  const int size = 2 * horizon;
  PredictionMatrices pred;
  pred.f_matrix = f;
  pred.g_matrix = g;
  pred.h_matrix = Eigen::MatrixXd::Zero(size, size);
  pred.w_matrix.resize(size, 2);
  pred.affine_rollout.resize(size);

  // powers[k] = F^k
  std::vector<Eigen::Matrix2d> powers(horizon + 1);
  powers[0] = Eigen::Matrix2d::Identity();
  for (int k = 1; k <= horizon; ++k) powers[k] = f * powers[k - 1];

  Eigen::Vector2d rollout = Eigen::Vector2d::Zero();
  for (int i = 0; i < horizon; ++i) {
    pred.w_matrix.block<2, 2>(2 * i, 0) = powers[i + 1];
    for (int j = 0; j <= i; ++j) {
      pred.h_matrix.block<2, 2>(2 * i, 2 * j) = powers[i - j] * g;
    }
    rollout = f * rollout + affine_step;
    pred.affine_rollout.segment<2>(2 * i) = rollout;
  }
  return pred;
}

double QuadraticCost::evaluate(const Eigen::VectorXd& inputs) const {
  return inputs.dot(r_matrix * inputs) + b_vector.dot(inputs) + c;
}

QuadraticCost build_cost(const PredictionMatrices& pred,
                         const Eigen::Vector2d& x0,
                         const Eigen::VectorXd& z_ref,
                         const Eigen::Vector2d& q_weight) {
  const Eigen::Index size = pred.h_matrix.rows();
  if (z_ref.size() != size) {
    throw std::invalid_argument("build_cost: reference length mismatch");
  }
  Eigen::VectorXd q_diag(size);
  for (Eigen::Index i = 0; i < size; i += 2) q_diag.segment<2>(i) = q_weight;

  const Eigen::VectorXd free_error = pred.w_matrix * x0 + pred.affine_rollout - z_ref;
  const Eigen::MatrixXd qh = q_diag.asDiagonal() * pred.h_matrix;

  QuadraticCost cost;
  cost.r_matrix = pred.h_matrix.transpose() * qh;
  // Exact symmetry keeps the solver's symmetry check meaningful.
  cost.r_matrix = 0.5 * (cost.r_matrix + cost.r_matrix.transpose()).eval();
  cost.b_vector = 2.0 * qh.transpose() * free_error;
  cost.c = free_error.dot(q_diag.asDiagonal() * free_error);
  return cost;
}

ConstraintSet build_constraints(const MpcConfig& config, int horizon) {
  if (horizon < 1) {
    throw std::invalid_argument("build_constraints: horizon must be >= 1");
  }
  if (config.friction_mode == FrictionMode::kTwoSided &&
      !(config.lambda_min_n > 0.0)) {
    throw std::invalid_argument(
        "build_constraints: two-sided friction cone needs lambda_min_n > 0");
  }
  const bool two_sided = config.friction_mode == FrictionMode::kTwoSided;
  const int rows_per_step = two_sided ? 7 : 6;
  const int n = 2 * horizon;

  ConstraintSet set;
  set.g_matrix = Eigen::MatrixXd::Zero(rows_per_step * horizon, n);
  set.h_vector.resize(rows_per_step * horizon);

  const double mu = config.mu_s;
  int row = 0;
  auto add = [&](int step, double cx, double cy, double bound) {
    set.g_matrix(row, 2 * step) = cx;
    set.g_matrix(row, 2 * step + 1) = cy;
    set.h_vector(row) = bound;
    ++row;
  };
  for (int k = 0; k < horizon; ++k) {
    add(k, 0.0, -1.0, -config.lambda_min_n);  // lambda_y >= lambda_min_n
    // lambda_y >= lambda_min_n >= 0 lets |lambda_y| be written as lambda_y.
    add(k, 1.0, -mu, 0.0);
    if (two_sided) add(k, -1.0, -mu, 0.0);
    add(k, 1.0, 0.0, config.u_max(0));
    add(k, -1.0, 0.0, -config.u_min(0));
    add(k, 0.0, 1.0, config.u_max(1));
    add(k, 0.0, -1.0, -config.u_min(1));
  }
  return set;
}

ReferenceTrajectory::ReferenceTrajectory(std::vector<ReferenceSample> samples)
    : samples_(std::move(samples)) {
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const auto& s = samples_[i];
    if (!std::isfinite(s.t) || !std::isfinite(s.x_ref) ||
        !std::isfinite(s.xdot_ref)) {
      throw std::invalid_argument("ReferenceTrajectory: non-finite sample");
    }
    if (i > 0 && !(s.t > samples_[i - 1].t)) {
      throw std::invalid_argument(
          "ReferenceTrajectory: timestamps must strictly increase");
    }
  }
}

ReferenceSample ReferenceTrajectory::at(double t) const {
  if (samples_.empty()) throw std::logic_error("ReferenceTrajectory: empty");
  const auto& first = samples_.front();
  const auto& last = samples_.back();
  if (t <= first.t) return {t, first.x_ref, first.xdot_ref};
  if (t >= last.t) {
    return {t, last.x_ref + last.xdot_ref * (t - last.t), last.xdot_ref};
  }
  const auto upper = std::upper_bound(
      samples_.begin(), samples_.end(), t,
      [](double value, const ReferenceSample& s) { return value < s.t; });
  const auto& hi = *upper;
  const auto& lo = *(upper - 1);
  const double w = (t - lo.t) / (hi.t - lo.t);
  return {t, lo.x_ref + w * (hi.x_ref - lo.x_ref),
          lo.xdot_ref + w * (hi.xdot_ref - lo.xdot_ref)};
}

Eigen::VectorXd stacked_reference(const ReferenceTrajectory& reference,
                                  double t, double dt, int horizon,
                                  double x_cop) {
  Eigen::VectorXd z(2 * horizon);
  for (int k = 0; k < horizon; ++k) {
    const ReferenceSample s = reference.at(t + (k + 1) * dt);
    z(2 * k) = s.x_ref - x_cop;
    z(2 * k + 1) = s.xdot_ref;
  }
  return z;
}

MpcResult mpc_step(const MpcConfig& config, const LtiModel& model,
                   const VlipState& x0, const ReferenceTrajectory& reference,
                   double t, QpSolver& solver) {
  const int nh = config.horizon;
  const Discretization disc = discretize(model, config.dt);
  const PredictionMatrices pred =
      condense(disc.f_matrix, disc.g_matrix, nh, disc.affine_step);
  const Eigen::VectorXd z_ref = stacked_reference(
      reference, t, config.dt, nh, model.linearization_point.x_cop0);
  const QuadraticCost cost =
      build_cost(pred, model.to_model_state(x0), z_ref, config.q_weight);
  ConstraintSet cons = build_constraints(config, nh);

  QpProblem qp;
  qp.p_matrix = 2.0 * cost.r_matrix;
  qp.q_vector = cost.b_vector;
  qp.g_matrix = std::move(cons.g_matrix);
  qp.h_vector = std::move(cons.h_vector);

  MpcResult result;
  result.solution = solver.solve(qp);
  result.u0 = {result.solution.u_star(0), result.solution.u_star(1)};
  return result;
}

MpcResult mpc_step(const MpcConfig& config, const LtiModel& model,
                   const VlipState& x0, const ReferenceTrajectory& reference,
                   double t) {
  QpSolver solver(config.solver);
  return mpc_step(config, model, x0, reference, t, solver);
}

MpcController::MpcController(MpcConfig config, VlipParams params)
    : config_(std::move(config)),
      params_(params),
      solver_(config_.solver),
      lambda_y0_(config_.lambda_min_n) {
  config_.validate();
  params_.validate();
}

MpcResult MpcController::step(const VlipState& state, double x_cop,
                              const ReferenceTrajectory& reference, double t) {
  const LtiModel model = linearize(
      params_, {state.x_com, x_cop, lambda_y0_}, config_.linearization);
  MpcResult result = mpc_step(config_, model, state, reference, t, solver_);
  if (result.solution.status != QpStatus::kInfeasible &&
      std::isfinite(result.u0.lambda_y)) {
    lambda_y0_ = result.u0.lambda_y;
  }
  return result;
}

}  // namespace wair
