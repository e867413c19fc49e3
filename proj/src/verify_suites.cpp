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

#include "wair/verify.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include <Eigen/QR>
#include <nlohmann/json.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include "wair/hrom_kinematics.hpp"
#include "wair/mpc.hpp"
#include "wair/simulator.hpp"

namespace wair::verification {
namespace {

std::string fmt_sci(double v) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(3) << v;
  return s.str();
}

CheckResult make_check(std::string name, bool passed, std::string detail,
                       std::string replay = {}) {
  return {std::move(name), passed, std::move(detail),
          passed ? std::string() : std::move(replay)};
}

nlohmann::json matrix_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

nlohmann::json vector_json(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

SuiteReport qp_oracle_suite(std::uint64_t seed) {
  SuiteReport report{"qp_oracle", {}};
  const OracleComparison cmp = compare_with_oracle(seed, 1000);
  const bool all_optimal =
      cmp.solver_optimal == cmp.instances && cmp.oracle_optimal == cmp.instances;
  report.checks.push_back(make_check(
      "all instances optimal", all_optimal,
      std::to_string(cmp.solver_optimal) + "/" + std::to_string(cmp.instances) +
          " solver, " + std::to_string(cmp.oracle_optimal) + " oracle",
      cmp.first_failure));
  report.checks.push_back(make_check("solver matches oracle |du| <= 1e-6",
                                     cmp.max_u_error <= 1e-6,
                                     "max " + fmt_sci(cmp.max_u_error),
                                     cmp.first_failure));
  report.checks.push_back(make_check("objective gap <= 1e-8",
                                     cmp.max_objective_gap <= 1e-8,
                                     "max " + fmt_sci(cmp.max_objective_gap),
                                     cmp.first_failure));
  report.checks.push_back(make_check("KKT residuals <= 1e-8",
                                     cmp.max_kkt_error <= 1e-8,
                                     "max " + fmt_sci(cmp.max_kkt_error),
                                     cmp.first_failure));
  report.checks.push_back(make_check("OpenMP oracle == serial oracle",
                                     cmp.parallel_matches_serial, "bitwise"));

  // Scale invariance and determinism on a fresh batch.
  std::mt19937_64 rng(seed ^ 0x5ca1eULL);
  double worst_scale = 0.0;
  bool deterministic = true;
  std::string replay;
  for (int i = 0; i < 100; ++i) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const int m = 1 + static_cast<int>(rng() % 12);
    const QpProblem qp = random_strictly_convex_qp(rng, n, m);
    const double s = std::exp(uniform(rng, std::log(1e-3), std::log(1e3)));
    QpProblem scaled = qp;
    scaled.p_matrix *= s;
    scaled.q_vector *= s;
    const QpSolution a = solve(qp);
    const QpSolution b = solve(scaled);
    const QpSolution c = solve(qp);
    const double err = (a.u_star - b.u_star).lpNorm<Eigen::Infinity>();
    if (err > worst_scale) {
      worst_scale = err;
      if (err > 1e-8 && replay.empty()) replay = to_json(qp);
    }
    if (a.u_star != c.u_star) deterministic = false;
  }
  report.checks.push_back(make_check("scale invariance |du| <= 1e-8",
                                     worst_scale <= 1e-8,
                                     "max " + fmt_sci(worst_scale), replay));
  report.checks.push_back(
      make_check("bitwise determinism", deterministic, "100 repeated solves"));
  return report;
}

SuiteReport rollout_suite(std::uint64_t seed) {
  SuiteReport report{"rollout", {}};
  const RolloutCheck r = check_condensation(seed, 500);
  report.checks.push_back(make_check("condensed prediction == iterated rollout (1e-12)",
                                     r.max_rollout_error <= 1e-12,
                                     "max " + fmt_sci(r.max_rollout_error)));
  report.checks.push_back(make_check("cost (R, b, c) == direct norm (1e-10 rel)",
                                     r.max_cost_rel_error <= 1e-10,
                                     "max " + fmt_sci(r.max_cost_rel_error)));
  return report;
}

SuiteReport convergence_suite(std::uint64_t) {
  SuiteReport report{"convergence", {}};
  VlipParams p;
  const ConvergenceResult c = rk4_convergence(p, {0.02, 0.2}, 0.0, {2.0, 60.0},
                                              1.0, {10, 20, 40, 80});
  std::ostringstream detail;
  detail << "order " << std::fixed << std::setprecision(3) << c.order << " (errors";
  for (double e : c.errors) detail << ' ' << fmt_sci(e);
  detail << ')';
  report.checks.push_back(make_check("RK4 order in [3.7, 4.3]",
                                     c.order >= 3.7 && c.order <= 4.3, detail.str()));
  return report;
}

SuiteReport invariants_suite(std::uint64_t seed) {
  SuiteReport report{"invariants", {}};
  std::mt19937_64 rng(seed);
  constexpr int kTrials = 1000;

  double roundtrip = 0.0, zmp = 0.0, superposition = 0.0;
  bool slope_bitwise = true;
  for (int i = 0; i < kTrials; ++i) {
    VlipParams p;
    p.mass = uniform(rng, 1.0, 20.0);
    p.y0 = uniform(rng, 0.2, 1.0);
    p.slope_alpha = uniform(rng, -1.5, 1.5);
    const VlipState s{uniform(rng, -5.0, 5.0), uniform(rng, -2.0, 2.0)};
    const double cop = s.x_com + uniform(rng, -0.3, 0.3);
    const GroundReaction grf{uniform(rng, -100.0, 100.0), uniform(rng, 0.0, 200.0)};

    const double xdd = cop_acceleration(p, s, cop, grf);
    const ThrusterForce f = recover_thruster_forces(p, xdd, grf);
    const double lhs = p.mass * xdd;
    const double rhs = -grf.lambda_x - p.mass * p.gravity * std::sin(p.slope_alpha) + f.f_x;
    const double scale = std::abs(lhs) + std::abs(grf.lambda_x) +
                         p.mass * p.gravity + std::abs(f.f_x);
    roundtrip = std::max(roundtrip, std::abs(lhs - rhs) / scale);
    const double normal = grf.lambda_y - p.mass * p.gravity * std::cos(p.slope_alpha) + f.f_y;
    roundtrip = std::max(roundtrip, std::abs(normal) / scale);

    zmp = std::max(zmp, std::abs(zmp_residual(p, s, cop, grf, xdd, 0.0)));

    for (double deg : {0.0, 20.0, 40.0}) {
      VlipParams q = p;
      q.slope_alpha = deg * std::numbers::pi / 180.0;
      if (cop_acceleration(q, s, cop, grf) != xdd) slope_bitwise = false;
    }

    const GroundReaction g2{uniform(rng, -100.0, 100.0), uniform(rng, 0.0, 200.0)};
    const double a = uniform(rng, -2.0, 2.0), b = uniform(rng, -2.0, 2.0);
    // Affine in the force: f(a g1 + b g2) = a f(g1) + b f(g2) + (1 - a - b) f(0).
    const GroundReaction mix{a * grf.lambda_x + b * g2.lambda_x,
                             a * grf.lambda_y + b * g2.lambda_y};
    const double combined = a * xdd + b * cop_acceleration(p, s, cop, g2) +
                            (1.0 - a - b) * cop_acceleration(p, s, cop, {});
    superposition = std::max(
        superposition, std::abs(cop_acceleration(p, s, cop, mix) - combined) /
                           (1.0 + std::abs(combined)));
  }
  report.checks.push_back(make_check("thruster round trip (1e-12 rel)",
                                     roundtrip <= 1e-12, "max " + fmt_sci(roundtrip)));
  report.checks.push_back(
      make_check("ZMP residual zero (1e-12)", zmp <= 1e-12, "max " + fmt_sci(zmp)));
  report.checks.push_back(make_check("COP acceleration independent of slope",
                                     slope_bitwise, "bitwise over 0/20/40 deg"));
  report.checks.push_back(make_check("COP acceleration affine in force",
                                     superposition <= 1e-12,
                                     "max " + fmt_sci(superposition)));

  // Second-order fidelity of the full Taylor model.
  {
    VlipParams p;
    const LinearizationPoint pt{0.03, 0.0, 60.0};
    const LtiModel model = linearize(p, pt, LinearizationMode::kFullTaylor);
    auto error = [&](double h) {
      const VlipState s{pt.x_com0 + h, 0.1};
      const GroundReaction g{1.0, pt.lambda_y0 + 50.0 * h};
      return std::abs(cop_acceleration(p, s, pt.x_cop0, g) -
                      model.predict_acceleration(s, g));
    };
    const double ratio = error(1e-2) / error(5e-3);
    report.checks.push_back(make_check("linearization error is second order",
                                       ratio > 3.9 && ratio < 4.1,
                                       "halving ratio " + std::to_string(ratio)));
  }

  double reconstruction = 0.0;
  bool inherits = true;
  for (int i = 0; i < kTrials; ++i) {
    hrom::ContactPair pair;
    pair.foot_hind = uniform(rng, -1.0, 1.0);
    pair.foot_front = pair.foot_hind + uniform(rng, 0.05, 0.5);
    pair.x_cop = uniform(rng, pair.foot_hind, pair.foot_front);
    const double mu = 0.5;
    pair.lambda_total.lambda_y = uniform(rng, 1.0, 200.0);
    pair.lambda_total.lambda_x = uniform(rng, -mu, mu) * pair.lambda_total.lambda_y;
    const hrom::FootForces f = hrom::distribute_contact_forces(pair);
    reconstruction = std::max(
        {reconstruction,
         std::abs(f.front.lambda_y + f.hind.lambda_y - pair.lambda_total.lambda_y),
         std::abs(f.front.lambda_x + f.hind.lambda_x - pair.lambda_total.lambda_x),
         std::abs(f.front.lambda_y * (pair.foot_front - pair.x_cop) +
                  f.hind.lambda_y * (pair.foot_hind - pair.x_cop))});
    for (const GroundReaction& g : {f.front, f.hind}) {
      if (std::abs(g.lambda_x) > mu * g.lambda_y + 1e-12) inherits = false;
    }
  }
  report.checks.push_back(make_check("force distribution reconstruction (1e-12)",
                                     reconstruction <= 1e-12,
                                     "max " + fmt_sci(reconstruction)));
  report.checks.push_back(
      make_check("per-foot friction inheritance", inherits, "1000 random pairs"));

  // Euler-rate matrix against finite differences of the rotation.
  {
    const Eigen::Vector3d phi0(0.3, -0.4, 1.1);
    const Eigen::Vector3d rates(0.7, -1.3, 0.5);
    const Eigen::Vector3d expected = hrom::euler_rate_matrix(phi0) * rates;
    auto fd_error = [&](double h) {
      const Eigen::Matrix3d r = hrom::body_rotation(phi0);
      const Eigen::Matrix3d r_dot =
          (hrom::body_rotation(phi0 + h * rates) - hrom::body_rotation(phi0 - h * rates)) /
          (2.0 * h);
      const Eigen::Matrix3d w = r.transpose() * r_dot;
      const Eigen::Vector3d omega(w(2, 1), w(0, 2), w(1, 0));
      return (omega - expected).norm();
    };
    const double ratio = fd_error(1e-2) / fd_error(5e-3);
    report.checks.push_back(make_check("Euler-rate matrix matches finite differences",
                                       fd_error(1e-3) < 1e-5 && ratio > 3.5 && ratio < 4.5,
                                       "halving ratio " + std::to_string(ratio)));
  }

  double norm_err = 0.0;
  for (int i = 0; i < kTrials; ++i) {
    hrom::BodyState body;
    body.p_body = Eigen::Vector3d(uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, 0, 1));
    body.phi_body = Eigen::Vector3d(uniform(rng, -3, 3), uniform(rng, -1.5, 1.5),
                                    uniform(rng, -3, 3));
    hrom::LegJoints legs;
    auto& leg = legs[hrom::LegId::kFR];
    leg.phi = uniform(rng, -3, 3);
    leg.gamma = uniform(rng, -3, 3);
    leg.length = uniform(rng, 0.2, 0.6);
    leg.hip_offset = Eigen::Vector3d(0.2, -0.1, 0.0);
    const Eigen::Vector3d hip =
        body.p_body + hrom::body_rotation(body.phi_body) * leg.hip_offset;
    norm_err = std::max(
        norm_err,
        std::abs((hrom::foot_position(body, legs, hrom::LegId::kFR) - hip).norm() -
                 leg.length));
  }
  report.checks.push_back(make_check("leg length preserved by rotations (1e-12)",
                                     norm_err <= 1e-12, "max " + fmt_sci(norm_err)));
  return report;
}

}  // namespace

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.passed; });
}

std::optional<Suite> parse_suite(std::string_view name) {
  if (name == "qp_oracle") return Suite::kQpOracle;
  if (name == "rollout") return Suite::kRollout;
  if (name == "convergence") return Suite::kConvergence;
  if (name == "invariants") return Suite::kInvariants;
  return std::nullopt;
}

std::string_view suite_name(Suite suite) {
  switch (suite) {
    case Suite::kQpOracle:
      return "qp_oracle";
    case Suite::kRollout:
      return "rollout";
    case Suite::kConvergence:
      return "convergence";
    case Suite::kInvariants:
      return "invariants";
  }
  return "unknown";
}

SuiteReport run_suite(Suite suite, std::uint64_t seed) {
  switch (suite) {
    case Suite::kQpOracle:
      return qp_oracle_suite(seed);
    case Suite::kRollout:
      return rollout_suite(seed);
    case Suite::kConvergence:
      return convergence_suite(seed);
    case Suite::kInvariants:
      return invariants_suite(seed);
  }
  return {};
}

void print_report(std::ostream& out, const SuiteReport& report) {
  out << "suite " << report.suite << '\n';
  for (const CheckResult& c : report.checks) {
    out << "  [" << (c.passed ? "PASS" : "FAIL") << "] " << std::left
        << std::setw(52) << c.name << ' ' << c.detail << '\n';
    if (!c.passed && !c.replay.empty()) out << "    replay: " << c.replay << '\n';
  }
  out << (report.passed() ? "all checks passed" : "FAILED") << '\n';
}

QpProblem random_strictly_convex_qp(std::mt19937_64& rng, int n, int m,
                                    double max_condition) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = normal(rng);
  const Eigen::MatrixXd v = Eigen::HouseholderQR<Eigen::MatrixXd>(a).householderQ();
  Eigen::VectorXd eig(n);
  const double half_log = 0.5 * std::log(max_condition);
  for (int i = 0; i < n; ++i) eig(i) = std::exp(uniform(rng, -half_log, half_log));

  QpProblem qp;
  qp.p_matrix = v * eig.asDiagonal() * v.transpose();
  qp.p_matrix = 0.5 * (qp.p_matrix + qp.p_matrix.transpose()).eval();
  qp.q_vector.resize(n);
  for (int i = 0; i < n; ++i) qp.q_vector(i) = 3.0 * normal(rng);
  qp.g_matrix.resize(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) qp.g_matrix(i, j) = normal(rng);
  Eigen::VectorXd interior(n);
  for (int i = 0; i < n; ++i) interior(i) = normal(rng);
  qp.h_vector = qp.g_matrix * interior;
  for (int i = 0; i < m; ++i) qp.h_vector(i) += uniform(rng, 0.01, 1.0);
  return qp;
}

std::string to_json(const QpProblem& problem) {
  nlohmann::json j;
  j["P"] = matrix_json(problem.p_matrix);
  j["q"] = vector_json(problem.q_vector);
  j["G"] = matrix_json(problem.g_matrix);
  j["h"] = vector_json(problem.h_vector);
  return j.dump();
}

double relative_kkt_error(const QpProblem& problem, const QpSolution& solution) {
  const KktResiduals r = kkt_residuals(problem, solution.u_star, solution.multipliers);
  auto inf = [](const Eigen::VectorXd& v) {
    return v.size() ? v.lpNorm<Eigen::Infinity>() : 0.0;
  };
  const double f = problem.objective(solution.u_star);
  return std::max({r.stationarity / (1.0 + inf(problem.q_vector)),
                   r.primal / (1.0 + inf(problem.h_vector)),
                   r.complementarity / (1.0 + std::abs(f)),
                   r.dual_infeasibility / (1.0 + inf(solution.multipliers))});
}

OracleComparison compare_with_oracle(std::uint64_t seed, int instances, int max_n,
                                     int max_m, double u_tolerance) {
  std::mt19937_64 rng(seed);
  std::vector<QpProblem> problems;
  problems.reserve(static_cast<std::size_t>(instances));
  for (int i = 0; i < instances; ++i) {
    const int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_n));
    const int m = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_m));
    problems.push_back(random_strictly_convex_qp(rng, n, m));
  }

  struct Outcome {
    bool solver_ok = false, oracle_ok = false, serial_match = true;
    double du = 0.0, gap = 0.0, kkt = 0.0;
  };
  std::vector<Outcome> out(problems.size());

  // Instances are independent; the serial oracle is the reference for the
  // parallel one.
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < instances; ++i) {
    const QpProblem& qp = problems[static_cast<std::size_t>(i)];
    Outcome& o = out[static_cast<std::size_t>(i)];
    const QpSolution ipm = solve(qp);
    const QpSolution oracle = active_set_oracle_serial(qp);
    const QpSolution oracle_par = active_set_oracle(qp);
    o.serial_match = oracle.u_star == oracle_par.u_star &&
                     oracle.multipliers == oracle_par.multipliers &&
                     oracle.status == oracle_par.status;
    o.solver_ok = ipm.status == QpStatus::kOptimal;
    o.oracle_ok = oracle.status == QpStatus::kOptimal;
    if (o.solver_ok && o.oracle_ok) {
      o.du = (ipm.u_star - oracle.u_star).lpNorm<Eigen::Infinity>();
      const double fo = qp.objective(oracle.u_star);
      o.gap = std::abs(qp.objective(ipm.u_star) - fo) / (1.0 + std::abs(fo));
    }
    if (o.solver_ok) o.kkt = relative_kkt_error(qp, ipm);
  }

  OracleComparison cmp;
  cmp.instances = instances;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Outcome& o = out[i];
    cmp.solver_optimal += o.solver_ok;
    cmp.oracle_optimal += o.oracle_ok;
    cmp.max_u_error = std::max(cmp.max_u_error, o.du);
    cmp.max_objective_gap = std::max(cmp.max_objective_gap, o.gap);
    cmp.max_kkt_error = std::max(cmp.max_kkt_error, o.kkt);
    cmp.parallel_matches_serial = cmp.parallel_matches_serial && o.serial_match;
    const bool bad = !o.solver_ok || !o.oracle_ok || o.du > u_tolerance ||
                     o.gap > 1e-8 || o.kkt > 1e-8 || !o.serial_match;
    if (bad && cmp.first_failure.empty()) cmp.first_failure = to_json(problems[i]);
  }
  return cmp;
}

VlipState exact_pendulum_state(const VlipParams& params, const VlipState& initial,
                               double x_cop, const GroundReaction& grf, double t) {
  // z = [x_com, xdot_com, 1];  xdd = (x - x_cop) ly/(m y0) - lx/m.
  const double k = params.mass * params.y0;
  Eigen::Matrix3d a = Eigen::Matrix3d::Zero();
  a(0, 1) = 1.0;
  a(1, 0) = grf.lambda_y / k;
  a(1, 2) = -x_cop * grf.lambda_y / k - grf.lambda_x / params.mass;
  const Eigen::Matrix3d phi = (a * t).exp();
  const Eigen::Vector3d z = phi * Eigen::Vector3d(initial.x_com, initial.xdot_com, 1.0);
  return {z(0), z(1)};
}

ConvergenceResult rk4_convergence(const VlipParams& params,
                                  const VlipState& initial, double x_cop,
                                  const GroundReaction& grf, double horizon,
                                  const std::vector<int>& step_counts) {
  ConvergenceResult r;
  const VlipState exact = exact_pendulum_state(params, initial, x_cop, grf, horizon);
  for (int steps : step_counts) {
    const double dt = horizon / steps;
    VlipState s = initial;
    for (int i = 0; i < steps; ++i) s = rk4_step(params, s, x_cop, grf, dt);
    r.step_sizes.push_back(dt);
    r.errors.push_back(
        std::hypot(s.x_com - exact.x_com, s.xdot_com - exact.xdot_com));
  }
  // Least-squares slope in log-log space.
  const auto count = static_cast<double>(r.errors.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < r.errors.size(); ++i) {
    const double x = std::log(r.step_sizes[i]);
    const double y = std::log(r.errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  r.order = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  return r;
}

RolloutCheck check_condensation(std::uint64_t seed, int instances) {
  std::mt19937_64 rng(seed);
  RolloutCheck check;
  for (int i = 0; i < instances; ++i) {
    const int nh = 1 + static_cast<int>(rng() % 8);
    Eigen::Matrix2d f, g;
    f << 1.0 + uniform(rng, -0.2, 0.2), uniform(rng, -0.2, 0.2),
        uniform(rng, -0.2, 0.2), 1.0 + uniform(rng, -0.2, 0.2);
    g << uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1),
        uniform(rng, -1, 1);
    const Eigen::Vector2d c(uniform(rng, -0.1, 0.1), uniform(rng, -0.1, 0.1));
    const Eigen::Vector2d x0(uniform(rng, -1, 1), uniform(rng, -1, 1));
    Eigen::VectorXd u(2 * nh);
    for (int k = 0; k < 2 * nh; ++k) u(k) = uniform(rng, -1, 1);

    const PredictionMatrices pred = condense(f, g, nh, c);
    const Eigen::VectorXd z = pred.predict(x0, u);
    Eigen::Vector2d x = x0;
    Eigen::VectorXd iterated(2 * nh);
    for (int k = 0; k < nh; ++k) {
      x = f * x + g * u.segment<2>(2 * k) + c;
      iterated.segment<2>(2 * k) = x;
    }
    check.max_rollout_error = std::max(
        check.max_rollout_error, (z - iterated).lpNorm<Eigen::Infinity>());

    const Eigen::Vector2d q(uniform(rng, 0, 100), uniform(rng, 0, 100));
    Eigen::VectorXd z_ref(2 * nh);
    for (int k = 0; k < 2 * nh; ++k) z_ref(k) = uniform(rng, -1, 1);
    const QuadraticCost cost = build_cost(pred, x0, z_ref, q);
    double direct = 0.0;
    for (int k = 0; k < nh; ++k) {
      const Eigen::Vector2d e = iterated.segment<2>(2 * k) - z_ref.segment<2>(2 * k);
      direct += q(0) * e(0) * e(0) + q(1) * e(1) * e(1);
    }
    check.max_cost_rel_error =
        std::max(check.max_cost_rel_error,
                 std::abs(cost.evaluate(u) - direct) / (1.0 + std::abs(direct)));
  }
  return check;
}

}  // namespace wair::verification
