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
#include <numbers>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "wair/experiment.hpp"

namespace wair {
namespace {

TEST(ParseConfig, EmptyDocumentGivesDefaults) {
  const ExperimentSpec spec = parse_config("");
  EXPECT_NEAR(spec.sim.slope_alpha, 40.0 * std::numbers::pi / 180.0, 1e-15);
  EXPECT_EQ(spec.sim.mpc.mu_s, 0.5);
  EXPECT_EQ(spec.sim.mpc.horizon, 5);
  EXPECT_EQ(spec.sim.mpc.dt, 0.01);
  EXPECT_TRUE(spec.sweep.empty());
}

TEST(ParseConfig, ReadsNestedKeys) {
  const ExperimentSpec spec = parse_config(
      "scenario: steep\nslope_deg: 20\nmpc:\n  horizon: 8\n  friction_mode: two_sided\n");
  EXPECT_EQ(spec.scenario, "steep");
  EXPECT_NEAR(spec.sim.slope_alpha, 20.0 * std::numbers::pi / 180.0, 1e-15);
  EXPECT_EQ(spec.sim.mpc.horizon, 8);
  EXPECT_EQ(spec.sim.mpc.friction_mode, FrictionMode::kTwoSided);
}

TEST(ParseConfig, RejectsVerticalSlopeWithLine) {
  try {
    parse_config("duration: 2\nslope_deg: 95\n");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.field(), "slope_deg");
  }
}

TEST(ParseConfig, UnknownKeys) {
  EXPECT_THROW(parse_config("bogus: 1\n", true), ConfigError);
  std::vector<std::string> warnings;
  EXPECT_NO_THROW(parse_config("bogus: 1\n", false, &warnings));
  EXPECT_EQ(warnings.size(), 1u);
}

TEST(ParseConfig, RejectsMalformedValues) {
  EXPECT_THROW(parse_config("duration: fast\n"), ConfigError);
  EXPECT_THROW(parse_config("mpc: 3\n"), ConfigError);
  EXPECT_THROW(parse_config("sweep:\n  scenario: [a, b]\n"), ConfigError);
  EXPECT_THROW(parse_config("[1, 2"), ConfigError);
}

TEST(MaterializeRuns, SweepProducesCartesianProduct) {
  const ExperimentSpec one = parse_config("sweep:\n  slope_deg: [0, 20, 40]\n");
  const auto runs = materialize_runs(one);
  ASSERT_EQ(runs.size(), 3u);
  EXPECT_EQ(runs[0].config.slope_alpha, 0.0);
  EXPECT_NE(runs[0].name, runs[1].name);
  const ExperimentSpec two = parse_config(
      "sweep:\n  slope_deg: [0, 20, 40]\n  mpc.lambda_min_n: [5, 10]\n");
  EXPECT_EQ(materialize_runs(two).size(), 6u);
  EXPECT_EQ(materialize_runs(ExperimentSpec{}).size(), 1u);
}

TEST(WriteCsv, HeaderAndRowCount) {
  SimConfig cfg;
  cfg.duration = 0.05;
  const SimLog log = run(cfg);
  std::ostringstream out;
  write_csv(out, log);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, kCsvHeader);
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 14);
  }
  EXPECT_EQ(rows, 50);
}

TEST(WriteCsv, NumbersRoundTrip) {
  SimConfig cfg;
  cfg.duration = 0.01;
  const SimLog log = run(cfg);
  std::ostringstream out;
  write_csv(out, log);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  std::getline(in, line);
  const double x = std::stod(line.substr(line.find(',') + 1));
  EXPECT_EQ(x, log.records[1].state.x_com);
}

TEST(Summarize, ReportsConeSlackAndIterations) {
  SimConfig cfg;
  cfg.duration = 0.5;
  const SimLog log = run(cfg);
  const RunSummary s = summarize("x", log, cfg);
  EXPECT_EQ(s.rows, 500u);
  EXPECT_EQ(s.solves, 50u);
  EXPECT_EQ(s.max_cone_violation, 0.0);
  EXPECT_GT(s.iterations_mean, 0.0);
  EXPECT_GE(s.solve_time_p99_us, s.solve_time_p50_us);
}

}  // namespace
}  // namespace wair
