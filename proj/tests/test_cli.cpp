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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>

namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("wair_cli_" + std::string(::testing::UnitTest::GetInstance()
                                          ->current_test_info()
                                          ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  int wair(const std::string& args) {
    const std::string cmd = std::string(WAIR_CLI_PATH) + " " + args + " > " +
                            (dir_ / "stdout.txt").string() + " 2> " +
                            (dir_ / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }

  static long count_lines(const fs::path& p) {
    const std::string s = slurp(p);
    return std::count(s.begin(), s.end(), '\n');
  }

  fs::path dir_;
};

TEST_F(CliTest, DefaultRunWritesOneRowPerStep) {
  const fs::path cfg = write("empty.yaml", "");
  ASSERT_EQ(wair("run " + cfg.string() + " --output-dir " + (dir_ / "out").string()), 0);
  EXPECT_EQ(count_lines(dir_ / "out" / "default.csv"), 10001);
  EXPECT_TRUE(fs::exists(dir_ / "out" / "default.summary.txt"));
}

TEST_F(CliTest, DeterministicRunsAreByteIdentical) {
  const fs::path cfg = write("c.yaml", "duration: 1\n");
  const std::string a = (dir_ / "a").string(), b = (dir_ / "b").string();
  ASSERT_EQ(wair("run " + cfg.string() + " --deterministic --seed 7 --output-dir " + a), 0);
  ASSERT_EQ(wair("run " + cfg.string() + " --deterministic --seed 7 --output-dir " + b), 0);
  EXPECT_EQ(slurp(dir_ / "a" / "default.csv"), slurp(dir_ / "b" / "default.csv"));
  EXPECT_EQ(slurp(dir_ / "a" / "default.summary.txt"),
            slurp(dir_ / "b" / "default.summary.txt"));
}

TEST_F(CliTest, ConfigErrorsExitTwo) {
  EXPECT_EQ(wair("run " + write("s.yaml", "slope_deg: 95\n").string()), 2);
  EXPECT_NE(slurp(dir_ / "stderr.txt").find(":1:"), std::string::npos);
  const fs::path unknown = write("u.yaml", "duration: 0.1\nbogus: 1\n");
  EXPECT_EQ(wair("run " + unknown.string() + " --strict-config"), 2);
  EXPECT_EQ(wair("run " + unknown.string() + " --output-dir " + dir_.string()), 0);
  EXPECT_EQ(wair("run"), 2);
  EXPECT_EQ(wair("verify nonsense"), 2);
}

TEST_F(CliTest, InfeasibleRunExitsThreeWithPartialCsv) {
  const fs::path cfg = write("inf.yaml", "mpc:\n  u_max_y: 0\n");
  EXPECT_EQ(wair("run " + cfg.string() + " --output-dir " + dir_.string()), 3);
  EXPECT_TRUE(fs::exists(dir_ / "default.csv"));
  EXPECT_NE(slurp(dir_ / "default.summary.txt").find("infeasible"), std::string::npos);
}

TEST_F(CliTest, UnwritableOutputExitsFour) {
  const fs::path cfg = write("c.yaml", "duration: 0.1\n");
  const fs::path blocker = write("file", "x");
  EXPECT_EQ(wair("run " + cfg.string() + " --output-dir " + (blocker / "sub").string()), 4);
  EXPECT_EQ(wair("run " + (dir_ / "missing.yaml").string()), 4);
}

TEST_F(CliTest, SweepWritesEveryRun) {
  const fs::path cfg =
      write("sw.yaml", "scenario: s\nduration: 0.5\nsweep:\n  slope_deg: [0, 20, 40]\n");
  ASSERT_EQ(wair("sweep " + cfg.string() + " --parallel 2 --gnuplot --output-dir " +
                 dir_.string()),
            0);
  int csvs = 0;
  for (const auto& e : fs::directory_iterator(dir_)) csvs += e.path().extension() == ".csv";
  EXPECT_EQ(csvs, 3);
  int scripts = 0;
  for (const auto& e : fs::directory_iterator(dir_)) scripts += e.path().extension() == ".gp";
  EXPECT_EQ(scripts, 3);
}

TEST_F(CliTest, VerifySuitesPass) {
  for (const char* suite : {"rollout", "convergence", "invariants"}) {
    EXPECT_EQ(wair(std::string("verify ") + suite), 0) << suite;
  }
}

}  // namespace
