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
#include <vector>

#include <benchmark/benchmark.h>

#include "wair/mpc.hpp"
#include "wair/verify.hpp"

namespace {

std::vector<wair::QpProblem> problems(int n, int m) {
  std::mt19937_64 rng(42);
  std::vector<wair::QpProblem> out;
  for (int i = 0; i < 16; ++i) {
    out.push_back(wair::verification::random_strictly_convex_qp(rng, n, m));
  }
  return out;
}

void BM_OracleSerial(benchmark::State& state) {
  const auto qps = problems(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(wair::active_set_oracle_serial(qps[i++ % qps.size()]));
  }
}
BENCHMARK(BM_OracleSerial)->Args({8, 12})->Args({10, 16});

void BM_OracleParallel(benchmark::State& state) {
  const auto qps = problems(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(wair::active_set_oracle(qps[i++ % qps.size()]));
  }
}
BENCHMARK(BM_OracleParallel)->Args({8, 12})->Args({10, 16});

void BM_InteriorPoint(benchmark::State& state) {
  const auto qps = problems(8, 12);
  wair::QpSolver solver;
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solver.solve(qps[i++ % qps.size()]));
  }
}
BENCHMARK(BM_InteriorPoint);

void BM_MpcStep(benchmark::State& state) {
  wair::MpcConfig cfg;
  cfg.horizon = static_cast<int>(state.range(0));
  wair::MpcController controller(cfg, wair::VlipParams{});
  const wair::ReferenceTrajectory ref({{0.0, 0.0, 0.2}, {10.0, 2.0, 0.2}});
  for (auto _ : state) {
    benchmark::DoNotOptimize(controller.step({0.01, 0.22}, 0.0, ref, 0.0));
  }
}
BENCHMARK(BM_MpcStep)->Arg(5)->Arg(10)->Arg(20);

}  // namespace

BENCHMARK_MAIN();
