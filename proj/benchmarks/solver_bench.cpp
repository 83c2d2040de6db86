/*
 Copyright 2026 The fddp Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

// Microbenchmarks of the per-iteration solver phases on bundled scenarios.

#include <filesystem>
#include <string>

#include <benchmark/benchmark.h>

#include "fddp/harness/builder.hpp"
#include "fddp/harness/scenario.hpp"
#include "fddp/solver/solver.hpp"

namespace fddp {
namespace {

struct Fixture {
  Scenario scenario;
  BuiltProblem built;
  WarmStart warm;
};

Fixture load(const std::string& name, std::size_t horizon = 0) {
  Fixture f;
  f.scenario = load_scenario(std::filesystem::path(FDDP_SCENARIO_DIR) / (name + ".json"));
  if (horizon > 0) f.scenario.resize_horizon(horizon);
  f.built = build_problem(f.scenario);
  f.warm = make_warm_start(f.scenario, f.built);
  return f;
}

void BM_LqrCalcDiff(benchmark::State& state) {
  const Fixture f = load("lqr_chain", static_cast<std::size_t>(state.range(0)));
  const ShootingProblem& p = *f.built.problem;
  ProblemData data(p);
  (void)problem_calc(p, data, f.warm.xs, f.warm.us);
  for (auto _ : state) {
    problem_calc_diff(p, data, f.warm.xs, f.warm.us);
    benchmark::ClobberMemory();
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LqrCalcDiff)->RangeMultiplier(2)->Range(25, 400)->Complexity(benchmark::oN);

void BM_LqrBackwardPass(benchmark::State& state) {
  const Fixture f = load("lqr_chain", static_cast<std::size_t>(state.range(0)));
  const ShootingProblem& p = *f.built.problem;
  ProblemData data(p);
  (void)problem_calc(p, data, f.warm.xs, f.warm.us);
  problem_calc_diff(p, data, f.warm.xs, f.warm.us);
  const Trajectory gaps = problem_gaps(p, data, f.warm.xs);
  SolverWorkspace ws(p);
  for (auto _ : state) {
    backward_pass(p, data, gaps, 1e-9, ws);
    benchmark::ClobberMemory();
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LqrBackwardPass)->RangeMultiplier(2)->Range(25, 400)->Complexity(benchmark::oN);

// One full solver iteration: derivatives, backward pass and line search.
void BM_SolveIteration(benchmark::State& state, const std::string& name) {
  const Fixture f = load(name);
  SolverOptions options = f.scenario.solver;
  options.max_iters = 1;
  options.threads = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto result = solve(*f.built.problem, f.warm.xs, f.warm.us, options);
    benchmark::DoNotOptimize(result.cost);
  }
}
BENCHMARK_CAPTURE(BM_SolveIteration, lqr_chain, std::string("lqr_chain"))->Arg(1);
BENCHMARK_CAPTURE(BM_SolveIteration, pendulum_swingup, std::string("pendulum_swingup"))->Arg(1);
BENCHMARK_CAPTURE(BM_SolveIteration, monoped_hop, std::string("monoped_hop"))->Arg(1)->Arg(2)->Arg(4);

void BM_MonopedCalcDiff(benchmark::State& state) {
  const Fixture f = load("monoped_hop");
  const ShootingProblem& p = *f.built.problem;
  ProblemData data(p);
  (void)problem_calc(p, data, f.warm.xs, f.warm.us);
  for (auto _ : state) {
    problem_calc_diff(p, data, f.warm.xs, f.warm.us);
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_MonopedCalcDiff);

}  // namespace
}  // namespace fddp

BENCHMARK_MAIN();
