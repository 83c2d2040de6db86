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

// Command-line harness: solve a scenario, check model derivatives, or time
// solver iterations across worker counts.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fddp/errors.hpp"
#include "fddp/harness/csv.hpp"
#include "fddp/harness/harness.hpp"

namespace {

struct SolveArgs {
  std::string scenario;
  std::optional<std::string> solver;
  std::optional<int> max_iters;
  std::optional<double> tolerance;
  std::optional<std::size_t> threads;
  std::string out = "out";
};

struct CheckArgs {
  std::string scenario;
  int samples = 100;
  std::uint64_t seed = 0;
  std::string corrupt_block;
};

struct BenchArgs {
  std::string scenario;
  std::vector<std::size_t> threads{1};
  int trials = 5;
  std::optional<std::size_t> horizon;
  std::string out;
};

int run_solve(const SolveArgs& args) {
  fddp::Scenario s = fddp::load_scenario(args.scenario);
  if (args.solver) s.solver.type = fddp::solver_type_from_string(*args.solver);
  if (args.max_iters) s.solver.max_iters = *args.max_iters;
  if (args.tolerance) s.solver.tolerance = *args.tolerance;
  if (args.threads) s.solver.threads = *args.threads;
  fddp::validate_scenario(s);
  const fddp::RunOutcome outcome = fddp::run_scenario(s, args.out);
  const auto& report = outcome.result.report;
  std::cout << s.name << ": " << fddp::to_string(report.termination) << " after "
            << report.iteration_count() << " iterations, cost "
            << fddp::format_double(outcome.result.cost) << ", gap "
            << fddp::format_double(fddp::gap_norm(outcome.result.gaps)) << '\n';
  if (!report.failure_reason.empty()) std::cerr << "solver failure: " << report.failure_reason << '\n';
  return outcome.exit_code;
}

int run_check(const CheckArgs& args) {
  const fddp::Scenario s = fddp::load_scenario(args.scenario);
  fddp::DerivativeCheckOptions options;
  options.corrupt_block = args.corrupt_block;
  const auto report = fddp::check_derivatives(s, args.samples, args.seed, options);
  fddp::print_derivative_report(std::cout, report);
  return report.passed() ? fddp::kExitConverged : fddp::kExitFailedCheck;
}

int run_bench(const BenchArgs& args) {
  fddp::Scenario s = fddp::load_scenario(args.scenario);
  if (args.horizon) s.resize_horizon(*args.horizon);
  const auto rows = fddp::bench_scenario(s, args.threads, args.trials);
  if (args.out.empty()) {
    fddp::write_bench_csv(std::cout, rows);
  } else {
    std::ofstream out(args.out);
    if (!out) throw fddp::IoError("cannot write '" + args.out + "'");
    fddp::write_bench_csv(out, rows);
    if (!out.flush()) throw fddp::IoError("failed while writing '" + args.out + "'");
  }
  return fddp::kExitConverged;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Feasibility-driven DDP trajectory optimization harness"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* cmd_solve = app.add_subcommand("solve", "Solve a scenario and write trace, solution and summary");
  cmd_solve->add_option("--scenario", solve.scenario, "Scenario file")->required();
  cmd_solve->add_option("--solver", solve.solver, "Solver type")->check(CLI::IsMember({"ddp", "fddp"}));
  cmd_solve->add_option("--max-iters", solve.max_iters, "Iteration limit")->check(CLI::NonNegativeNumber);
  cmd_solve->add_option("--tol", solve.tolerance, "Convergence tolerance")->check(CLI::NonNegativeNumber);
  cmd_solve->add_option("--threads", solve.threads, "Derivative workers")->check(CLI::PositiveNumber);
  cmd_solve->add_option("--out", solve.out, "Output directory")->capture_default_str();

  CheckArgs check;
  auto* cmd_check = app.add_subcommand("check-derivatives", "Compare analytic derivatives with finite differences");
  cmd_check->add_option("--scenario", check.scenario, "Scenario file")->required();
  cmd_check->add_option("--samples", check.samples, "Samples per model")->check(CLI::PositiveNumber)->capture_default_str();
  cmd_check->add_option("--seed", check.seed, "Sampling seed")->capture_default_str();
  // Fault injection for testing the checker itself.
  cmd_check->add_option("--corrupt-block", check.corrupt_block)->group("");

  BenchArgs bench;
  auto* cmd_bench = app.add_subcommand("bench", "Time solver iterations over worker counts");
  cmd_bench->add_option("--scenario", bench.scenario, "Scenario file")->required();
  cmd_bench->add_option("--threads", bench.threads, "Comma-separated worker counts")->delimiter(',');
  cmd_bench->add_option("--trials", bench.trials, "Solves per worker count")->check(CLI::PositiveNumber)->capture_default_str();
  cmd_bench->add_option("--horizon", bench.horizon, "Override the horizon (phase-free scenarios)")->check(CLI::PositiveNumber);
  cmd_bench->add_option("--out", bench.out, "CSV file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : fddp::kExitConfig;
  }

  try {
    if (*cmd_solve) return run_solve(solve);
    if (*cmd_check) return run_check(check);
    return run_bench(bench);
  } catch (const fddp::ConfigError& e) {
    std::cerr << "config error";
    if (!e.field().empty()) std::cerr << " [" << e.field() << "]";
    std::cerr << ": " << e.what() << '\n';
    return fddp::kExitConfig;
  } catch (const fddp::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return fddp::kExitIo;
  } catch (const fddp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return fddp::kExitSolverFailure;
  }
}
