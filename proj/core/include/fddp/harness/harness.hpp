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

#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fddp/action/numdiff.hpp"
#include "fddp/harness/builder.hpp"
#include "fddp/harness/scenario.hpp"

namespace fddp {

enum ExitCode : int {
  kExitConverged = 0,
  kExitFailedCheck = 1,
  kExitMaxIters = 2,
  kExitSolverFailure = 3,
  kExitIo = 4,
  kExitConfig = 5,
};

[[nodiscard]] int exit_code(Termination t);

struct RunOutcome {
  SolveResult result;
  int exit_code = kExitConverged;
};

/// Solves the scenario and writes trace.csv, solution.csv and summary.json to
/// out_dir (created if missing). Throws IoError when a file cannot be written.
RunOutcome run_scenario(const Scenario& scenario, const std::filesystem::path& out_dir);

/// Solves without writing anything.
[[nodiscard]] SolveResult solve_scenario(const Scenario& scenario);

struct NodeCheck {
  std::string label;
  std::size_t node = 0;
  std::vector<BlockError> worst;  // per block, max over samples
};

struct DerivativeReport {
  std::vector<NodeCheck> nodes;
  double threshold = 1e-4;

  [[nodiscard]] bool passed() const;
  /// "label/block" of the worst failing block, empty when passed.
  [[nodiscard]] std::string first_failure() const;
};

/// Random (x, u) samples per distinct node model compared against central
/// finite differences.
[[nodiscard]] DerivativeReport check_derivatives(const Scenario& scenario, int samples,
                                                 std::uint64_t seed,
                                                 const DerivativeCheckOptions& options = {});

void print_derivative_report(std::ostream& os, const DerivativeReport& report);

struct BenchRow {
  std::size_t threads = 1;
  int trials = 0;
  int iterations = 0;
  double median_iteration_seconds = 0.0;
  double p95_iteration_seconds = 0.0;
  double median_derivative_seconds = 0.0;
  double p95_derivative_seconds = 0.0;
  bool identical_solution = true;  // bit-identical to the first thread count
};

[[nodiscard]] std::vector<BenchRow> bench_scenario(const Scenario& scenario,
                                                   const std::vector<std::size_t>& threads,
                                                   int trials);

void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows);

}  // namespace fddp
