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

#include "fddp/harness/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fddp/errors.hpp"
#include "fddp/harness/csv.hpp"

namespace fddp {
namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  return out;
}

void close_output(std::ofstream& out, const std::filesystem::path& path) {
  out.close();
  if (!out) throw IoError("failed while writing '" + path.string() + "'");
}

// Nearest-rank percentile of an unsorted sample; q in (0, 1].
double percentile(std::vector<double> values, double q) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(values.size())));
  return values[std::clamp<std::size_t>(rank, 1, values.size()) - 1];
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::string serialize(const SolveResult& r) {
  std::ostringstream os;
  write_trace_csv(os, r.report.iterations);
  write_solution_csv(os, r.xs, r.us);
  return os.str();
}

}  // namespace

int exit_code(Termination t) {
  switch (t) {
    case Termination::kConverged:
      return kExitConverged;
    case Termination::kMaxIters:
      return kExitMaxIters;
    case Termination::kFailure:
      return kExitSolverFailure;
  }
  return kExitSolverFailure;
}

SolveResult solve_scenario(const Scenario& scenario) {
  const BuiltProblem built = build_problem(scenario);
  WarmStart warm = make_warm_start(scenario, built);
  return solve(*built.problem, std::move(warm.xs), std::move(warm.us), scenario.solver);
}

RunOutcome run_scenario(const Scenario& scenario, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create '" + out_dir.string() + "': " + ec.message());
  // Open every output before solving so an unwritable directory fails fast.
  const auto trace_path = out_dir / "trace.csv";
  const auto solution_path = out_dir / "solution.csv";
  const auto summary_path = out_dir / "summary.json";
  std::ofstream trace = open_output(trace_path);
  std::ofstream solution = open_output(solution_path);
  std::ofstream summary = open_output(summary_path);

  RunOutcome out;
  out.result = solve_scenario(scenario);
  out.exit_code = exit_code(out.result.report.termination);

  write_trace_csv(trace, out.result.report.iterations);
  close_output(trace, trace_path);
  write_solution_csv(solution, out.result.xs, out.result.us);
  close_output(solution, solution_path);

  const SolveReport& report = out.result.report;
  nlohmann::ordered_json j;
  j["scenario"] = scenario.name;
  j["solver"] = to_string(scenario.solver.type);
  j["termination"] = to_string(report.termination);
  if (!report.failure_reason.empty()) j["failure_reason"] = report.failure_reason;
  j["iterations"] = report.iteration_count();
  j["cost"] = out.result.cost;
  j["gap_l2"] = out.result.gaps.empty() ? 0.0 : gap_norm(out.result.gaps);
  j["wall_seconds"] = report.wall_seconds;
  j["threads"] = scenario.solver.threads;
  summary << j.dump(2) << '\n';
  close_output(summary, summary_path);
  return out;
}

bool DerivativeReport::passed() const { return first_failure().empty(); }

std::string DerivativeReport::first_failure() const {
  for (const auto& n : nodes) {
    for (const auto& b : n.worst) {
      if (!(b.error <= threshold)) {
        std::ostringstream os;
        os << "node " << n.node << " (" << n.label << "): block " << b.block << " error "
           << b.error << " exceeds " << threshold;
        return os.str();
      }
    }
  }
  return {};
}

DerivativeReport check_derivatives(const Scenario& scenario, int samples, std::uint64_t seed,
                                   const DerivativeCheckOptions& options) {
  if (samples < 1) throw ConfigError("samples must be at least 1", "samples");
  const BuiltProblem built = build_problem(scenario);
  const WarmStart warm = make_warm_start(scenario, built);
  const ShootingProblem& problem = *built.problem;
  const auto& m = *problem.state();

  // Nodes sharing a label are the same model; check each distinct model once,
  // spreading its samples over the nodes that use it.
  std::map<std::string, std::vector<std::size_t>> groups;
  std::vector<std::string> order;
  for (std::size_t k = 0; k <= problem.horizon(); ++k) {
    auto& g = groups[built.node_labels[k]];
    if (g.empty()) order.push_back(built.node_labels[k]);
    g.push_back(k);
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  constexpr double kStateSpread = 0.1;
  constexpr double kControlSpread = 0.1;

  DerivativeReport report;
  for (const auto& label : order) {
    const auto& nodes = groups[label];
    NodeCheck check{label, nodes.front(), {}};
    double worst_total = -1.0;
    for (int s = 0; s < samples; ++s) {
      const std::size_t k = nodes[static_cast<std::size_t>(s) % nodes.size()];
      const ActionModel& model = problem.node(k);
      VectorXd dx(m.ndx());
      for (Index i = 0; i < dx.size(); ++i) dx[i] = kStateSpread * normal(rng);
      const VectorXd x = m.integrate(warm.xs[k], dx);
      VectorXd u = k < problem.horizon() ? warm.us[k] : VectorXd();
      for (Index i = 0; i < u.size(); ++i) {
        u[i] += kControlSpread * std::max(1.0, std::abs(u[i])) * normal(rng);
      }
      const auto errors = check_action_derivatives(model, x, u, options);
      if (check.worst.empty()) {
        check.worst = errors;
      } else {
        for (std::size_t b = 0; b < errors.size(); ++b) {
          check.worst[b].error = std::max(check.worst[b].error, errors[b].error);
        }
      }
      double total = 0.0;
      for (const auto& e : errors) total = std::max(total, e.error);
      if (total > worst_total) {
        worst_total = total;
        check.node = k;
      }
    }
    report.nodes.push_back(std::move(check));
  }
  return report;
}

void print_derivative_report(std::ostream& os, const DerivativeReport& report) {
  os << std::left << std::setw(24) << "model" << std::setw(7) << "node";
  if (!report.nodes.empty()) {
    for (const auto& b : report.nodes.front().worst) os << std::setw(13) << b.block;
  }
  os << '\n';
  for (const auto& n : report.nodes) {
    os << std::setw(24) << n.label << std::setw(7) << n.node;
    for (const auto& b : n.worst) {
      std::ostringstream cell;
      cell << std::scientific << std::setprecision(3) << b.error;
      os << std::setw(13) << cell.str();
    }
    os << '\n';
  }
  os << (report.passed() ? "PASS" : "FAIL: " + report.first_failure()) << '\n';
}

std::vector<BenchRow> bench_scenario(const Scenario& scenario,
                                     const std::vector<std::size_t>& threads, int trials) {
  if (trials < 1) throw ConfigError("trials must be at least 1", "trials");
  if (threads.empty()) throw ConfigError("at least one thread count is required", "threads");
  const BuiltProblem built = build_problem(scenario);
  const WarmStart warm = make_warm_start(scenario, built);

  std::vector<BenchRow> rows;
  std::string reference;
  for (std::size_t t : threads) {
    if (t == 0) throw ConfigError("thread counts must be positive", "threads");
    SolverOptions options = scenario.solver;
    options.threads = t;
    BenchRow row;
    row.threads = t;
    row.trials = trials;
    std::vector<double> iteration_times;
    std::vector<double> derivative_times;
    for (int trial = 0; trial < trials; ++trial) {
      const SolveResult r = solve(*built.problem, warm.xs, warm.us, options);
      row.iterations = r.report.iteration_count();
      for (std::size_t i = 1; i < r.report.iterations.size(); ++i) {
        iteration_times.push_back(r.report.iterations[i].total_seconds);
        derivative_times.push_back(r.report.iterations[i].derivative_seconds);
      }
      const std::string text = serialize(r);
      if (reference.empty()) reference = text;
      row.identical_solution = row.identical_solution && text == reference;
    }
    row.median_iteration_seconds = median(iteration_times);
    row.p95_iteration_seconds = percentile(iteration_times, 0.95);
    row.median_derivative_seconds = median(derivative_times);
    row.p95_derivative_seconds = percentile(derivative_times, 0.95);
    rows.push_back(row);
  }
  return rows;
}

void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << "threads,trials,iterations,median_iteration_s,p95_iteration_s,median_derivative_s,"
        "p95_derivative_s,identical_solution\n";
  for (const auto& r : rows) {
    os << r.threads << ',' << r.trials << ',' << r.iterations << ','
       << format_double(r.median_iteration_seconds) << ','
       << format_double(r.p95_iteration_seconds) << ','
       << format_double(r.median_derivative_seconds) << ','
       << format_double(r.p95_derivative_seconds) << ',' << (r.identical_solution ? 1 : 0)
       << '\n';
  }
}

}  // namespace fddp
