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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "fddp/errors.hpp"
#include "fddp/harness/builder.hpp"
#include "fddp/harness/csv.hpp"
#include "fddp/harness/harness.hpp"
#include "fddp/harness/scenario.hpp"

namespace fddp {
namespace {

namespace fs = std::filesystem;

fs::path fixture(const std::string& name) {
  return fs::path(FDDP_SCENARIO_DIR) / (name + ".json");
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& name)
      : path_(fs::temp_directory_path() / ("fddp_harness_test_" + name)) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// A small point-mass scenario with a phase list that callers can vary.
std::string hopper_text(const std::string& phases) {
  return R"({
  "name": "hopper",
  "model": {"id": "point_mass_hopper", "params": {}},
  "horizon": 10,
  "dt": 0.05,
  "x0": [0.0, 1.0, 0.0, 0.0],
  "phases": )" +
         phases + R"(,
  "costs": {"running": [{"kind": "control_regularization", "weight": 0.1}],
            "terminal": [{"kind": "state_regularization", "weight": 1.0}]}
})";
}

template <typename F>
ConfigError config_error(F&& f) {
  try {
    f();
  } catch (const ConfigError& e) {
    return e;
  }
  ADD_FAILURE() << "expected a ConfigError";
  return ConfigError("none", "");
}

TEST(Scenario, LoadsPendulumFixture) {
  const Scenario s = load_scenario(fixture("pendulum_swingup"));
  EXPECT_EQ(s.name, "pendulum_swingup");
  EXPECT_EQ(s.model_id, "pendulum");
  EXPECT_EQ(s.horizon, 200u);
  ASSERT_EQ(s.dt.size(), 200u);
  for (double h : s.dt) EXPECT_EQ(h, 0.01);
  EXPECT_EQ(s.warm_start.policy, WarmStartSpec::Policy::kQuasiStaticInterpolation);
}

TEST(Scenario, EveryFixtureLoadsAndBuilds) {
  for (const auto& entry : fs::directory_iterator(FDDP_SCENARIO_DIR)) {
    if (entry.path().extension() != ".json") continue;
    SCOPED_TRACE(entry.path().string());
    const Scenario s = load_scenario(entry.path());
    const BuiltProblem built = build_problem(s);
    EXPECT_EQ(built.problem->horizon(), s.horizon);
    EXPECT_EQ(built.node_labels.size(), s.horizon + 1);
    const WarmStart warm = make_warm_start(s, built);
    EXPECT_NO_THROW(built.problem->check_trajectory(warm.xs, warm.us));
  }
}

TEST(Scenario, AcceptsPartitioningPhases) {
  const Scenario s = parse_scenario(hopper_text(
      R"([{"start": 0, "end": 4, "contacts": [{"frame": "foot", "reference": [0, 0]}]},
          {"start": 4, "end": 10}])"));
  ASSERT_EQ(s.phases.size(), 2u);
  EXPECT_EQ(s.phases[0].contacts.size(), 1u);
  EXPECT_TRUE(s.phases[1].contacts.empty());
}

TEST(Scenario, OverlappingPhasesNameTheOverlap) {
  const auto e = config_error([] {
    (void)parse_scenario(hopper_text(R"([{"start": 0, "end": 6}, {"start": 4, "end": 10}])"));
  });
  EXPECT_EQ(e.field(), "phases");
  EXPECT_NE(std::string(e.what()).find("overlap: [0, 6) and [4, 10)"), std::string::npos)
      << e.what();
}

TEST(Scenario, PhasesMustCoverTheHorizon) {
  const auto e = config_error(
      [] { (void)parse_scenario(hopper_text(R"([{"start": 0, "end": 4}, {"start": 5, "end": 10}])")); });
  EXPECT_EQ(e.field(), "phases");
}

TEST(Scenario, MissingModelIdIsNamed) {
  const auto e = config_error([] {
    (void)parse_scenario(R"({"name": "x", "model": {}, "horizon": 1, "dt": 0.1, "x0": [0]})");
  });
  EXPECT_EQ(e.field(), "model.id");
}

TEST(Scenario, UnknownModelIdIsNamed) {
  const auto e = config_error([] {
    (void)parse_scenario(
        R"({"name": "x", "model": {"id": "unicycle"}, "horizon": 1, "dt": 0.1, "x0": [0]})");
  });
  EXPECT_EQ(e.field(), "model.id");
  EXPECT_NE(std::string(e.what()).find("unicycle"), std::string::npos);
}

TEST(Scenario, SyntaxErrorReportsTheLine) {
  const auto e = config_error([] { (void)parse_scenario("{\n  \"name\": \"x\",\n  \"horizon\": ,\n}"); });
  ASSERT_TRUE(e.line().has_value());
  EXPECT_EQ(*e.line(), 3u);
}

TEST(Scenario, WrongTypeNamesTheField) {
  const auto e = config_error([] {
    (void)parse_scenario(
        R"({"name": "x", "model": {"id": "pendulum"}, "horizon": "ten", "dt": 0.1, "x0": [0, 0]})");
  });
  EXPECT_EQ(e.field(), "horizon");
}

TEST(Scenario, MissingFileIsAnIoError) {
  EXPECT_THROW((void)load_scenario(fixture("does_not_exist")), IoError);
}

TEST(Scenario, ResizeHorizonKeepsTheStep) {
  Scenario s = load_scenario(fixture("lqr_chain"));
  s.resize_horizon(50);
  EXPECT_EQ(s.horizon, 50u);
  ASSERT_EQ(s.dt.size(), 50u);
  EXPECT_EQ(s.dt.back(), 0.1);
  EXPECT_EQ(build_problem(s).problem->horizon(), 50u);

  Scenario hop = load_scenario(fixture("monoped_hop"));
  EXPECT_THROW(hop.resize_horizon(20), ConfigError);
}

TEST(Csv, FormatDoubleRoundTrips) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(format_double(-2.5e-300), "-2.5e-300");
  const double third = 1.0 / 3.0;
  EXPECT_EQ(std::stod(format_double(third)), third);
}

TEST(Csv, TraceRoundTrips) {
  std::vector<IterationRecord> rows(2);
  rows[0] = {0, 4.0, 2.0, 0.0, 1e-9, 0.0, false, 0.0, 0.0};
  rows[1] = {1, 1.0, 0.5, 0.5, 1e-10, -3.25, true, 0.1, 0.2};
  std::stringstream s;
  write_trace_csv(s, rows);
  const std::string text = s.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), kTraceHeader);
  EXPECT_NE(text.find("\n1,1,0.5,0.5,1e-10,-3.25,1,0.25,0.25\n"), std::string::npos) << text;

  const auto back = read_trace_csv(s);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].iteration, 1);
  EXPECT_EQ(back[1].cost, 1.0);
  EXPECT_EQ(back[1].expected_dj, -3.25);
  EXPECT_TRUE(back[1].accepted);
  EXPECT_FALSE(back[0].accepted);
}

TEST(Csv, NormalizedColumnsAreEmptyForAZeroBase) {
  std::vector<IterationRecord> rows(1);
  rows[0].cost = 2.0;
  std::stringstream s;
  write_trace_csv(s, rows);
  EXPECT_NE(s.str().find("\n0,2,0,0,0,0,0,1,\n"), std::string::npos) << s.str();
}

TEST(Csv, SolutionRoundTrips) {
  const Trajectory xs = {Eigen::Vector2d(1.0, 2.0), Eigen::Vector2d(0.1, -0.2)};
  const Trajectory us = {Eigen::VectorXd::Constant(1, 3.5)};
  std::stringstream s;
  write_solution_csv(s, xs, us);
  EXPECT_EQ(s.str(), "node,x0,x1,u0\n0,1,2,3.5\n1,0.1,-0.2,\n");
  Trajectory xs2, us2;
  read_solution_csv(s, 2, xs2, us2);
  ASSERT_EQ(xs2.size(), 2u);
  ASSERT_EQ(us2.size(), 1u);
  EXPECT_EQ(xs2[1], xs[1]);
  EXPECT_EQ(us2[0], us[0]);
}

TEST(Run, WritesTraceSolutionAndSummary) {
  TempDir dir("run");
  const Scenario s = load_scenario(fixture("lqr_chain"));
  const RunOutcome out = run_scenario(s, dir.path() / "nested");
  EXPECT_EQ(out.exit_code, kExitConverged);
  std::ifstream trace(dir.path() / "nested" / "trace.csv");
  const auto rows = read_trace_csv(trace);
  ASSERT_EQ(rows.size(), out.result.report.iterations.size());
  for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(rows[i].iteration, static_cast<int>(i));
  const std::string solution = read_file(dir.path() / "nested" / "solution.csv");
  EXPECT_EQ(solution.substr(0, solution.find('\n')), "node,x0,x1,x2,x3,u0,u1");
  const std::string summary = read_file(dir.path() / "nested" / "summary.json");
  EXPECT_NE(summary.find("\"termination\": \"converged\""), std::string::npos) << summary;
  EXPECT_NE(summary.find("\"wall_seconds\""), std::string::npos);
}

TEST(Run, PendulumCostIsMonotoneOnceFeasible) {
  TempDir dir("pendulum");
  const Scenario s = load_scenario(fixture("pendulum_swingup"));
  EXPECT_EQ(run_scenario(s, dir.path()).exit_code, kExitConverged);
  std::ifstream trace(dir.path() / "trace.csv");
  const auto rows = read_trace_csv(trace);
  bool feasible = false;
  double last = 0.0;
  for (const auto& r : rows) {
    if (!r.accepted && r.iteration > 0) continue;
    if (feasible) EXPECT_LE(r.cost, last) << "row " << r.iteration;
    feasible = feasible || r.gap_l2 == 0.0;
    last = r.cost;
  }
  EXPECT_TRUE(feasible);
}

TEST(Run, ZeroIterationsStopsAtMaxIters) {
  TempDir dir("zero");
  Scenario s = load_scenario(fixture("pendulum_swingup"));
  s.solver.max_iters = 0;
  EXPECT_EQ(run_scenario(s, dir.path()).exit_code, kExitMaxIters);
  std::ifstream trace(dir.path() / "trace.csv");
  EXPECT_EQ(read_trace_csv(trace).size(), 1u);
}

TEST(Run, UnwritableDirectoryIsAnIoError) {
  TempDir dir("blocked");
  const fs::path file = dir.path() / "file";
  std::ofstream(file) << "x";
  const Scenario s = load_scenario(fixture("lqr_chain"));
  EXPECT_THROW((void)run_scenario(s, file / "out"), IoError);
}

TEST(Run, WarmStartFromFileReproducesTheSolution) {
  TempDir dir("warm");
  Scenario s = load_scenario(fixture("pendulum_swingup"));
  const RunOutcome first = run_scenario(s, dir.path() / "first");
  s.warm_start.policy = WarmStartSpec::Policy::kFile;
  s.warm_start.path = dir.path() / "first" / "solution.csv";
  const BuiltProblem built = build_problem(s);
  const WarmStart warm = make_warm_start(s, built);
  ASSERT_EQ(warm.xs.size(), first.result.xs.size());
  for (std::size_t k = 0; k < warm.xs.size(); ++k) EXPECT_EQ(warm.xs[k], first.result.xs[k]);
  for (std::size_t k = 0; k < warm.us.size(); ++k) EXPECT_EQ(warm.us[k], first.result.us[k]);
  const SolveResult again = solve_scenario(s);
  EXPECT_EQ(again.report.termination, Termination::kConverged);
  EXPECT_LE(again.report.iteration_count(), 1);
}

TEST(CheckDerivatives, LqrIsExactToRoundoff) {
  const auto report = check_derivatives(load_scenario(fixture("lqr_chain")), 100, 0);
  EXPECT_TRUE(report.passed());
  for (const auto& n : report.nodes) {
    for (const auto& b : n.worst) EXPECT_LE(b.error, 1e-9) << n.label << " " << b.block;
  }
}

TEST(CheckDerivatives, PendulumPassesWithSeed42) {
  const auto report = check_derivatives(load_scenario(fixture("pendulum_swingup")), 100, 42);
  EXPECT_TRUE(report.passed()) << report.first_failure();
  EXPECT_TRUE(report.first_failure().empty());
}

TEST(CheckDerivatives, MonopedCoversEveryNodeKind) {
  const auto report = check_derivatives(load_scenario(fixture("monoped_hop")), 20, 0);
  EXPECT_TRUE(report.passed()) << report.first_failure();
  bool impulse = false, terminal = false;
  for (const auto& n : report.nodes) {
    impulse = impulse || n.label.rfind("switch", 0) == 0;
    terminal = terminal || n.label == "terminal";
  }
  EXPECT_TRUE(impulse);
  EXPECT_TRUE(terminal);
}

TEST(CheckDerivatives, CorruptedBlockIsNamed) {
  DerivativeCheckOptions options;
  options.corrupt_block = "Fu";
  const auto report = check_derivatives(load_scenario(fixture("pendulum_swingup")), 5, 0, options);
  EXPECT_FALSE(report.passed());
  EXPECT_NE(report.first_failure().find("block Fu"), std::string::npos) << report.first_failure();
  std::stringstream s;
  print_derivative_report(s, report);
  EXPECT_NE(s.str().find("FAIL"), std::string::npos);
}

TEST(Bench, SingleThreadSingleTrialGivesOneRow) {
  const auto rows = bench_scenario(load_scenario(fixture("lqr_chain")), {1}, 1);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].threads, 1u);
  EXPECT_EQ(rows[0].trials, 1);
  EXPECT_GT(rows[0].median_iteration_seconds, 0.0);
  EXPECT_LE(rows[0].median_derivative_seconds, rows[0].median_iteration_seconds);
  std::stringstream s;
  write_bench_csv(s, rows);
  const std::string text = s.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
}

TEST(Bench, ThreadCountsGiveIdenticalSolutions) {
  const auto rows = bench_scenario(load_scenario(fixture("monoped_hop")), {1, 2, 4}, 1);
  ASSERT_EQ(rows.size(), 3u);
  for (const auto& r : rows) EXPECT_TRUE(r.identical_solution) << r.threads << " threads";
}

TEST(Bench, RejectsZeroTrials) {
  EXPECT_ANY_THROW((void)bench_scenario(load_scenario(fixture("lqr_chain")), {1}, 0));
}

}  // namespace
}  // namespace fddp
