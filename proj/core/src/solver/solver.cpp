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

#include "fddp/solver/solver.hpp"

#include <chrono>
#include <cmath>
#include <memory>
#include <optional>
#include <utility>

#include "fddp/errors.hpp"

namespace fddp {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

std::string to_string(SolverType type) { return type == SolverType::kDdp ? "ddp" : "fddp"; }

SolverType solver_type_from_string(const std::string& name) {
  if (name == "ddp") return SolverType::kDdp;
  if (name == "fddp") return SolverType::kFddp;
  throw ConfigError("unknown solver '" + name + "' (expected ddp or fddp)", "solver.type");
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::kConverged: return "converged";
    case Termination::kMaxIters: return "max_iters";
    case Termination::kFailure: return "failure";
  }
  return "unknown";
}

SolveResult solve(const ShootingProblem& problem, Trajectory xs, Trajectory us,
                  const SolverOptions& options, const IterationCallback& callback) {
  const auto start = Clock::now();
  problem.check_trajectory(xs, us);
  if (options.max_iters < 0) throw DimensionError("max_iters must be non-negative");
  if (!(options.tolerance >= 0.0)) throw DimensionError("tolerance must be non-negative");

  SolveResult result;
  SolveReport& report = result.report;
  std::unique_ptr<WorkerPool> pool;
  if (options.threads > 1) pool = std::make_unique<WorkerPool>(options.threads);

  const bool ddp = options.type == SolverType::kDdp;
  auto data = std::make_unique<ProblemData>(problem);
  auto trial_data = std::make_unique<ProblemData>(problem);
  SolverWorkspace ws(problem);

  const auto finish = [&](Termination t, std::string reason = {}) {
    report.termination = t;
    report.failure_reason = std::move(reason);
    report.wall_seconds = seconds_since(start);
  };

  double cost = 0.0;
  Trajectory gaps;
  try {
    if (ddp) xs = problem_simulate(problem, us);
    cost = problem_calc(problem, *data, xs, us, pool.get());
    gaps = problem_gaps(problem, *data, xs);
  } catch (const Error& e) {
    result.xs = std::move(xs);
    result.us = std::move(us);
    finish(Termination::kFailure, e.what());
    return result;
  }

  double mu = std::max(options.initial_regularization, 0.0);
  IterationRecord row0;
  row0.cost = cost;
  row0.gap_l2 = gap_norm(gaps);
  row0.regularization = mu;
  report.iterations.push_back(row0);
  if (callback) callback({report.iterations.back(), gaps, gaps, xs, us});

  bool derivatives_current = false;
  std::optional<Termination> termination;
  std::string reason;
  if (options.max_iters == 0) termination = Termination::kMaxIters;
  for (int iter = 1; !termination; ++iter) {
    const auto iter_start = Clock::now();
    IterationRecord row;
    row.iteration = iter;
    try {
      if (!derivatives_current) {
        const auto t0 = Clock::now();
        problem_calc_diff(problem, *data, xs, us, pool.get());
        row.derivative_seconds = seconds_since(t0);
        derivatives_current = true;
      }
      // Backward pass, raising the regularization until Quu + mu I factorizes.
      while (true) {
        try {
          backward_pass(problem, *data, gaps, mu, ws);
          break;
        } catch (const NotPositiveDefinite& e) {
          mu = std::max(mu * kRegularizationFactor, kMinRegularization);
          if (mu > kMaxRegularization) {
            termination = Termination::kFailure;
            reason = std::string("regularization exceeded its cap: ") + e.what();
            break;
          }
        }
      }
      if (termination) break;

      const ExpectedImprovement expected = expected_improvement(problem, *data, gaps, ws);
      const double gap_l2 = gap_norm(gaps);
      if (std::abs(expected.d1) + gap_l2 < options.tolerance) {
        termination = Termination::kConverged;
        break;
      }
      if (iter > options.max_iters) {
        termination = Termination::kMaxIters;
        break;
      }

      row.regularization = mu;
      bool accepted = false;
      double alpha = 1.0;
      for (int s = 0; s < kLineSearchSteps; ++s, alpha *= 0.5) {
        TrialPoint trial;
        try {
          trial = ddp ? forward_pass_ddp(problem, xs, us, ws, alpha, *trial_data)
                      : forward_pass_fddp(problem, xs, us, gaps, ws, alpha, *trial_data);
        } catch (const NumericalFailure&) {
          continue;
        }
        const double dj = expected.at(alpha);
        row.step_length = alpha;
        row.expected_dj = dj;
        if (goldstein_accept(trial.cost, cost, dj)) {
          Trajectory new_gaps = problem_gaps(problem, *trial_data, trial.xs);
          Trajectory previous = std::move(gaps);
          xs = std::move(trial.xs);
          us = std::move(trial.us);
          gaps = std::move(new_gaps);
          cost = trial.cost;
          std::swap(data, trial_data);
          derivatives_current = false;
          accepted = true;
          row.accepted = true;
          row.cost = cost;
          row.gap_l2 = gap_norm(gaps);
          row.total_seconds = seconds_since(iter_start);
          report.iterations.push_back(row);
          if (callback) callback({report.iterations.back(), previous, gaps, xs, us});
          break;
        }
      }
      if (accepted) {
        mu = std::max(mu / kRegularizationFactor, kMinRegularization);
      } else {
        row.cost = cost;
        row.gap_l2 = gap_l2;
        row.total_seconds = seconds_since(iter_start);
        report.iterations.push_back(row);
        if (callback) callback({report.iterations.back(), gaps, gaps, xs, us});
        mu = std::max(mu * kRegularizationFactor, kMinRegularization);
        if (mu > kMaxRegularization) {
          termination = Termination::kFailure;
          reason = "line search failed with the regularization at its cap";
        }
      }
    } catch (const Error& e) {
      termination = Termination::kFailure;
      reason = e.what();
    }
  }

  result.xs = std::move(xs);
  result.us = std::move(us);
  result.gaps = std::move(gaps);
  result.cost = cost;
  finish(*termination, reason);
  return result;
}

}  // namespace fddp
