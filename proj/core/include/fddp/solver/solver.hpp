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

#include <functional>
#include <string>
#include <vector>

#include "fddp/action/problem.hpp"

namespace fddp {

/// Per-node backward-pass quantities. Node N only carries Vx, Vxx.
struct SolverWorkspace {
  explicit SolverWorkspace(const ShootingProblem& problem);

  std::vector<VectorXd> Qx;
  std::vector<VectorXd> Qu;
  std::vector<MatrixXd> Qxx;
  std::vector<MatrixXd> Qxu;
  std::vector<MatrixXd> Quu;  // unregularized
  std::vector<VectorXd> k;    // feed-forward
  std::vector<MatrixXd> K;    // feedback
  std::vector<VectorXd> Vx;
  std::vector<MatrixXd> Vxx;
  double mu = 0.0;
};

/// Riccati recursion around an iterate with gaps, using the value gradient
/// deflected across each gap (Vx + Vxx gap). Throws NotPositiveDefinite
/// naming the node when Quu + mu I has no Cholesky factor.
void backward_pass(const ShootingProblem& problem, const ProblemData& data, const Trajectory& gaps,
                   double mu, SolverWorkspace& ws);

/// Coefficients of the expected cost change dJ(a) = d1 a + d2 a^2 / 2.
struct ExpectedImprovement {
  double d1 = 0.0;
  double d2 = 0.0;

  [[nodiscard]] double at(double alpha) const { return d1 * alpha + 0.5 * d2 * alpha * alpha; }
};

/// Evaluates the expectation model from the last backward pass. The state
/// deviation paired with each gap is the one of the full-step linearized
/// rollout (d0 = gap0, d+ = Fx d + Fu (k + K d) + gap+), which makes the
/// model exact on linear-quadratic problems.
[[nodiscard]] ExpectedImprovement expected_improvement(const ShootingProblem& problem,
                                                       const ProblemData& data,
                                                       const Trajectory& gaps,
                                                       const SolverWorkspace& ws);

struct TrialPoint {
  Trajectory xs;
  Trajectory us;
  double cost = 0.0;
};

/// Classical rollout from x0: u = u + a k + K (xhat (-) x), xhat+ = f(xhat, u).
/// Evaluates every node into trial_data. Throws NumericalFailure with the node.
TrialPoint forward_pass_ddp(const ShootingProblem& problem, const Trajectory& xs,
                            const Trajectory& us, const SolverWorkspace& ws, double alpha,
                            ProblemData& trial_data);

/// Gap-contracting rollout: every gap is kept at (1 - a) times its value.
TrialPoint forward_pass_fddp(const ShootingProblem& problem, const Trajectory& xs,
                             const Trajectory& us, const Trajectory& gaps,
                             const SolverWorkspace& ws, double alpha, ProblemData& trial_data);

/// Two-sided acceptance: descent needs dl <= b1 dJ, expected ascent dl <= b2 dJ.
[[nodiscard]] bool goldstein_accept(double cost_new, double cost_old, double expected,
                                    double b1 = 0.1, double b2 = 2.0);

enum class SolverType { kDdp, kFddp };

[[nodiscard]] std::string to_string(SolverType type);
/// Throws ConfigError on anything but "ddp" / "fddp".
[[nodiscard]] SolverType solver_type_from_string(const std::string& name);

struct SolverOptions {
  SolverType type = SolverType::kFddp;
  int max_iters = 100;
  double tolerance = 1e-9;
  std::size_t threads = 1;
  double initial_regularization = 1e-9;
};

/// Regularization schedule and line-search constants.
inline constexpr double kMinRegularization = 1e-9;
inline constexpr double kMaxRegularization = 1e9;
inline constexpr double kRegularizationFactor = 10.0;
inline constexpr int kLineSearchSteps = 11;  // 1, 1/2, ..., 2^-10

/// One trace row. Row 0 describes the initial iterate.
struct IterationRecord {
  int iteration = 0;
  double cost = 0.0;
  double gap_l2 = 0.0;
  double step_length = 0.0;
  double regularization = 0.0;
  double expected_dj = 0.0;
  bool accepted = false;
  double derivative_seconds = 0.0;
  double total_seconds = 0.0;
};

enum class Termination { kConverged, kMaxIters, kFailure };

[[nodiscard]] std::string to_string(Termination t);

struct SolveReport {
  std::vector<IterationRecord> iterations;
  Termination termination = Termination::kMaxIters;
  std::string failure_reason;
  double wall_seconds = 0.0;

  /// Number of update attempts (rows after the initial one).
  [[nodiscard]] int iteration_count() const {
    return iterations.empty() ? 0 : static_cast<int>(iterations.size()) - 1;
  }
};

struct SolveResult {
  Trajectory xs;
  Trajectory us;
  Trajectory gaps;
  double cost = 0.0;
  SolveReport report;
};

/// Per-row hook: the row just recorded, the gaps before and after it.
struct IterationEvent {
  const IterationRecord& record;
  const Trajectory& previous_gaps;
  const Trajectory& gaps;
  const Trajectory& xs;
  const Trajectory& us;
};

using IterationCallback = std::function<void(const IterationEvent&)>;

/// Runs DDP or FDDP from the guess. DDP replaces the state guess by the
/// rollout of the control guess. Failures end the run with a report instead
/// of throwing, except for malformed guesses (DimensionError).
[[nodiscard]] SolveResult solve(const ShootingProblem& problem, Trajectory xs, Trajectory us,
                                const SolverOptions& options,
                                const IterationCallback& callback = {});

/// Newton direction of the multiple-shooting KKT system with Gauss-Newton
/// Hessians at the evaluated iterate (data after calc and calc_diff).
struct KktDirection {
  Trajectory dxs;
  Trajectory dus;
  Trajectory multipliers;  // one per dynamics constraint, initial state first
};

/// Dense assembly; requires N (ndx + nu) <= 2000. Throws SingularKkt.
[[nodiscard]] KktDirection kkt_search_direction(const ShootingProblem& problem,
                                                const ProblemData& data, const Trajectory& gaps);

/// Convenience overload evaluating the problem at (xs, us) first.
[[nodiscard]] KktDirection kkt_search_direction(const ShootingProblem& problem,
                                                const Trajectory& xs, const Trajectory& us);

}  // namespace fddp
