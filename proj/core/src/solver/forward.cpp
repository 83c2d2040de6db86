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

#include <cmath>

#include "fddp/errors.hpp"
#include "fddp/solver/solver.hpp"

namespace fddp {
namespace {

void calc_node(const ShootingProblem& problem, ProblemData& data, std::size_t k,
               const VectorXd& x, const VectorXd& u) {
  try {
    problem.node(k).calc(data.node(k), x, u);
  } catch (const NumericalFailure& e) {
    if (e.node()) throw;
    throw NumericalFailure(e.what(), k);
  }
}

/// x (+) (-(1 - a) gap), skipped when it is the identity.
VectorXd retract_gap(const Manifold& m, const VectorXd& x, const VectorXd& gap, double alpha) {
  if (alpha == 1.0 || gap.squaredNorm() == 0.0) return x;
  return m.integrate(x, (alpha - 1.0) * gap);
}

TrialPoint rollout(const ShootingProblem& problem, const Trajectory& xs, const Trajectory& us,
                   const Trajectory* gaps, const SolverWorkspace& ws, double alpha,
                   ProblemData& trial_data) {
  const auto& m = *problem.state();
  const std::size_t n = problem.horizon();
  TrialPoint t;
  t.xs.resize(n + 1);
  t.us.resize(n);
  t.xs[0] = gaps ? retract_gap(m, problem.x0(), (*gaps)[0], alpha) : problem.x0();
  for (std::size_t k = 0; k < n; ++k) {
    t.us[k] = us[k];
    if (t.us[k].size() > 0) {
      t.us[k] += alpha * ws.k[k] + ws.K[k] * m.difference(xs[k], t.xs[k]);
    }
    calc_node(problem, trial_data, k, t.xs[k], t.us[k]);
    t.cost += trial_data.node(k).cost;
    const VectorXd& xnext = trial_data.node(k).xnext;
    t.xs[k + 1] = gaps ? retract_gap(m, xnext, (*gaps)[k + 1], alpha) : xnext;
  }
  calc_node(problem, trial_data, n, t.xs[n], VectorXd());
  t.cost += trial_data.node(n).cost;
  if (!std::isfinite(t.cost)) throw NumericalFailure("trial cost is not finite");
  return t;
}

}  // namespace

TrialPoint forward_pass_ddp(const ShootingProblem& problem, const Trajectory& xs,
                            const Trajectory& us, const SolverWorkspace& ws, double alpha,
                            ProblemData& trial_data) {
  return rollout(problem, xs, us, nullptr, ws, alpha, trial_data);
}

TrialPoint forward_pass_fddp(const ShootingProblem& problem, const Trajectory& xs,
                             const Trajectory& us, const Trajectory& gaps,
                             const SolverWorkspace& ws, double alpha, ProblemData& trial_data) {
  return rollout(problem, xs, us, &gaps, ws, alpha, trial_data);
}

bool goldstein_accept(double cost_new, double cost_old, double expected, double b1, double b2) {
  const double change = cost_new - cost_old;
  if (expected <= 0.0) return change <= b1 * expected;
  return change <= b2 * expected;
}

}  // namespace fddp
