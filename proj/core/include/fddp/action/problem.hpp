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

#include <memory>
#include <vector>

#include "fddp/action/action.hpp"
#include "fddp/parallel.hpp"

namespace fddp {

using Trajectory = std::vector<VectorXd>;

/// Initial-state constraint x0, N running nodes and a terminal cost node.
class ShootingProblem {
 public:
  ShootingProblem(VectorXd x0, std::vector<ActionModelPtr> running, ActionModelPtr terminal);

  [[nodiscard]] const VectorXd& x0() const { return x0_; }
  void set_x0(VectorXd x0);
  [[nodiscard]] std::size_t horizon() const { return running_.size(); }
  [[nodiscard]] const ActionModel& running(std::size_t k) const { return *running_.at(k); }
  [[nodiscard]] const std::vector<ActionModelPtr>& running_models() const { return running_; }
  [[nodiscard]] const ActionModel& terminal() const { return *terminal_; }
  /// Node k of 0..N, the terminal model at N.
  [[nodiscard]] const ActionModel& node(std::size_t k) const;
  [[nodiscard]] const ManifoldPtr& state() const { return terminal_->state(); }

  /// Throws DimensionError unless X has N+1 states and U has one control per
  /// running node, all of the right size.
  void check_trajectory(const Trajectory& xs, const Trajectory& us) const;

 private:
  VectorXd x0_;
  std::vector<ActionModelPtr> running_;
  ActionModelPtr terminal_;
};

/// One data object per node.
class ProblemData {
 public:
  explicit ProblemData(const ShootingProblem& problem);

  [[nodiscard]] ActionData& node(std::size_t k) { return *nodes_[k]; }
  [[nodiscard]] const ActionData& node(std::size_t k) const { return *nodes_[k]; }
  [[nodiscard]] std::size_t size() const { return nodes_.size(); }

 private:
  std::vector<std::unique_ptr<ActionData>> nodes_;
};

/// Runs calc on every node and returns the total cost. Node failures are
/// rethrown as NumericalFailure carrying the node index.
double problem_calc(const ShootingProblem& problem, ProblemData& data, const Trajectory& xs,
                    const Trajectory& us, WorkerPool* pool = nullptr);

/// Runs calc_diff on every node; expects problem_calc first.
void problem_calc_diff(const ShootingProblem& problem, ProblemData& data, const Trajectory& xs,
                       const Trajectory& us, WorkerPool* pool = nullptr);

/// gaps[0] = x0 (-) X[0], gaps[k+1] = f(X[k], U[k]) (-) X[k+1], from evaluated data.
[[nodiscard]] Trajectory problem_gaps(const ShootingProblem& problem, const ProblemData& data,
                                      const Trajectory& xs);

struct RolloutEvaluation {
  double cost = 0.0;
  Trajectory gaps;
};

/// Cost and gaps of a (possibly infeasible) guess.
[[nodiscard]] RolloutEvaluation problem_rollout(const ShootingProblem& problem,
                                                const Trajectory& xs, const Trajectory& us);

/// Feasible states obtained by applying U from x0.
[[nodiscard]] Trajectory problem_simulate(const ShootingProblem& problem, const Trajectory& us);

/// L2 norm of all gap coordinates stacked.
[[nodiscard]] double gap_norm(const Trajectory& gaps);

}  // namespace fddp
