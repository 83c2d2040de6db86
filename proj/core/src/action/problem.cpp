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

#include "fddp/action/problem.hpp"

#include <cmath>
#include <string>

#include "fddp/errors.hpp"

namespace fddp {
namespace {

template <typename F>
void at_node(std::size_t k, F&& f) {
  try {
    f();
  } catch (const NumericalFailure& e) {
    if (e.node()) throw;
    throw NumericalFailure(e.what(), k);
  }
}

void for_each_node(std::size_t n, WorkerPool* pool, const std::function<void(std::size_t)>& body) {
  if (pool != nullptr && pool->size() > 1) {
    pool->parallel_for(n, body);
  } else {
    for (std::size_t k = 0; k < n; ++k) body(k);
  }
}

}  // namespace

ShootingProblem::ShootingProblem(VectorXd x0, std::vector<ActionModelPtr> running,
                                 ActionModelPtr terminal)
    : running_(std::move(running)), terminal_(std::move(terminal)) {
  if (running_.empty()) throw DimensionError("shooting problem needs at least one running node");
  if (!terminal_) throw DimensionError("shooting problem needs a terminal model");
  if (terminal_->nu() != 0) throw DimensionError("terminal model must have nu = 0");
  for (std::size_t k = 0; k < running_.size(); ++k) {
    if (!running_[k]) throw DimensionError("running model " + std::to_string(k) + " is null");
    if (running_[k]->state()->spec() != terminal_->state()->spec()) {
      throw DimensionError("running model " + std::to_string(k) +
                           " lives on a different state manifold");
    }
  }
  set_x0(std::move(x0));
}

void ShootingProblem::set_x0(VectorXd x0) {
  state()->check_point(x0);
  x0_ = std::move(x0);
}

const ActionModel& ShootingProblem::node(std::size_t k) const {
  return k == running_.size() ? *terminal_ : *running_.at(k);
}

void ShootingProblem::check_trajectory(const Trajectory& xs, const Trajectory& us) const {
  const std::size_t n = horizon();
  if (xs.size() != n + 1) {
    throw DimensionError("state trajectory must have " + std::to_string(n + 1) + " entries, got " +
                         std::to_string(xs.size()));
  }
  if (us.size() != n) {
    throw DimensionError("control trajectory must have " + std::to_string(n) + " entries, got " +
                         std::to_string(us.size()));
  }
  for (std::size_t k = 0; k <= n; ++k) {
    if (xs[k].size() != state()->nx()) {
      throw DimensionError("state " + std::to_string(k) + " has the wrong size");
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (us[k].size() != running_[k]->nu()) {
      throw DimensionError("control " + std::to_string(k) + " must have " +
                           std::to_string(running_[k]->nu()) + " entries");
    }
  }
}

ProblemData::ProblemData(const ShootingProblem& problem) {
  nodes_.reserve(problem.horizon() + 1);
  for (std::size_t k = 0; k <= problem.horizon(); ++k) {
    nodes_.push_back(problem.node(k).create_data());
  }
}

double problem_calc(const ShootingProblem& problem, ProblemData& data, const Trajectory& xs,
                    const Trajectory& us, WorkerPool* pool) {
  problem.check_trajectory(xs, us);
  const std::size_t n = problem.horizon();
  const VectorXd empty;
  for_each_node(n + 1, pool, [&](std::size_t k) {
    at_node(k, [&] { problem.node(k).calc(data.node(k), xs[k], k < n ? us[k] : empty); });
  });
  double cost = 0.0;
  for (std::size_t k = 0; k <= n; ++k) cost += data.node(k).cost;
  return cost;
}

void problem_calc_diff(const ShootingProblem& problem, ProblemData& data, const Trajectory& xs,
                       const Trajectory& us, WorkerPool* pool) {
  const std::size_t n = problem.horizon();
  const VectorXd empty;
  for_each_node(n + 1, pool, [&](std::size_t k) {
    at_node(k, [&] { problem.node(k).calc_diff(data.node(k), xs[k], k < n ? us[k] : empty); });
  });
}

Trajectory problem_gaps(const ShootingProblem& problem, const ProblemData& data,
                        const Trajectory& xs) {
  const auto& m = *problem.state();
  Trajectory gaps(problem.horizon() + 1);
  gaps[0] = m.difference(xs[0], problem.x0());
  for (std::size_t k = 0; k < problem.horizon(); ++k) {
    gaps[k + 1] = m.difference(xs[k + 1], data.node(k).xnext);
  }
  return gaps;
}

RolloutEvaluation problem_rollout(const ShootingProblem& problem, const Trajectory& xs,
                                  const Trajectory& us) {
  ProblemData data(problem);
  RolloutEvaluation out;
  out.cost = problem_calc(problem, data, xs, us);
  out.gaps = problem_gaps(problem, data, xs);
  return out;
}

Trajectory problem_simulate(const ShootingProblem& problem, const Trajectory& us) {
  const std::size_t n = problem.horizon();
  if (us.size() != n) throw DimensionError("control trajectory has the wrong length");
  Trajectory xs(n + 1);
  xs[0] = problem.x0();
  for (std::size_t k = 0; k < n; ++k) {
    auto d = problem.running(k).create_data();
    at_node(k, [&] { problem.running(k).calc(*d, xs[k], us[k]); });
    xs[k + 1] = d->xnext;
  }
  return xs;
}

double gap_norm(const Trajectory& gaps) {
  double s = 0.0;
  for (const auto& g : gaps) s += g.squaredNorm();
  return std::sqrt(s);
}

}  // namespace fddp
