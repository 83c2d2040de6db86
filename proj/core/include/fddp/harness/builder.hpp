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
#include <string>
#include <vector>

#include "fddp/action/problem.hpp"
#include "fddp/harness/scenario.hpp"

namespace fddp {

/// A scenario resolved against the model catalogue.
struct BuiltProblem {
  SystemPtr system;  // null for lqr
  std::shared_ptr<ShootingProblem> problem;
  /// Label per node (0..N). Nodes sharing a label share dynamics and costs.
  std::vector<std::string> node_labels;
};

/// Throws ConfigError on unknown model ids, frames or malformed costs.
[[nodiscard]] BuiltProblem build_problem(const Scenario& scenario);

struct WarmStart {
  Trajectory xs;
  Trajectory us;
};

/// Initial guess following the scenario's warm-start policy. Quasi-static
/// controls that cannot reach zero acceleration (e.g. in flight) fall back to
/// the best least-squares iterate.
[[nodiscard]] WarmStart make_warm_start(const Scenario& scenario, const BuiltProblem& built);

}  // namespace fddp
