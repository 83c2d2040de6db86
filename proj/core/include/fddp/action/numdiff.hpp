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

#include <string>
#include <vector>

#include "fddp/action/action.hpp"

namespace fddp {

/// Central finite differences of a node's transition and cost.
struct FiniteDifferences {
  MatrixXd Fx;
  MatrixXd Fu;
  VectorXd Lx;
  VectorXd Lu;
};

[[nodiscard]] FiniteDifferences finite_differences(const ActionModel& model,
                                                   const ConstVectorRef& x,
                                                   const ConstVectorRef& u, double step = 1e-6);

/// max |a - b| / max(1, max |b|); zero for empty blocks.
[[nodiscard]] double relative_error(const MatrixXd& analytic, const MatrixXd& reference);

struct BlockError {
  std::string block;  // Fx, Fu, Lx, Lu
  double error = 0.0;
};

struct DerivativeCheckOptions {
  double step = 1e-6;
  /// Test hook: perturbs the named analytic block before comparison.
  std::string corrupt_block;
};

/// Compares calc_diff against finite differences at (x, u).
[[nodiscard]] std::vector<BlockError> check_action_derivatives(
    const ActionModel& model, const ConstVectorRef& x, const ConstVectorRef& u,
    const DerivativeCheckOptions& options = {});

}  // namespace fddp
