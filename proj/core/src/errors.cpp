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

#include "fddp/errors.hpp"

#include <utility>

namespace fddp {

namespace {

std::string with_node(const std::string& what, std::optional<std::size_t> node) {
  if (!node) return what;
  return what + " (node " + std::to_string(*node) + ")";
}

}  // namespace

NumericalFailure::NumericalFailure(const std::string& what, std::optional<std::size_t> node)
    : Error(with_node(what, node)), node_(node) {}

NotPositiveDefinite::NotPositiveDefinite(std::size_t node)
    : Error("Q_uu + mu*I is not positive definite at node " + std::to_string(node)),
      node_(node) {}

RankDeficiency::RankDeficiency(const std::string& what, double pivot)
    : Error(what), pivot_(pivot) {}

NonConvergence::NonConvergence(const std::string& what, double residual, Eigen::VectorXd best)
    : Error(what), residual_(residual), best_(std::move(best)) {}

ConfigError::ConfigError(const std::string& what, std::string field,
                         std::optional<std::size_t> line)
    : Error(what), field_(std::move(field)), line_(line) {}

}  // namespace fddp
