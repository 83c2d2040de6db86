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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fddp/contact/contact.hpp"
#include "fddp/manifold/spec.hpp"
#include "fddp/multibody/system.hpp"
#include "fddp/solver/solver.hpp"

namespace fddp {

struct CostSpec {
  std::string kind;  // state_regularization | control_regularization |
                     // frame_translation_tracking | com_tracking
  double weight = 1.0;
  VectorXd reference;  // state / control reference or tracking target
  VectorXd weights;    // optional per-residual weights
  std::string frame;   // frame_translation_tracking only
};

struct PhaseSpec {
  std::size_t start = 0;
  std::size_t end = 0;  // exclusive
  ContactSet contacts;
  std::vector<CostSpec> costs;
};

struct SwitchSpec {
  std::size_t node = 0;
  double restitution = 0.0;
  std::vector<CostSpec> costs;
};

struct Keyframe {
  std::size_t node = 0;
  VectorXd x;
};

struct WarmStartSpec {
  enum class Policy { kQuasiStaticInterpolation, kZeros, kFile };
  Policy policy = Policy::kZeros;
  std::vector<Keyframe> keyframes;
  std::filesystem::path path;  // resolved against the scenario directory
};

struct LqrSpec {
  MatrixXd A;
  MatrixXd B;
  VectorXd c;
};

struct Scenario {
  std::string name;
  std::string model_id;
  Params params;
  std::optional<LqrSpec> lqr;  // model_id == "lqr"
  std::optional<ManifoldSpec> state_manifold;
  std::size_t horizon = 0;
  std::vector<double> dt;  // one per node, expanded from a scalar
  VectorXd x0;
  std::vector<PhaseSpec> phases;
  std::vector<SwitchSpec> switches;
  std::vector<CostSpec> running_costs;
  std::vector<CostSpec> terminal_costs;
  WarmStartSpec warm_start;
  SolverOptions solver;
  std::uint64_t seed = 0;

  /// Sets a new horizon with a uniform step (first step kept). Only valid
  /// for scenarios without phases or switches.
  void resize_horizon(std::size_t n);
};

/// Parses and validates a scenario document. Throws ConfigError naming the
/// field (and the line for syntax errors).
[[nodiscard]] Scenario parse_scenario(std::string_view text,
                                      const std::filesystem::path& base_dir = {});

/// Reads a scenario file; relative warm-start paths resolve against its directory.
[[nodiscard]] Scenario load_scenario(const std::filesystem::path& path);

/// Structural checks that do not need the model catalogue: phases partition
/// [0, N), switches sit on phase boundaries, sizes and signs are sane.
void validate_scenario(const Scenario& s);

}  // namespace fddp
