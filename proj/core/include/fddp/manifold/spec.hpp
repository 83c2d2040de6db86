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
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace fddp {

using Index = Eigen::Index;

/// Structural description of a state manifold.
///
/// A spec is a value: two manifolds built from equal specs are the same
/// space, which is how models and problems check they agree on the state.
struct ManifoldSpec {
  enum class Kind { kVector, kRotation3d, kFreeFlyerPlanar, kComposite };

  Kind kind = Kind::kVector;
  Index dim = 0;                        // vector(n) only
  std::vector<ManifoldSpec> children;   // composite only

  static ManifoldSpec vector(Index n);
  static ManifoldSpec rotation3d();
  static ManifoldSpec free_flyer_planar();
  static ManifoldSpec composite(std::vector<ManifoldSpec> children);

  [[nodiscard]] Index nx() const;
  [[nodiscard]] Index ndx() const;

  friend bool operator==(const ManifoldSpec&, const ManifoldSpec&) = default;
};

[[nodiscard]] std::string_view to_string(ManifoldSpec::Kind kind);

/// Human-readable form, e.g. "composite(free_flyer_planar, vector(2), vector(5))".
[[nodiscard]] std::string describe(const ManifoldSpec& spec);

/// JSON form: {"kind": "vector", "dim": 3} / {"kind": "composite", "children": [...]}.
[[nodiscard]] std::string to_json(const ManifoldSpec& spec);

/// Inverse of to_json. Throws ConfigError on malformed input.
[[nodiscard]] ManifoldSpec manifold_spec_from_json(std::string_view text);

}  // namespace fddp
