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

#include <Eigen/Core>
#include <Eigen/Geometry>

/// SO(3) primitives in axis-angle (rotation vector) coordinates.
namespace fddp::so3 {

[[nodiscard]] Eigen::Matrix3d skew(const Eigen::Vector3d& w);

[[nodiscard]] Eigen::Quaterniond exp(const Eigen::Vector3d& w);

/// Principal logarithm. At exactly pi the axis sign is fixed so that its
/// first nonzero coordinate is positive.
[[nodiscard]] Eigen::Vector3d log(const Eigen::Quaterniond& q);

/// Right Jacobian: exp(w + d) ~ exp(w) exp(Jr(w) d).
[[nodiscard]] Eigen::Matrix3d right_jacobian(const Eigen::Vector3d& w);

[[nodiscard]] Eigen::Matrix3d right_jacobian_inverse(const Eigen::Vector3d& w);

}  // namespace fddp::so3
