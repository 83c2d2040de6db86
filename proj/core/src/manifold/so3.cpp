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

#include "fddp/manifold/so3.hpp"

#include <cmath>

namespace fddp::so3 {
namespace {

constexpr double kSmallAngle = 1e-6;
constexpr double kPiTieTolerance = 1e-14;

}  // namespace

Eigen::Matrix3d skew(const Eigen::Vector3d& w) {
  Eigen::Matrix3d s;
  s << 0.0, -w.z(), w.y(),
       w.z(), 0.0, -w.x(),
       -w.y(), w.x(), 0.0;
  return s;
}

Eigen::Quaterniond exp(const Eigen::Vector3d& w) {
  const double theta = w.norm();
  const double half = 0.5 * theta;
  // sin(theta/2)/theta, with its Taylor expansion near zero.
  const double k = theta < kSmallAngle ? 0.5 - theta * theta / 48.0 : std::sin(half) / theta;
  Eigen::Quaterniond q;
  q.w() = std::cos(half);
  q.vec() = k * w;
  return q;
}

Eigen::Vector3d log(const Eigen::Quaterniond& q_in) {
  Eigen::Quaterniond q = q_in.normalized();
  if (q.w() < 0.0) q.coeffs() = -q.coeffs();
  const double n = q.vec().norm();
  if (n < kSmallAngle) {
    // 2 atan(n / w) / n expanded around n = 0.
    const double w = q.w();
    return (2.0 / w - 2.0 * n * n / (3.0 * w * w * w)) * q.vec();
  }
  const double theta = 2.0 * std::atan2(n, q.w());
  Eigen::Vector3d axis = q.vec() / n;
  if (std::abs(q.w()) <= kPiTieTolerance) {
    for (int i = 0; i < 3; ++i) {
      if (axis[i] != 0.0) {
        if (axis[i] < 0.0) axis = -axis;
        break;
      }
    }
  }
  return theta * axis;
}

Eigen::Matrix3d right_jacobian(const Eigen::Vector3d& w) {
  const double theta = w.norm();
  const Eigen::Matrix3d s = skew(w);
  if (theta < kSmallAngle) {
    return Eigen::Matrix3d::Identity() - 0.5 * s + s * s / 6.0;
  }
  const double t2 = theta * theta;
  return Eigen::Matrix3d::Identity() - (1.0 - std::cos(theta)) / t2 * s +
         (theta - std::sin(theta)) / (t2 * theta) * s * s;
}

Eigen::Matrix3d right_jacobian_inverse(const Eigen::Vector3d& w) {
  const double theta = w.norm();
  const Eigen::Matrix3d s = skew(w);
  if (theta < kSmallAngle) {
    return Eigen::Matrix3d::Identity() + 0.5 * s + s * s / 12.0;
  }
  // (1 + cos) / sin written as cot(theta/2) stays finite at theta = pi.
  const double cot_half = std::cos(0.5 * theta) / std::sin(0.5 * theta);
  const double c = 1.0 / (theta * theta) - cot_half / (2.0 * theta);
  return Eigen::Matrix3d::Identity() + 0.5 * s + c * s * s;
}

}  // namespace fddp::so3
