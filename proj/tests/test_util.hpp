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

#include <functional>
#include <random>

#include <Eigen/Core>

#include "fddp/manifold/manifold.hpp"

namespace fddp::testing_util {

/// Uniform point: vector blocks in [-1, 1], rotations drawn through a random
/// tangent of norm below pi.
inline Eigen::VectorXd random_point(const Manifold& m, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd dx(m.ndx());
  for (Index i = 0; i < dx.size(); ++i) dx[i] = u(rng);
  dx *= 1.5;
  return m.integrate(m.neutral(), dx);
}

/// Random tangent whose every rotation block has norm below max_norm
/// (each coordinate bounded by max_norm / sqrt(3)).
inline Eigen::VectorXd random_tangent(const Manifold& m, std::mt19937& rng, double max_norm) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd dx(m.ndx());
  for (Index i = 0; i < dx.size(); ++i) dx[i] = u(rng) * max_norm / std::sqrt(3.0);
  return dx;
}

/// Central differences of f around the tangent origin.
inline Eigen::MatrixXd central_difference_jacobian(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f, Index n, double h) {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
  Eigen::MatrixXd jac;
  for (Index j = 0; j < n; ++j) {
    e[j] = h;
    const Eigen::VectorXd fp = f(e);
    e[j] = -h;
    const Eigen::VectorXd fm = f(e);
    e[j] = 0.0;
    if (j == 0) jac.resize(fp.size(), n);
    jac.col(j) = (fp - fm) / (2.0 * h);
  }
  return jac;
}

/// Symmetric positive definite matrix with eigenvalues bounded below by 0.5.
inline Eigen::MatrixXd random_spd(Index n, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd a(n, n);
  for (Index i = 0; i < a.size(); ++i) a.data()[i] = u(rng);
  return a * a.transpose() + 0.5 * Eigen::MatrixXd::Identity(n, n);
}

/// Uniform matrix in [-1, 1], which is full rank with probability one.
inline Eigen::MatrixXd random_matrix(Index rows, Index cols, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd a(rows, cols);
  for (Index i = 0; i < a.size(); ++i) a.data()[i] = u(rng);
  return a;
}

}  // namespace fddp::testing_util
