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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace fddp {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rejected input: sizes that do not match the owning manifold or model.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Non-finite output from a model. Carries the shooting node when known.
class NumericalFailure : public Error {
 public:
  explicit NumericalFailure(const std::string& what,
                            std::optional<std::size_t> node = std::nullopt);

  [[nodiscard]] std::optional<std::size_t> node() const { return node_; }

 private:
  std::optional<std::size_t> node_;
};

/// Q_uu + mu*I failed to factorize during a backward pass.
class NotPositiveDefinite : public Error {
 public:
  explicit NotPositiveDefinite(std::size_t node);

  [[nodiscard]] std::size_t node() const { return node_; }

 private:
  std::size_t node_;
};

/// Cholesky factorization of a matrix expected to be SPD failed.
class FactorizationError : public Error {
 public:
  using Error::Error;
};

/// Contact Jacobian is (numerically) rank deficient.
class RankDeficiency : public Error {
 public:
  RankDeficiency(const std::string& what, double pivot);

  [[nodiscard]] double pivot() const { return pivot_; }

 private:
  double pivot_;
};

/// Iterative procedure stopped above its residual tolerance.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, double residual, Eigen::VectorXd best);

  [[nodiscard]] double residual() const { return residual_; }
  [[nodiscard]] const Eigen::VectorXd& best() const { return best_; }

 private:
  double residual_;
  Eigen::VectorXd best_;
};

/// Dense multiple-shooting KKT matrix is singular.
class SingularKkt : public Error {
 public:
  using Error::Error;
};

/// Operation not provided by this model.
class UnsupportedOperation : public Error {
 public:
  using Error::Error;
};

/// File could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Scenario parse / validation / resolution failure.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, std::string field,
              std::optional<std::size_t> line = std::nullopt);

  [[nodiscard]] const std::string& field() const { return field_; }
  [[nodiscard]] std::optional<std::size_t> line() const { return line_; }

 private:
  std::string field_;
  std::optional<std::size_t> line_;
};

}  // namespace fddp
