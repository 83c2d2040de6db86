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
#include <vector>

#include <Eigen/Core>

#include "fddp/manifold/spec.hpp"

namespace fddp {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using ConstVectorRef = Eigen::Ref<const Eigen::VectorXd>;

/// Jacobians of integrate(x, dx) w.r.t. right perturbations of x and dx.
struct IntegrateJacobians {
  MatrixXd wrt_point;
  MatrixXd wrt_tangent;
};

/// Jacobians of difference(x0, x1) w.r.t. right perturbations of x0 and x1.
struct DifferenceJacobians {
  MatrixXd wrt_first;
  MatrixXd wrt_second;
};

/// State manifold with its retraction (integrate) and local inverse
/// (difference).
///
/// Points are nx-vectors, tangents ndx-vectors. Every perturbation is composed
/// on the right: integrate(x, dx) = x * Exp(dx) and
/// difference(x0, x1) = Log(x0^-1 * x1). Rotation blocks are unit quaternions
/// stored as (x, y, z, w) and are renormalized after every integrate.
///
/// All operations are const and allocation-only; a manifold can be shared
/// between threads.
class Manifold {
 public:
  explicit Manifold(ManifoldSpec spec);
  virtual ~Manifold() = default;

  [[nodiscard]] const ManifoldSpec& spec() const { return spec_; }
  [[nodiscard]] Index nx() const { return nx_; }
  [[nodiscard]] Index ndx() const { return ndx_; }

  [[nodiscard]] VectorXd integrate(const ConstVectorRef& x, const ConstVectorRef& dx) const;
  [[nodiscard]] VectorXd difference(const ConstVectorRef& x0, const ConstVectorRef& x1) const;
  [[nodiscard]] IntegrateJacobians jintegrate(const ConstVectorRef& x,
                                              const ConstVectorRef& dx) const;
  [[nodiscard]] DifferenceJacobians jdifference(const ConstVectorRef& x0,
                                                const ConstVectorRef& x1) const;

  /// Identity element (zero vectors, identity rotations).
  [[nodiscard]] VectorXd neutral() const;

  /// Largest deviation of any rotation block from unit norm (0 without rotations).
  [[nodiscard]] double unit_norm_error(const ConstVectorRef& x) const;

  /// Throws DimensionError unless x has nx coordinates and unit rotation blocks
  /// (within tol).
  void check_point(const ConstVectorRef& x, double tol = 1e-9) const;

  // Unchecked kernels. Output buffers are pre-sized by the caller.
  virtual void integrate_into(const ConstVectorRef& x, const ConstVectorRef& dx,
                              Eigen::Ref<VectorXd> out) const = 0;
  virtual void difference_into(const ConstVectorRef& x0, const ConstVectorRef& x1,
                               Eigen::Ref<VectorXd> out) const = 0;
  virtual void jintegrate_into(const ConstVectorRef& x, const ConstVectorRef& dx,
                               Eigen::Ref<MatrixXd> jx, Eigen::Ref<MatrixXd> jdx) const = 0;
  virtual void jdifference_into(const ConstVectorRef& x0, const ConstVectorRef& x1,
                                Eigen::Ref<MatrixXd> j0, Eigen::Ref<MatrixXd> j1) const = 0;
  virtual void neutral_into(Eigen::Ref<VectorXd> out) const = 0;
  virtual double unit_norm_error_of(const ConstVectorRef& x) const = 0;

 private:
  void require_point(const ConstVectorRef& x, const char* what) const;
  void require_tangent(const ConstVectorRef& dx, const char* what) const;

  ManifoldSpec spec_;
  Index nx_;
  Index ndx_;
};

using ManifoldPtr = std::shared_ptr<const Manifold>;

/// R^n.
class VectorSpace final : public Manifold {
 public:
  explicit VectorSpace(Index n);

  void integrate_into(const ConstVectorRef& x, const ConstVectorRef& dx,
                      Eigen::Ref<VectorXd> out) const override;
  void difference_into(const ConstVectorRef& x0, const ConstVectorRef& x1,
                       Eigen::Ref<VectorXd> out) const override;
  void jintegrate_into(const ConstVectorRef& x, const ConstVectorRef& dx,
                       Eigen::Ref<MatrixXd> jx, Eigen::Ref<MatrixXd> jdx) const override;
  void jdifference_into(const ConstVectorRef& x0, const ConstVectorRef& x1,
                        Eigen::Ref<MatrixXd> j0, Eigen::Ref<MatrixXd> j1) const override;
  void neutral_into(Eigen::Ref<VectorXd> out) const override;
  double unit_norm_error_of(const ConstVectorRef& x) const override;
};

/// SO(3): unit quaternion points (x, y, z, w), rotation-vector tangents.
/// integrate returns the representative with w >= 0.
class Rotation3d final : public Manifold {
 public:
  Rotation3d();

  void integrate_into(const ConstVectorRef& x, const ConstVectorRef& dx,
                      Eigen::Ref<VectorXd> out) const override;
  void difference_into(const ConstVectorRef& x0, const ConstVectorRef& x1,
                       Eigen::Ref<VectorXd> out) const override;
  void jintegrate_into(const ConstVectorRef& x, const ConstVectorRef& dx,
                       Eigen::Ref<MatrixXd> jx, Eigen::Ref<MatrixXd> jdx) const override;
  void jdifference_into(const ConstVectorRef& x0, const ConstVectorRef& x1,
                        Eigen::Ref<MatrixXd> j0, Eigen::Ref<MatrixXd> j1) const override;
  void neutral_into(Eigen::Ref<VectorXd> out) const override;
  double unit_norm_error_of(const ConstVectorRef& x) const override;
};

/// Planar floating base R^2 x SO(2). Points (x, z, cos th, sin th), tangents
/// (dx, dz, dth). Translation and rotation are decoupled.
class FreeFlyerPlanar final : public Manifold {
 public:
  FreeFlyerPlanar();

  void integrate_into(const ConstVectorRef& x, const ConstVectorRef& dx,
                      Eigen::Ref<VectorXd> out) const override;
  void difference_into(const ConstVectorRef& x0, const ConstVectorRef& x1,
                       Eigen::Ref<VectorXd> out) const override;
  void jintegrate_into(const ConstVectorRef& x, const ConstVectorRef& dx,
                       Eigen::Ref<MatrixXd> jx, Eigen::Ref<MatrixXd> jdx) const override;
  void jdifference_into(const ConstVectorRef& x0, const ConstVectorRef& x1,
                        Eigen::Ref<MatrixXd> j0, Eigen::Ref<MatrixXd> j1) const override;
  void neutral_into(Eigen::Ref<VectorXd> out) const override;
  double unit_norm_error_of(const ConstVectorRef& x) const override;
};

/// Cartesian product; coordinates and tangents are concatenated in order.
class CompositeManifold final : public Manifold {
 public:
  explicit CompositeManifold(std::vector<ManifoldPtr> children);

  [[nodiscard]] const std::vector<ManifoldPtr>& children() const { return children_; }

  void integrate_into(const ConstVectorRef& x, const ConstVectorRef& dx,
                      Eigen::Ref<VectorXd> out) const override;
  void difference_into(const ConstVectorRef& x0, const ConstVectorRef& x1,
                       Eigen::Ref<VectorXd> out) const override;
  void jintegrate_into(const ConstVectorRef& x, const ConstVectorRef& dx,
                       Eigen::Ref<MatrixXd> jx, Eigen::Ref<MatrixXd> jdx) const override;
  void jdifference_into(const ConstVectorRef& x0, const ConstVectorRef& x1,
                        Eigen::Ref<MatrixXd> j0, Eigen::Ref<MatrixXd> j1) const override;
  void neutral_into(Eigen::Ref<VectorXd> out) const override;
  double unit_norm_error_of(const ConstVectorRef& x) const override;

 private:
  std::vector<ManifoldPtr> children_;
  std::vector<Index> x_offsets_;
  std::vector<Index> dx_offsets_;
};

[[nodiscard]] ManifoldPtr make_manifold(const ManifoldSpec& spec);

}  // namespace fddp
