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

#include "fddp/manifold/manifold.hpp"

#include <cmath>
#include <string>

#include <Eigen/Geometry>

#include "fddp/errors.hpp"
#include "fddp/manifold/so3.hpp"

namespace fddp {
namespace {

Eigen::Quaterniond quat(const ConstVectorRef& x, Index offset = 0) {
  Eigen::Quaterniond q;
  q.coeffs() = x.segment<4>(offset);
  return q;
}

std::string size_message(const char* what, Index expected, Index got) {
  return std::string(what) + ": expected " + std::to_string(expected) + " entries, got " +
         std::to_string(got);
}

}  // namespace

Manifold::Manifold(ManifoldSpec spec)
    : spec_(std::move(spec)), nx_(spec_.nx()), ndx_(spec_.ndx()) {}

void Manifold::require_point(const ConstVectorRef& x, const char* what) const {
  if (x.size() != nx_) throw DimensionError(size_message(what, nx_, x.size()));
}

void Manifold::require_tangent(const ConstVectorRef& dx, const char* what) const {
  if (dx.size() != ndx_) throw DimensionError(size_message(what, ndx_, dx.size()));
}

VectorXd Manifold::integrate(const ConstVectorRef& x, const ConstVectorRef& dx) const {
  require_point(x, "integrate point");
  require_tangent(dx, "integrate tangent");
  VectorXd out(nx_);
  integrate_into(x, dx, out);
  return out;
}

VectorXd Manifold::difference(const ConstVectorRef& x0, const ConstVectorRef& x1) const {
  require_point(x0, "difference first point");
  require_point(x1, "difference second point");
  VectorXd out(ndx_);
  difference_into(x0, x1, out);
  return out;
}

IntegrateJacobians Manifold::jintegrate(const ConstVectorRef& x, const ConstVectorRef& dx) const {
  require_point(x, "jintegrate point");
  require_tangent(dx, "jintegrate tangent");
  IntegrateJacobians j{MatrixXd::Zero(ndx_, ndx_), MatrixXd::Zero(ndx_, ndx_)};
  jintegrate_into(x, dx, j.wrt_point, j.wrt_tangent);
  return j;
}

DifferenceJacobians Manifold::jdifference(const ConstVectorRef& x0,
                                          const ConstVectorRef& x1) const {
  require_point(x0, "jdifference first point");
  require_point(x1, "jdifference second point");
  DifferenceJacobians j{MatrixXd::Zero(ndx_, ndx_), MatrixXd::Zero(ndx_, ndx_)};
  jdifference_into(x0, x1, j.wrt_first, j.wrt_second);
  return j;
}

VectorXd Manifold::neutral() const {
  VectorXd out(nx_);
  neutral_into(out);
  return out;
}

double Manifold::unit_norm_error(const ConstVectorRef& x) const {
  require_point(x, "point");
  return unit_norm_error_of(x);
}

void Manifold::check_point(const ConstVectorRef& x, double tol) const {
  require_point(x, "point");
  if (!x.allFinite()) throw DimensionError("point has non-finite coordinates");
  const double err = unit_norm_error_of(x);
  if (err > tol) {
    throw DimensionError("point has a rotation block off the unit circle/sphere by " +
                         std::to_string(err));
  }
}

// ---------------------------------------------------------------------------

VectorSpace::VectorSpace(Index n) : Manifold(ManifoldSpec::vector(n)) {}

void VectorSpace::integrate_into(const ConstVectorRef& x, const ConstVectorRef& dx,
                                 Eigen::Ref<VectorXd> out) const {
  out = x + dx;
}

void VectorSpace::difference_into(const ConstVectorRef& x0, const ConstVectorRef& x1,
                                  Eigen::Ref<VectorXd> out) const {
  out = x1 - x0;
}

void VectorSpace::jintegrate_into(const ConstVectorRef&, const ConstVectorRef&,
                                  Eigen::Ref<MatrixXd> jx, Eigen::Ref<MatrixXd> jdx) const {
  jx.setIdentity();
  jdx.setIdentity();
}

void VectorSpace::jdifference_into(const ConstVectorRef&, const ConstVectorRef&,
                                   Eigen::Ref<MatrixXd> j0, Eigen::Ref<MatrixXd> j1) const {
  j0 = -MatrixXd::Identity(ndx(), ndx());
  j1.setIdentity();
}

void VectorSpace::neutral_into(Eigen::Ref<VectorXd> out) const { out.setZero(); }

double VectorSpace::unit_norm_error_of(const ConstVectorRef&) const { return 0.0; }

// ---------------------------------------------------------------------------

Rotation3d::Rotation3d() : Manifold(ManifoldSpec::rotation3d()) {}

void Rotation3d::integrate_into(const ConstVectorRef& x, const ConstVectorRef& dx,
                                Eigen::Ref<VectorXd> out) const {
  Eigen::Quaterniond q = quat(x) * so3::exp(dx.head<3>());
  q.normalize();
  if (q.w() < 0.0) q.coeffs() = -q.coeffs();
  out = q.coeffs();
}

void Rotation3d::difference_into(const ConstVectorRef& x0, const ConstVectorRef& x1,
                                 Eigen::Ref<VectorXd> out) const {
  out = so3::log(quat(x0).conjugate() * quat(x1));
}

void Rotation3d::jintegrate_into(const ConstVectorRef&, const ConstVectorRef& dx,
                                 Eigen::Ref<MatrixXd> jx, Eigen::Ref<MatrixXd> jdx) const {
  const Eigen::Vector3d w = dx.head<3>();
  jx = so3::exp(w).toRotationMatrix().transpose();
  jdx = so3::right_jacobian(w);
}

void Rotation3d::jdifference_into(const ConstVectorRef& x0, const ConstVectorRef& x1,
                                  Eigen::Ref<MatrixXd> j0, Eigen::Ref<MatrixXd> j1) const {
  const Eigen::Vector3d d = so3::log(quat(x0).conjugate() * quat(x1));
  const Eigen::Matrix3d jr_inv = so3::right_jacobian_inverse(d);
  j1 = jr_inv;
  j0 = -jr_inv * so3::exp(d).toRotationMatrix().transpose();
}

void Rotation3d::neutral_into(Eigen::Ref<VectorXd> out) const {
  out = Eigen::Quaterniond::Identity().coeffs();
}

double Rotation3d::unit_norm_error_of(const ConstVectorRef& x) const {
  return std::abs(x.norm() - 1.0);
}

// ---------------------------------------------------------------------------

FreeFlyerPlanar::FreeFlyerPlanar() : Manifold(ManifoldSpec::free_flyer_planar()) {}

void FreeFlyerPlanar::integrate_into(const ConstVectorRef& x, const ConstVectorRef& dx,
                                     Eigen::Ref<VectorXd> out) const {
  const double c = std::cos(dx[2]);
  const double s = std::sin(dx[2]);
  Eigen::Vector2d r(x[2] * c - x[3] * s, x[3] * c + x[2] * s);
  r.normalize();
  out.head<2>() = x.head<2>() + dx.head<2>();
  out.tail<2>() = r;
}

void FreeFlyerPlanar::difference_into(const ConstVectorRef& x0, const ConstVectorRef& x1,
                                      Eigen::Ref<VectorXd> out) const {
  out.head<2>() = x1.head<2>() - x0.head<2>();
  double th = std::atan2(x0[2] * x1[3] - x0[3] * x1[2], x0[2] * x1[2] + x0[3] * x1[3]);
  if (th == -M_PI) th = M_PI;
  out[2] = th;
}

void FreeFlyerPlanar::jintegrate_into(const ConstVectorRef&, const ConstVectorRef&,
                                      Eigen::Ref<MatrixXd> jx, Eigen::Ref<MatrixXd> jdx) const {
  jx.setIdentity();
  jdx.setIdentity();
}

void FreeFlyerPlanar::jdifference_into(const ConstVectorRef&, const ConstVectorRef&,
                                       Eigen::Ref<MatrixXd> j0, Eigen::Ref<MatrixXd> j1) const {
  j0 = -Eigen::Matrix3d::Identity();
  j1.setIdentity();
}

void FreeFlyerPlanar::neutral_into(Eigen::Ref<VectorXd> out) const { out << 0.0, 0.0, 1.0, 0.0; }

double FreeFlyerPlanar::unit_norm_error_of(const ConstVectorRef& x) const {
  return std::abs(x.tail<2>().norm() - 1.0);
}

// ---------------------------------------------------------------------------

namespace {

ManifoldSpec composite_spec(const std::vector<ManifoldPtr>& children) {
  std::vector<ManifoldSpec> specs;
  specs.reserve(children.size());
  for (const auto& c : children) {
    if (!c) throw DimensionError("composite manifold child is null");
    specs.push_back(c->spec());
  }
  return ManifoldSpec::composite(std::move(specs));
}

}  // namespace

CompositeManifold::CompositeManifold(std::vector<ManifoldPtr> children)
    : Manifold(composite_spec(children)), children_(std::move(children)) {
  Index xo = 0;
  Index dxo = 0;
  for (const auto& c : children_) {
    x_offsets_.push_back(xo);
    dx_offsets_.push_back(dxo);
    xo += c->nx();
    dxo += c->ndx();
  }
}

void CompositeManifold::integrate_into(const ConstVectorRef& x, const ConstVectorRef& dx,
                                       Eigen::Ref<VectorXd> out) const {
  for (std::size_t i = 0; i < children_.size(); ++i) {
    const auto& c = *children_[i];
    c.integrate_into(x.segment(x_offsets_[i], c.nx()), dx.segment(dx_offsets_[i], c.ndx()),
                     out.segment(x_offsets_[i], c.nx()));
  }
}

void CompositeManifold::difference_into(const ConstVectorRef& x0, const ConstVectorRef& x1,
                                        Eigen::Ref<VectorXd> out) const {
  for (std::size_t i = 0; i < children_.size(); ++i) {
    const auto& c = *children_[i];
    c.difference_into(x0.segment(x_offsets_[i], c.nx()), x1.segment(x_offsets_[i], c.nx()),
                      out.segment(dx_offsets_[i], c.ndx()));
  }
}

void CompositeManifold::jintegrate_into(const ConstVectorRef& x, const ConstVectorRef& dx,
                                        Eigen::Ref<MatrixXd> jx, Eigen::Ref<MatrixXd> jdx) const {
  jx.setZero();
  jdx.setZero();
  for (std::size_t i = 0; i < children_.size(); ++i) {
    const auto& c = *children_[i];
    const Index o = dx_offsets_[i];
    const Index n = c.ndx();
    c.jintegrate_into(x.segment(x_offsets_[i], c.nx()), dx.segment(o, n), jx.block(o, o, n, n),
                      jdx.block(o, o, n, n));
  }
}

void CompositeManifold::jdifference_into(const ConstVectorRef& x0, const ConstVectorRef& x1,
                                         Eigen::Ref<MatrixXd> j0, Eigen::Ref<MatrixXd> j1) const {
  j0.setZero();
  j1.setZero();
  for (std::size_t i = 0; i < children_.size(); ++i) {
    const auto& c = *children_[i];
    const Index o = dx_offsets_[i];
    const Index n = c.ndx();
    c.jdifference_into(x0.segment(x_offsets_[i], c.nx()), x1.segment(x_offsets_[i], c.nx()),
                       j0.block(o, o, n, n), j1.block(o, o, n, n));
  }
}

void CompositeManifold::neutral_into(Eigen::Ref<VectorXd> out) const {
  for (std::size_t i = 0; i < children_.size(); ++i) {
    children_[i]->neutral_into(out.segment(x_offsets_[i], children_[i]->nx()));
  }
}

double CompositeManifold::unit_norm_error_of(const ConstVectorRef& x) const {
  double err = 0.0;
  for (std::size_t i = 0; i < children_.size(); ++i) {
    err = std::max(err,
                   children_[i]->unit_norm_error_of(x.segment(x_offsets_[i], children_[i]->nx())));
  }
  return err;
}

ManifoldPtr make_manifold(const ManifoldSpec& spec) {
  switch (spec.kind) {
    case ManifoldSpec::Kind::kVector:
      if (spec.dim < 0) throw DimensionError("vector manifold with negative dimension");
      return std::make_shared<VectorSpace>(spec.dim);
    case ManifoldSpec::Kind::kRotation3d: return std::make_shared<Rotation3d>();
    case ManifoldSpec::Kind::kFreeFlyerPlanar: return std::make_shared<FreeFlyerPlanar>();
    case ManifoldSpec::Kind::kComposite: {
      std::vector<ManifoldPtr> children;
      for (const auto& c : spec.children) children.push_back(make_manifold(c));
      return std::make_shared<CompositeManifold>(std::move(children));
    }
  }
  throw DimensionError("unknown manifold kind");
}

}  // namespace fddp
