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

#include "fddp/multibody/system.hpp"

#include <algorithm>

#include <Eigen/Cholesky>

#include "fddp/errors.hpp"

namespace fddp {
namespace {

constexpr double kFdStep = 1e-6;

ManifoldPtr make_state(const ManifoldPtr& config) {
  if (config->spec().kind == ManifoldSpec::Kind::kVector) {
    return make_manifold(ManifoldSpec::vector(config->nx() + config->ndx()));
  }
  return make_manifold(ManifoldSpec::composite({config->spec(), ManifoldSpec::vector(config->ndx())}));
}

}  // namespace

MechanicalSystem::MechanicalSystem(std::string id, ManifoldPtr config, Index nu)
    : id_(std::move(id)), config_(std::move(config)), state_(make_state(config_)), nu_(nu) {}

MatrixXd MechanicalSystem::config_fd(const ConstVectorRef& q,
                                     const std::function<VectorXd(const VectorXd&)>& f) const {
  const Index n = nv();
  VectorXd e = VectorXd::Zero(n);
  MatrixXd jac;
  for (Index j = 0; j < n; ++j) {
    e[j] = kFdStep;
    const VectorXd fp = f(config_->integrate(q, e));
    e[j] = -kFdStep;
    const VectorXd fm = f(config_->integrate(q, e));
    e[j] = 0.0;
    if (j == 0) jac.resize(fp.size(), n);
    jac.col(j) = (fp - fm) / (2.0 * kFdStep);
  }
  return jac;
}

MatrixXd MechanicalSystem::dmass_times(const ConstVectorRef& q, const ConstVectorRef& a) const {
  const VectorXd aa = a;
  return config_fd(q, [&](const VectorXd& qq) -> VectorXd { return mass_matrix(qq) * aa; });
}

std::pair<MatrixXd, MatrixXd> MechanicalSystem::dbias(const ConstVectorRef& q,
                                                      const ConstVectorRef& v) const {
  const VectorXd vv = v;
  const VectorXd qq0 = q;
  MatrixXd dq = config_fd(q, [&](const VectorXd& qq) -> VectorXd { return bias(qq, vv); });
  MatrixXd dv(nv(), nv());
  VectorXd vp = vv;
  for (Index j = 0; j < nv(); ++j) {
    vp[j] = vv[j] + kFdStep;
    const VectorXd bp = bias(qq0, vp);
    vp[j] = vv[j] - kFdStep;
    const VectorXd bm = bias(qq0, vp);
    vp[j] = vv[j];
    dv.col(j) = (bp - bm) / (2.0 * kFdStep);
  }
  return {std::move(dq), std::move(dv)};
}

bool MechanicalSystem::has_frame(const std::string& name) const {
  const auto f = frames();
  return std::find(f.begin(), f.end(), name) != f.end();
}

void MechanicalSystem::unknown_frame(const std::string& name) const {
  throw ConfigError("system '" + id_ + "' has no frame '" + name + "'", "frame");
}

Index MechanicalSystem::frame_dim(const std::string& name) const { unknown_frame(name); }

VectorXd MechanicalSystem::frame_position(const std::string& name, const ConstVectorRef&) const {
  unknown_frame(name);
}

MatrixXd MechanicalSystem::frame_jacobian(const std::string& name, const ConstVectorRef& q) const {
  return config_fd(q, [&](const VectorXd& qq) -> VectorXd { return frame_position(name, qq); });
}

VectorXd MechanicalSystem::frame_drift(const std::string& name, const ConstVectorRef& q,
                                       const ConstVectorRef& v) const {
  return djacobian_times(name, q, v) * v;
}

MatrixXd MechanicalSystem::djacobian_transpose_times(const std::string& name,
                                                     const ConstVectorRef& q,
                                                     const ConstVectorRef& f) const {
  const VectorXd ff = f;
  return config_fd(q, [&](const VectorXd& qq) -> VectorXd {
    return frame_jacobian(name, qq).transpose() * ff;
  });
}

MatrixXd MechanicalSystem::djacobian_times(const std::string& name, const ConstVectorRef& q,
                                           const ConstVectorRef& w) const {
  const VectorXd ww = w;
  return config_fd(q,
                   [&](const VectorXd& qq) -> VectorXd { return frame_jacobian(name, qq) * ww; });
}

std::pair<MatrixXd, MatrixXd> MechanicalSystem::ddrift(const std::string& name,
                                                       const ConstVectorRef& q,
                                                       const ConstVectorRef& v) const {
  const VectorXd vv = v;
  const VectorXd qq0 = q;
  MatrixXd dq =
      config_fd(q, [&](const VectorXd& qq) -> VectorXd { return frame_drift(name, qq, vv); });
  VectorXd vp = vv;
  MatrixXd dv;
  for (Index j = 0; j < nv(); ++j) {
    vp[j] = vv[j] + kFdStep;
    const VectorXd ap = frame_drift(name, qq0, vp);
    vp[j] = vv[j] - kFdStep;
    const VectorXd am = frame_drift(name, qq0, vp);
    vp[j] = vv[j];
    if (j == 0) dv.resize(ap.size(), nv());
    dv.col(j) = (ap - am) / (2.0 * kFdStep);
  }
  return {std::move(dq), std::move(dv)};
}

VectorXd MechanicalSystem::com(const ConstVectorRef&) const {
  throw UnsupportedOperation("system '" + id_ + "' does not define a center of mass");
}

MatrixXd MechanicalSystem::com_jacobian(const ConstVectorRef& q) const {
  return config_fd(q, [&](const VectorXd& qq) -> VectorXd { return com(qq); });
}

VectorXd MechanicalSystem::free_acceleration(const ConstVectorRef& q, const ConstVectorRef& v,
                                             const ConstVectorRef& u) const {
  Eigen::LLT<MatrixXd> llt(mass_matrix(q));
  if (llt.info() != Eigen::Success) {
    throw FactorizationError("mass matrix of '" + id_ + "' is not positive definite");
  }
  return llt.solve(actuation() * u - bias(q, v));
}

}  // namespace fddp
