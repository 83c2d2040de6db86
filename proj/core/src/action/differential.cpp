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

#include "fddp/action/differential.hpp"

#include <cmath>
#include <string>

#include "fddp/errors.hpp"

namespace fddp {
namespace {

constexpr int kQuasiStaticMaxSteps = 100;
constexpr double kQuasiStaticTolerance = 1e-6;

}  // namespace

DifferentialActionModel::DifferentialActionModel(SystemPtr system, ContactSet contacts,
                                                 CostModel costs)
    : system_(std::move(system)), contacts_(std::move(contacts)), costs_(std::move(costs)) {
  if (!system_) throw DimensionError("differential model needs a mechanical system");
  for (const auto& c : contacts_) {
    if (!system_->has_frame(c.frame)) {
      throw ConfigError("system '" + system_->id() + "' has no frame '" + c.frame + "'",
                        "contacts.frame");
    }
    const Index dim = system_->frame_dim(c.frame);
    if (c.reference.size() != dim) {
      throw DimensionError("contact '" + c.frame + "' reference must have " +
                           std::to_string(dim) + " entries");
    }
    if (!(c.alpha >= 0.0) || !(c.beta >= 0.0)) {
      throw DimensionError("contact '" + c.frame + "' gains must be non-negative");
    }
    nf_ += dim;
  }
  if (costs_.ndx() != state()->ndx() || costs_.nu() != nu()) {
    throw DimensionError("cost model dimensions do not match the system");
  }
}

DifferentialActionModel::Data DifferentialActionModel::create_data() const {
  const Index nv = system_->nv();
  const Index ndx = state()->ndx();
  Data d;
  d.vdot = VectorXd::Zero(nv);
  d.lambda = VectorXd::Zero(nf_);
  d.vdot_x = MatrixXd::Zero(nv, ndx);
  d.vdot_u = MatrixXd::Zero(nv, nu());
  d.cost_diff = {VectorXd::Zero(ndx), VectorXd::Zero(nu()), MatrixXd::Zero(ndx, ndx),
                 MatrixXd::Zero(ndx, nu()), MatrixXd::Zero(nu(), nu())};
  return d;
}

void DifferentialActionModel::calc(Data& d, const ConstVectorRef& x,
                                   const ConstVectorRef& u) const {
  const auto& sys = *system_;
  const Index nq = sys.nq();
  const Index nv = sys.nv();
  const auto q = x.head(nq);
  const auto v = x.tail(nv);
  auto& ws = d.contact;
  ws.M = sys.mass_matrix(q);
  ws.tau_b = sys.actuation() * u - sys.bias(q, v);
  ws.Jc.resize(nf_, nv);
  ws.a0.resize(nf_);
  Index row = 0;
  for (const auto& c : contacts_) {
    const Index dim = c.reference.size();
    const MatrixXd j = sys.frame_jacobian(c.frame, q);
    ws.Jc.middleRows(row, dim) = j;
    ws.a0.segment(row, dim) = baumgarte_a0(c, sys.frame_position(c.frame, q), j * v,
                                           sys.frame_drift(c.frame, q, v));
    row += dim;
  }
  contact_forward_dynamics(ws);
  d.vdot = ws.vdot;
  d.lambda = ws.lambda;
  d.cost = costs_.calc(x, u);
  if (!d.vdot.allFinite() || !std::isfinite(d.cost)) {
    throw NumericalFailure(sys.id() + " dynamics produced a non-finite acceleration or cost");
  }
}

void DifferentialActionModel::calc_diff(Data& d, const ConstVectorRef& x,
                                        const ConstVectorRef& u) const {
  const auto& sys = *system_;
  const Index nq = sys.nq();
  const Index nv = sys.nv();
  const Index ndx = state()->ndx();
  const auto q = x.head(nq);
  const auto v = x.tail(nv);

  MatrixXd dtau_dx(nv, ndx);
  auto [db_dq, db_dv] = sys.dbias(q, v);
  dtau_dx.leftCols(nv) = sys.dmass_times(q, d.vdot) + db_dq;
  dtau_dx.rightCols(nv) = db_dv;
  const MatrixXd dtau_du = -sys.actuation();

  MatrixXd da0_dx(nf_, ndx);
  Index row = 0;
  for (const auto& c : contacts_) {
    const Index dim = c.reference.size();
    dtau_dx.leftCols(nv) -= sys.djacobian_transpose_times(c.frame, q, d.lambda.segment(row, dim));
    const auto& j = d.contact.Jc.middleRows(row, dim);
    auto [dd_dq, dd_dv] = sys.ddrift(c.frame, q, v);
    da0_dx.middleRows(row, dim).leftCols(nv) = sys.djacobian_times(c.frame, q, d.vdot) + dd_dq +
                                               c.alpha * j -
                                               c.beta * sys.djacobian_times(c.frame, q, v);
    da0_dx.middleRows(row, dim).rightCols(nv) = dd_dv - c.beta * j;
    row += dim;
  }
  const auto derivs = contact_dynamics_derivatives(d.contact, dtau_dx, dtau_du, da0_dx,
                                                   MatrixXd::Zero(nf_, nu()));
  d.vdot_x = derivs.vdot_x;
  d.vdot_u = derivs.vdot_u;

  auto& c = d.cost_diff;
  c.Lx.setZero();
  c.Lu.setZero();
  c.Lxx.setZero();
  c.Lxu.setZero();
  c.Luu.setZero();
  costs_.calc_diff(x, u, 1.0, c);
}

MatrixXd DifferentialActionModel::acceleration_control_jacobian(const Data& d) const {
  MatrixXd y;
  MatrixXd z;
  d.contact.kkt.solve(system_->actuation(), MatrixXd::Zero(nf_, nu()), y, z);
  return y;
}

VectorXd DifferentialActionModel::quasi_static(const ConstVectorRef& x) const {
  const Index nv = system_->nv();
  VectorXd xs = x;
  xs.tail(nv).setZero();
  Data d = create_data();
  VectorXd u = VectorXd::Zero(nu());
  calc(d, xs, u);
  double residual = d.vdot.norm();
  double damping = 1e-8;
  for (int step = 0; step < kQuasiStaticMaxSteps && residual > 1e-12; ++step) {
    const MatrixXd j = acceleration_control_jacobian(d);
    const MatrixXd h = j.transpose() * j + damping * MatrixXd::Identity(nu(), nu());
    const VectorXd du = -h.ldlt().solve(j.transpose() * d.vdot);
    if (du.norm() <= 1e-14 * (1.0 + u.norm())) break;
    const VectorXd trial = u + du;
    Data dt = create_data();
    calc(dt, xs, trial);
    const double r = dt.vdot.norm();
    if (r < residual) {
      u = trial;
      d = std::move(dt);
      residual = r;
      damping = std::max(damping / 10.0, 1e-12);
    } else {
      damping *= 10.0;
      if (damping > 1e12) break;
    }
  }
  if (!(residual <= kQuasiStaticTolerance)) {
    throw NonConvergence("quasi-static control did not reach zero acceleration", residual, u);
  }
  return u;
}

}  // namespace fddp
