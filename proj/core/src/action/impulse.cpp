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

#include <sstream>

#include "fddp/action/differential.hpp"
#include "fddp/errors.hpp"

namespace fddp {
namespace {

struct ImpulseData final : ActionData {
  explicit ImpulseData(const ImpulseActionModel& model) : ActionData(model) {}

  ImpulseWorkspace ws;
};

}  // namespace

ImpulseActionModel::ImpulseActionModel(SystemPtr system, ContactSet contacts, double restitution,
                                       CostModel costs)
    : ActionModel(system ? system->state_manifold() : nullptr, 0),
      system_(std::move(system)),
      contacts_(std::move(contacts)),
      restitution_(restitution),
      costs_(std::move(costs)) {
  if (contacts_.empty()) throw DimensionError("impulse model needs at least one contact");
  if (!(restitution_ >= 0.0 && restitution_ <= 1.0)) {
    throw DimensionError("restitution must lie in [0, 1]");
  }
  for (const auto& c : contacts_) {
    if (!system_->has_frame(c.frame)) {
      throw ConfigError("system '" + system_->id() + "' has no frame '" + c.frame + "'",
                        "switches.contacts.frame");
    }
  }
  if (costs_.ndx() != ndx() || costs_.nu() != 0) {
    throw DimensionError("impulse cost model dimensions do not match the system");
  }
}

std::unique_ptr<ActionData> ImpulseActionModel::create_data() const {
  return std::make_unique<ImpulseData>(*this);
}

void ImpulseActionModel::calc(ActionData& data, const ConstVectorRef& x,
                              const ConstVectorRef& u) const {
  check_inputs(x, u);
  auto& d = static_cast<ImpulseData&>(data);
  const auto& sys = *system_;
  const Index nq = sys.nq();
  const Index nv = sys.nv();
  const auto q = x.head(nq);
  auto& ws = d.ws;
  ws.M = sys.mass_matrix(q);
  Index nf = 0;
  for (const auto& c : contacts_) nf += sys.frame_dim(c.frame);
  ws.Jc.resize(nf, nv);
  Index row = 0;
  for (const auto& c : contacts_) {
    const Index dim = sys.frame_dim(c.frame);
    ws.Jc.middleRows(row, dim) = sys.frame_jacobian(c.frame, q);
    row += dim;
  }
  ws.v_minus = x.tail(nv);
  ws.restitution = restitution_;
  impulse_dynamics(ws);
  d.xnext.head(nq) = q;
  d.xnext.tail(nv) = ws.v_plus;
  d.cost = costs_.calc(x, u);
  require_finite(d, describe());
}

void ImpulseActionModel::calc_diff(ActionData& data, const ConstVectorRef& x,
                                   const ConstVectorRef& u) const {
  check_inputs(x, u);
  auto& d = static_cast<ImpulseData&>(data);
  const auto& sys = *system_;
  const Index nq = sys.nq();
  const Index nv = sys.nv();
  const auto q = x.head(nq);
  const auto& ws = d.ws;
  const Index nf = ws.Jc.rows();

  MatrixXd top(nv, 2 * nv);
  MatrixXd bottom(nf, 2 * nv);
  top.leftCols(nv) = sys.dmass_times(q, ws.v_plus - ws.v_minus);
  top.rightCols(nv) = -ws.M;
  const VectorXd w = ws.v_plus + restitution_ * ws.v_minus;
  Index row = 0;
  for (const auto& c : contacts_) {
    const Index dim = sys.frame_dim(c.frame);
    top.leftCols(nv) -= sys.djacobian_transpose_times(c.frame, q, ws.Lambda.segment(row, dim));
    bottom.middleRows(row, dim).leftCols(nv) = sys.djacobian_times(c.frame, q, w);
    row += dim;
  }
  bottom.rightCols(nv) = restitution_ * ws.Jc;
  const auto derivs = impulse_dynamics_derivatives(ws, top, bottom);

  d.Fx.setZero();
  d.Fx.topLeftCorner(nv, nv).setIdentity();
  d.Fx.bottomRows(nv) = derivs.v_plus_x;

  CostDerivatives c{VectorXd::Zero(ndx()), VectorXd::Zero(0), MatrixXd::Zero(ndx(), ndx()),
                    MatrixXd::Zero(ndx(), 0), MatrixXd::Zero(0, 0)};
  costs_.calc_diff(x, u, 1.0, c);
  d.Lx = c.Lx;
  d.Lxx = c.Lxx;
}

std::string ImpulseActionModel::describe() const {
  std::ostringstream os;
  os << system_->id() << " impulse [contacts:";
  for (const auto& c : contacts_) os << ' ' << c.frame;
  os << "] e=" << restitution_;
  return os.str();
}

}  // namespace fddp
