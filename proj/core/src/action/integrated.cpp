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

struct IntegratedData final : ActionData {
  IntegratedData(const IntegratedActionModel& model)
      : ActionData(model), diff(model.differential().create_data()) {}

  DifferentialActionModel::Data diff;
  VectorXd v_next;
};

}  // namespace

IntegratedActionModel::IntegratedActionModel(std::shared_ptr<const DifferentialActionModel> model,
                                             double dt)
    : ActionModel(model ? model->state() : nullptr, model ? model->nu() : 0),
      model_(std::move(model)),
      dt_(dt) {
  if (!(dt_ > 0.0)) throw DimensionError("integration step must be positive");
}

std::unique_ptr<ActionData> IntegratedActionModel::create_data() const {
  return std::make_unique<IntegratedData>(*this);
}

void IntegratedActionModel::calc(ActionData& data, const ConstVectorRef& x,
                                 const ConstVectorRef& u) const {
  check_inputs(x, u);
  auto& d = static_cast<IntegratedData&>(data);
  const auto& sys = *model_->system();
  const Index nq = sys.nq();
  const Index nv = sys.nv();
  model_->calc(d.diff, x, u);
  d.v_next = x.tail(nv) + d.diff.vdot * dt_;
  sys.config_manifold()->integrate_into(x.head(nq), d.v_next * dt_, d.xnext.head(nq));
  d.xnext.tail(nv) = d.v_next;
  d.cost = d.diff.cost * dt_;
  require_finite(d, describe());
}

void IntegratedActionModel::calc_diff(ActionData& data, const ConstVectorRef& x,
                                      const ConstVectorRef& u) const {
  check_inputs(x, u);
  auto& d = static_cast<IntegratedData&>(data);
  const auto& sys = *model_->system();
  const Index nq = sys.nq();
  const Index nv = sys.nv();
  model_->calc_diff(d.diff, x, u);

  // dv+ = dv + dt (vdot_x dx + vdot_u du)
  MatrixXd dvn_dx = dt_ * d.diff.vdot_x;
  dvn_dx.rightCols(nv).diagonal().array() += 1.0;
  const MatrixXd dvn_du = dt_ * d.diff.vdot_u;

  MatrixXd jq_x(nv, nv);
  MatrixXd jq_dx(nv, nv);
  sys.config_manifold()->jintegrate_into(x.head(nq), d.v_next * dt_, jq_x, jq_dx);

  d.Fx.topRows(nv).noalias() = (dt_ * jq_dx) * dvn_dx;
  d.Fx.topLeftCorner(nv, nv) += jq_x;
  d.Fx.bottomRows(nv) = dvn_dx;
  d.Fu.topRows(nv).noalias() = (dt_ * jq_dx) * dvn_du;
  d.Fu.bottomRows(nv) = dvn_du;

  const auto& c = d.diff.cost_diff;
  d.Lx = c.Lx * dt_;
  d.Lu = c.Lu * dt_;
  d.Lxx = c.Lxx * dt_;
  d.Lxu = c.Lxu * dt_;
  d.Luu = c.Luu * dt_;
}

VectorXd IntegratedActionModel::quasi_static(const ConstVectorRef& x) const {
  if (x.size() != nx()) throw DimensionError("quasi_static: state has the wrong size");
  return model_->quasi_static(x);
}

std::string IntegratedActionModel::describe() const {
  std::ostringstream os;
  os << model_->system()->id();
  if (!model_->contacts().empty()) {
    os << " [contacts:";
    for (const auto& c : model_->contacts()) os << ' ' << c.frame;
    os << ']';
  }
  os << " dt=" << dt_;
  return os.str();
}

}  // namespace fddp
