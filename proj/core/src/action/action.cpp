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

#include "fddp/action/action.hpp"

#include <cmath>
#include <string>

#include "fddp/errors.hpp"

namespace fddp {

ActionData::ActionData(const ActionModel& model)
    : xnext(model.state()->neutral()),
      Fx(MatrixXd::Zero(model.ndx(), model.ndx())),
      Fu(MatrixXd::Zero(model.ndx(), model.nu())),
      Lx(VectorXd::Zero(model.ndx())),
      Lu(VectorXd::Zero(model.nu())),
      Lxx(MatrixXd::Zero(model.ndx(), model.ndx())),
      Lxu(MatrixXd::Zero(model.ndx(), model.nu())),
      Luu(MatrixXd::Zero(model.nu(), model.nu())) {}

ActionModel::ActionModel(ManifoldPtr state, Index nu) : state_(std::move(state)), nu_(nu) {
  if (!state_) throw DimensionError("action model needs a state manifold");
  if (nu_ < 0) throw DimensionError("control dimension must be non-negative");
}

std::unique_ptr<ActionData> ActionModel::create_data() const {
  return std::make_unique<ActionData>(*this);
}

VectorXd ActionModel::quasi_static(const ConstVectorRef&) const {
  throw UnsupportedOperation(describe() + " model has no quasi-static control");
}

void ActionModel::check_inputs(const ConstVectorRef& x, const ConstVectorRef& u) const {
  if (x.size() != nx()) {
    throw DimensionError(describe() + ": state must have " + std::to_string(nx()) +
                         " entries, got " + std::to_string(x.size()));
  }
  if (u.size() != nu_) {
    throw DimensionError(describe() + ": control must have " + std::to_string(nu_) +
                         " entries, got " + std::to_string(u.size()));
  }
}

void ActionModel::require_finite(const ActionData& data, const std::string& what) {
  if (!data.xnext.allFinite() || !std::isfinite(data.cost)) {
    throw NumericalFailure(what + " produced a non-finite state or cost");
  }
}

TerminalActionModel::TerminalActionModel(ManifoldPtr state, CostModel costs)
    : ActionModel(std::move(state), 0), costs_(std::move(costs)) {}

void TerminalActionModel::calc(ActionData& data, const ConstVectorRef& x,
                               const ConstVectorRef& u) const {
  check_inputs(x, u);
  data.xnext = x;
  data.cost = costs_.calc(x, u);
  require_finite(data, "terminal model");
}

void TerminalActionModel::calc_diff(ActionData& data, const ConstVectorRef& x,
                                    const ConstVectorRef& u) const {
  check_inputs(x, u);
  data.Fx.setIdentity();
  CostDerivatives c{VectorXd::Zero(ndx()), VectorXd::Zero(0), MatrixXd::Zero(ndx(), ndx()),
                    MatrixXd::Zero(ndx(), 0), MatrixXd::Zero(0, 0)};
  costs_.calc_diff(x, u, 1.0, c);
  data.Lx = c.Lx;
  data.Lxx = c.Lxx;
}

VectorXd quasi_static_control(const ActionModel& model, const ConstVectorRef& x) {
  return model.quasi_static(x);
}

}  // namespace fddp
