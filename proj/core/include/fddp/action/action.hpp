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
#include <string>

#include "fddp/action/cost.hpp"
#include "fddp/manifold/manifold.hpp"

namespace fddp {

class ActionModel;

/// Everything one node evaluation produces. Models may extend it with scratch
/// space; a data object belongs to exactly one model and one caller at a time.
struct ActionData {
  explicit ActionData(const ActionModel& model);
  virtual ~ActionData() = default;

  VectorXd xnext;
  double cost = 0.0;
  MatrixXd Fx;
  MatrixXd Fu;
  VectorXd Lx;
  VectorXd Lu;
  MatrixXd Lxx;
  MatrixXd Lxu;
  MatrixXd Luu;
};

/// One shooting node: a discrete transition x+ = f(x, u) with stage cost l(x, u).
///
/// Models hold no mutable state, so one model can be evaluated concurrently
/// on separate data objects.
class ActionModel {
 public:
  ActionModel(ManifoldPtr state, Index nu);
  virtual ~ActionModel() = default;

  [[nodiscard]] const ManifoldPtr& state() const { return state_; }
  [[nodiscard]] Index nx() const { return state_->nx(); }
  [[nodiscard]] Index ndx() const { return state_->ndx(); }
  [[nodiscard]] Index nu() const { return nu_; }

  [[nodiscard]] virtual std::unique_ptr<ActionData> create_data() const;

  /// Fills xnext and cost. Throws NumericalFailure on non-finite output.
  virtual void calc(ActionData& data, const ConstVectorRef& x, const ConstVectorRef& u) const = 0;
  /// Fills Fx, Fu and the cost derivatives. Expects calc(data, x, u) first.
  virtual void calc_diff(ActionData& data, const ConstVectorRef& x,
                         const ConstVectorRef& u) const = 0;

  /// Control holding the state still (zero acceleration at zero velocity).
  /// Throws UnsupportedOperation for models without a notion of it.
  [[nodiscard]] virtual VectorXd quasi_static(const ConstVectorRef& x) const;

  [[nodiscard]] virtual std::string describe() const = 0;

  /// Throws DimensionError unless x and u match this model.
  void check_inputs(const ConstVectorRef& x, const ConstVectorRef& u) const;

 protected:
  static void require_finite(const ActionData& data, const std::string& what);

 private:
  ManifoldPtr state_;
  Index nu_;
};

using ActionModelPtr = std::shared_ptr<const ActionModel>;

/// Cost-only end node: xnext = x, cost = l_N(x), nu = 0.
class TerminalActionModel final : public ActionModel {
 public:
  TerminalActionModel(ManifoldPtr state, CostModel costs);

  void calc(ActionData& data, const ConstVectorRef& x, const ConstVectorRef& u) const override;
  void calc_diff(ActionData& data, const ConstVectorRef& x,
                 const ConstVectorRef& u) const override;
  VectorXd quasi_static(const ConstVectorRef&) const override { return {}; }
  std::string describe() const override { return "terminal"; }

 private:
  CostModel costs_;
};

/// x+ = x + (A x + B u + c) dt, cost = l(x, u) dt.
class LqrActionModel final : public ActionModel {
 public:
  LqrActionModel(MatrixXd a, MatrixXd b, VectorXd c, double dt, CostModel costs);

  [[nodiscard]] const MatrixXd& A() const { return a_; }
  [[nodiscard]] const MatrixXd& B() const { return b_; }
  [[nodiscard]] const VectorXd& c() const { return c_; }
  [[nodiscard]] double dt() const { return dt_; }

  void calc(ActionData& data, const ConstVectorRef& x, const ConstVectorRef& u) const override;
  void calc_diff(ActionData& data, const ConstVectorRef& x,
                 const ConstVectorRef& u) const override;
  std::string describe() const override { return "lqr"; }

 private:
  MatrixXd a_;
  MatrixXd b_;
  VectorXd c_;
  double dt_;
  CostModel costs_;
};

/// Free function form of ActionModel::quasi_static.
[[nodiscard]] VectorXd quasi_static_control(const ActionModel& model, const ConstVectorRef& x);

}  // namespace fddp
