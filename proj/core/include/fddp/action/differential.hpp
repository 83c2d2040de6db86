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

#include "fddp/action/action.hpp"
#include "fddp/action/cost.hpp"
#include "fddp/contact/contact.hpp"
#include "fddp/multibody/system.hpp"

namespace fddp {

/// Continuous-time model: vdot(x, u) of a mechanical system, optionally under
/// rigid contacts, and a running cost rate l(x, u).
class DifferentialActionModel {
 public:
  struct Data {
    VectorXd vdot;
    VectorXd lambda;
    double cost = 0.0;
    MatrixXd vdot_x;  // nv x ndx
    MatrixXd vdot_u;  // nv x nu
    CostDerivatives cost_diff;
    ContactWorkspace contact;
  };

  DifferentialActionModel(SystemPtr system, ContactSet contacts, CostModel costs);

  [[nodiscard]] const SystemPtr& system() const { return system_; }
  [[nodiscard]] const ContactSet& contacts() const { return contacts_; }
  [[nodiscard]] const ManifoldPtr& state() const { return system_->state_manifold(); }
  [[nodiscard]] Index nu() const { return system_->nu(); }
  [[nodiscard]] Index nf() const { return nf_; }

  [[nodiscard]] Data create_data() const;

  void calc(Data& d, const ConstVectorRef& x, const ConstVectorRef& u) const;
  /// Expects calc(d, x, u) first.
  void calc_diff(Data& d, const ConstVectorRef& x, const ConstVectorRef& u) const;

  /// d vdot / du only. Expects calc(d, x, u) first.
  [[nodiscard]] MatrixXd acceleration_control_jacobian(const Data& d) const;

  /// Damped Gauss-Newton on vdot(q, 0, u) = 0, at most 100 steps. Throws
  /// NonConvergence (carrying the best iterate) if the residual stays above 1e-6.
  [[nodiscard]] VectorXd quasi_static(const ConstVectorRef& x) const;

 private:
  SystemPtr system_;
  ContactSet contacts_;
  CostModel costs_;
  Index nf_ = 0;
};

/// One semi-implicit Euler step of a differential model:
/// v+ = v + vdot dt, q+ = q (+) v+ dt, cost = l dt.
class IntegratedActionModel final : public ActionModel {
 public:
  IntegratedActionModel(std::shared_ptr<const DifferentialActionModel> model, double dt);

  [[nodiscard]] const DifferentialActionModel& differential() const { return *model_; }
  [[nodiscard]] double dt() const { return dt_; }

  std::unique_ptr<ActionData> create_data() const override;
  void calc(ActionData& data, const ConstVectorRef& x, const ConstVectorRef& u) const override;
  void calc_diff(ActionData& data, const ConstVectorRef& x,
                 const ConstVectorRef& u) const override;
  VectorXd quasi_static(const ConstVectorRef& x) const override;
  std::string describe() const override;

 private:
  std::shared_ptr<const DifferentialActionModel> model_;
  double dt_;
};

/// Contact-gain switch: x+ = (q, v+) with v+ from the impact map of the
/// contacts being closed, nu = 0. Baumgarte gains of the contacts are unused.
class ImpulseActionModel final : public ActionModel {
 public:
  ImpulseActionModel(SystemPtr system, ContactSet contacts, double restitution, CostModel costs);

  [[nodiscard]] double restitution() const { return restitution_; }
  [[nodiscard]] const ContactSet& contacts() const { return contacts_; }

  std::unique_ptr<ActionData> create_data() const override;
  void calc(ActionData& data, const ConstVectorRef& x, const ConstVectorRef& u) const override;
  void calc_diff(ActionData& data, const ConstVectorRef& x,
                 const ConstVectorRef& u) const override;
  VectorXd quasi_static(const ConstVectorRef&) const override { return {}; }
  std::string describe() const override;

 private:
  SystemPtr system_;
  ContactSet contacts_;
  double restitution_;
  CostModel costs_;
};

}  // namespace fddp
