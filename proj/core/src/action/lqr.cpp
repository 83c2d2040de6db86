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

#include <string>

#include "fddp/action/action.hpp"
#include "fddp/errors.hpp"

namespace fddp {

LqrActionModel::LqrActionModel(MatrixXd a, MatrixXd b, VectorXd c, double dt, CostModel costs)
    : ActionModel(make_manifold(ManifoldSpec::vector(a.rows())), b.cols()),
      a_(std::move(a)),
      b_(std::move(b)),
      c_(std::move(c)),
      dt_(dt),
      costs_(std::move(costs)) {
  const Index n = a_.rows();
  if (a_.cols() != n || b_.rows() != n) {
    throw DimensionError("lqr: A must be n x n and B must have n rows");
  }
  if (c_.size() == 0) c_ = VectorXd::Zero(n);
  if (c_.size() != n) throw DimensionError("lqr: c must have " + std::to_string(n) + " entries");
  if (!(dt_ > 0.0)) throw DimensionError("lqr: dt must be positive");
  if (costs_.ndx() != n || costs_.nu() != b_.cols()) {
    throw DimensionError("lqr: cost model dimensions do not match the dynamics");
  }
}

void LqrActionModel::calc(ActionData& data, const ConstVectorRef& x,
                          const ConstVectorRef& u) const {
  check_inputs(x, u);
  data.xnext = x + (a_ * x + b_ * u + c_) * dt_;
  data.cost = costs_.calc(x, u) * dt_;
  require_finite(data, "lqr model");
}

void LqrActionModel::calc_diff(ActionData& data, const ConstVectorRef& x,
                               const ConstVectorRef& u) const {
  check_inputs(x, u);
  data.Fx = MatrixXd::Identity(nx(), nx()) + a_ * dt_;
  data.Fu = b_ * dt_;
  CostDerivatives c{VectorXd::Zero(ndx()), VectorXd::Zero(nu()), MatrixXd::Zero(ndx(), ndx()),
                    MatrixXd::Zero(ndx(), nu()), MatrixXd::Zero(nu(), nu())};
  costs_.calc_diff(x, u, dt_, c);
  data.Lx = c.Lx;
  data.Lu = c.Lu;
  data.Lxx = c.Lxx;
  data.Lxu = c.Lxu;
  data.Luu = c.Luu;
}

}  // namespace fddp
