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

#include "fddp/action/numdiff.hpp"

#include <algorithm>

namespace fddp {

FiniteDifferences finite_differences(const ActionModel& model, const ConstVectorRef& x,
                                     const ConstVectorRef& u, double step) {
  const auto& m = *model.state();
  const Index ndx = model.ndx();
  const Index nu = model.nu();
  auto d = model.create_data();
  model.calc(*d, x, u);
  const VectorXd xnext = d->xnext;

  FiniteDifferences fd{MatrixXd(ndx, ndx), MatrixXd(ndx, nu), VectorXd(ndx), VectorXd(nu)};
  VectorXd e = VectorXd::Zero(ndx);
  for (Index j = 0; j < ndx; ++j) {
    e[j] = step;
    model.calc(*d, m.integrate(x, e), u);
    const VectorXd xp = m.difference(xnext, d->xnext);
    const double cp = d->cost;
    e[j] = -step;
    model.calc(*d, m.integrate(x, e), u);
    const VectorXd xm = m.difference(xnext, d->xnext);
    const double cm = d->cost;
    e[j] = 0.0;
    fd.Fx.col(j) = (xp - xm) / (2.0 * step);
    fd.Lx[j] = (cp - cm) / (2.0 * step);
  }
  VectorXd up = u;
  for (Index j = 0; j < nu; ++j) {
    up[j] = u[j] + step;
    model.calc(*d, x, up);
    const VectorXd xp = m.difference(xnext, d->xnext);
    const double cp = d->cost;
    up[j] = u[j] - step;
    model.calc(*d, x, up);
    const VectorXd xm = m.difference(xnext, d->xnext);
    const double cm = d->cost;
    up[j] = u[j];
    fd.Fu.col(j) = (xp - xm) / (2.0 * step);
    fd.Lu[j] = (cp - cm) / (2.0 * step);
  }
  return fd;
}

double relative_error(const MatrixXd& analytic, const MatrixXd& reference) {
  if (reference.size() == 0) return 0.0;
  const double scale = std::max(1.0, reference.cwiseAbs().maxCoeff());
  return (analytic - reference).cwiseAbs().maxCoeff() / scale;
}

std::vector<BlockError> check_action_derivatives(const ActionModel& model, const ConstVectorRef& x,
                                                 const ConstVectorRef& u,
                                                 const DerivativeCheckOptions& options) {
  auto d = model.create_data();
  model.calc(*d, x, u);
  model.calc_diff(*d, x, u);
  const auto fd = finite_differences(model, x, u, options.step);

  std::vector<BlockError> out;
  const auto add = [&](const char* name, MatrixXd analytic, const MatrixXd& reference) {
    if (options.corrupt_block == name && analytic.size() > 0) analytic(0, 0) += 1.0;
    out.push_back({name, relative_error(analytic, reference)});
  };
  add("Fx", d->Fx, fd.Fx);
  add("Fu", d->Fu, fd.Fu);
  add("Lx", d->Lx, fd.Lx);
  add("Lu", d->Lu, fd.Lu);
  return out;
}

}  // namespace fddp
