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

#include "fddp/contact/contact.hpp"

#include <string>

#include "fddp/errors.hpp"

namespace fddp {

VectorXd baumgarte_a0(const Contact& contact, const ConstVectorRef& placement,
                      const ConstVectorRef& velocity, const ConstVectorRef& drift) {
  const Index nf = drift.size();
  if (placement.size() != nf || velocity.size() != nf || contact.reference.size() != nf) {
    throw DimensionError("contact '" + contact.frame + "': placement, velocity, drift and "
                         "reference must all have " + std::to_string(nf) + " entries");
  }
  return drift - contact.alpha * (contact.reference - placement) - contact.beta * velocity;
}

void KktFactorization::compute(const MatrixXd& m, const MatrixXd& j) {
  nv_ = m.rows();
  nf_ = j.rows();
  if (m.cols() != nv_ || (nf_ > 0 && j.cols() != nv_)) {
    throw DimensionError("KKT blocks: M must be square and J must have nv columns");
  }
  m_llt_.compute(m);
  if (m_llt_.info() != Eigen::Success) {
    throw FactorizationError("mass matrix is not symmetric positive definite");
  }
  j_ = j;
  if (nf_ == 0) return;
  minv_jt_ = m_llt_.solve(j.transpose());
  mhat_.noalias() = j * minv_jt_;
  mhat_ = 0.5 * (mhat_ + mhat_.transpose()).eval();
  mhat_llt_.compute(mhat_);
  double pivot = 0.0;
  if (mhat_llt_.info() == Eigen::Success) {
    pivot = mhat_llt_.matrixLLT().diagonal().minCoeff();
    pivot *= pivot;
  }
  if (mhat_llt_.info() != Eigen::Success || pivot < kRankTolerance) {
    throw RankDeficiency("contact Jacobian is rank deficient", pivot);
  }
}

void KktFactorization::solve(const MatrixXd& top, const MatrixXd& bottom, MatrixXd& y,
                             MatrixXd& z) const {
  // Block elimination: z = Mhat^-1 (J M^-1 top - bottom), y = M^-1 (top - J^T z).
  if (nf_ == 0) {
    y = m_llt_.solve(top);
    z.resize(0, top.cols());
    return;
  }
  z = mhat_llt_.solve(minv_jt_.transpose() * top - bottom);
  y = m_llt_.solve(top) - minv_jt_ * z;
}

void contact_forward_dynamics(ContactWorkspace& ws) {
  if (ws.tau_b.size() != ws.M.rows() || ws.a0.size() != ws.Jc.rows()) {
    throw DimensionError("contact dynamics: tau_b must have nv and a0 nf entries");
  }
  ws.kkt.compute(ws.M, ws.Jc);
  MatrixXd y;
  MatrixXd z;
  ws.kkt.solve(ws.tau_b, -ws.a0, y, z);
  ws.vdot = y.col(0);
  ws.lambda = -z.col(0);
}

ContactWorkspace contact_forward_dynamics(const MatrixXd& m, const MatrixXd& jc,
                                          const VectorXd& tau_b, const VectorXd& a0) {
  ContactWorkspace ws;
  ws.M = m;
  ws.Jc = jc;
  ws.tau_b = tau_b;
  ws.a0 = a0;
  contact_forward_dynamics(ws);
  return ws;
}

ContactDerivatives contact_dynamics_derivatives(const ContactWorkspace& ws,
                                                const MatrixXd& dtau_dx, const MatrixXd& dtau_du,
                                                const MatrixXd& da0_dx, const MatrixXd& da0_du) {
  // Differentiating the block system at fixed (vdot, lambda):
  // KKT [d vdot; -d lambda] = -[dtau; da0].
  const Index nx = dtau_dx.cols();
  const Index nu = dtau_du.cols();
  MatrixXd top(ws.kkt.nv(), nx + nu);
  MatrixXd bottom(ws.kkt.nf(), nx + nu);
  top << dtau_dx, dtau_du;
  bottom << da0_dx, da0_du;
  MatrixXd y;
  MatrixXd z;
  ws.kkt.solve(top, bottom, y, z);
  ContactDerivatives d;
  d.vdot_x = -y.leftCols(nx);
  d.vdot_u = -y.rightCols(nu);
  d.lambda_x = z.leftCols(nx);
  d.lambda_u = z.rightCols(nu);
  return d;
}

void impulse_dynamics(ImpulseWorkspace& ws) {
  if (ws.restitution < 0.0 || ws.restitution > 1.0) {
    throw DimensionError("restitution must lie in [0, 1]");
  }
  if (ws.v_minus.size() != ws.M.rows()) {
    throw DimensionError("impulse dynamics: v_minus must have nv entries");
  }
  ws.kkt.compute(ws.M, ws.Jc);
  MatrixXd y;
  MatrixXd z;
  ws.kkt.solve(ws.M * ws.v_minus, -ws.restitution * (ws.Jc * ws.v_minus), y, z);
  ws.v_plus = y.col(0);
  ws.Lambda = -z.col(0);
}

ImpulseWorkspace impulse_dynamics(const MatrixXd& m, const MatrixXd& jc, const VectorXd& v_minus,
                                  double restitution) {
  ImpulseWorkspace ws;
  ws.M = m;
  ws.Jc = jc;
  ws.v_minus = v_minus;
  ws.restitution = restitution;
  impulse_dynamics(ws);
  return ws;
}

ImpulseDerivatives impulse_dynamics_derivatives(const ImpulseWorkspace& ws,
                                                const MatrixXd& dres_top,
                                                const MatrixXd& dres_bottom) {
  MatrixXd y;
  MatrixXd z;
  ws.kkt.solve(dres_top, dres_bottom, y, z);
  return {-y, z};
}

}  // namespace fddp
