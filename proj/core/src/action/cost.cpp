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

#include "fddp/action/cost.hpp"

#include <string>

#include "fddp/errors.hpp"

namespace fddp {

StateRegularization::StateRegularization(ManifoldPtr state, VectorXd reference)
    : state_(std::move(state)), reference_(std::move(reference)) {
  state_->check_point(reference_);
}

VectorXd StateRegularization::residual(const ConstVectorRef& x, const ConstVectorRef&) const {
  return state_->difference(reference_, x);
}

void StateRegularization::jacobians(const ConstVectorRef& x, const ConstVectorRef&,
                                    Eigen::Ref<MatrixXd> rx, Eigen::Ref<MatrixXd> ru) const {
  MatrixXd j0(state_->ndx(), state_->ndx());
  state_->jdifference_into(reference_, x, j0, rx);
  ru.setZero();
}

ControlRegularization::ControlRegularization(VectorXd reference)
    : reference_(std::move(reference)) {}

VectorXd ControlRegularization::residual(const ConstVectorRef&, const ConstVectorRef& u) const {
  return u - reference_;
}

void ControlRegularization::jacobians(const ConstVectorRef&, const ConstVectorRef&,
                                      Eigen::Ref<MatrixXd> rx, Eigen::Ref<MatrixXd> ru) const {
  rx.setZero();
  ru.setIdentity();
}

FrameTranslationTracking::FrameTranslationTracking(SystemPtr system, std::string frame,
                                                   VectorXd target)
    : system_(std::move(system)), frame_(std::move(frame)), target_(std::move(target)) {
  if (system_->frame_dim(frame_) != target_.size()) {
    throw DimensionError("frame '" + frame_ + "' target must have " +
                         std::to_string(system_->frame_dim(frame_)) + " entries");
  }
}

VectorXd FrameTranslationTracking::residual(const ConstVectorRef& x, const ConstVectorRef&) const {
  return system_->frame_position(frame_, x.head(system_->nq())) - target_;
}

void FrameTranslationTracking::jacobians(const ConstVectorRef& x, const ConstVectorRef&,
                                         Eigen::Ref<MatrixXd> rx, Eigen::Ref<MatrixXd> ru) const {
  rx.setZero();
  rx.leftCols(system_->nv()) = system_->frame_jacobian(frame_, x.head(system_->nq()));
  ru.setZero();
}

ComTracking::ComTracking(SystemPtr system, VectorXd target)
    : system_(std::move(system)), target_(std::move(target)) {
  if (!system_->has_com()) {
    throw UnsupportedOperation("system '" + system_->id() + "' has no center of mass");
  }
  if (system_->com(system_->config_manifold()->neutral()).size() != target_.size()) {
    throw DimensionError("center-of-mass target has the wrong dimension");
  }
}

VectorXd ComTracking::residual(const ConstVectorRef& x, const ConstVectorRef&) const {
  return system_->com(x.head(system_->nq())) - target_;
}

void ComTracking::jacobians(const ConstVectorRef& x, const ConstVectorRef&,
                            Eigen::Ref<MatrixXd> rx, Eigen::Ref<MatrixXd> ru) const {
  rx.setZero();
  rx.leftCols(system_->nv()) = system_->com_jacobian(x.head(system_->nq()));
  ru.setZero();
}

void CostModel::add(std::shared_ptr<const CostTerm> term, double weight, VectorXd activation) {
  if (!term) throw DimensionError("null cost term");
  if (!(weight >= 0.0)) throw DimensionError("cost weight must be non-negative");
  if (activation.size() == 0) activation = VectorXd::Ones(term->nr());
  if (activation.size() != term->nr()) {
    throw DimensionError(term->kind() + " activation weights must have " +
                         std::to_string(term->nr()) + " entries");
  }
  if ((activation.array() < 0.0).any()) {
    throw DimensionError(term->kind() + " activation weights must be non-negative");
  }
  terms_.push_back({std::move(term), weight, std::move(activation)});
}

double CostModel::calc(const ConstVectorRef& x, const ConstVectorRef& u) const {
  double cost = 0.0;
  for (const auto& e : terms_) {
    const VectorXd r = e.term->residual(x, u);
    cost += 0.5 * e.weight * r.dot(e.activation.cwiseProduct(r));
  }
  return cost;
}

void CostModel::calc_diff(const ConstVectorRef& x, const ConstVectorRef& u, double scale,
                          CostDerivatives& out) const {
  for (const auto& e : terms_) {
    const Index nr = e.term->nr();
    const VectorXd r = e.term->residual(x, u);
    MatrixXd rx(nr, ndx_);
    MatrixXd ru(nr, nu_);
    e.term->jacobians(x, u, rx, ru);
    const VectorXd w = scale * e.weight * e.activation;
    const MatrixXd wrx = w.asDiagonal() * rx;
    const MatrixXd wru = w.asDiagonal() * ru;
    out.Lx.noalias() += wrx.transpose() * r;
    out.Lu.noalias() += wru.transpose() * r;
    out.Lxx.noalias() += rx.transpose() * wrx;
    out.Lxu.noalias() += wrx.transpose() * ru;
    out.Luu.noalias() += ru.transpose() * wru;
  }
}

}  // namespace fddp
