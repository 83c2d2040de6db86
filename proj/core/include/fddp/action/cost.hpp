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
#include <vector>

#include "fddp/manifold/manifold.hpp"
#include "fddp/multibody/system.hpp"

namespace fddp {

/// Residual r(x, u) whose weighted square is a cost. Jacobians are in tangent
/// coordinates of the state.
class CostTerm {
 public:
  virtual ~CostTerm() = default;

  [[nodiscard]] virtual std::string kind() const = 0;
  [[nodiscard]] virtual Index nr() const = 0;
  [[nodiscard]] virtual VectorXd residual(const ConstVectorRef& x,
                                          const ConstVectorRef& u) const = 0;
  virtual void jacobians(const ConstVectorRef& x, const ConstVectorRef& u, Eigen::Ref<MatrixXd> rx,
                         Eigen::Ref<MatrixXd> ru) const = 0;
};

/// r = x_ref -> x, the manifold difference(x_ref, x).
class StateRegularization final : public CostTerm {
 public:
  StateRegularization(ManifoldPtr state, VectorXd reference);

  std::string kind() const override { return "state_regularization"; }
  Index nr() const override { return state_->ndx(); }
  VectorXd residual(const ConstVectorRef& x, const ConstVectorRef& u) const override;
  void jacobians(const ConstVectorRef& x, const ConstVectorRef& u, Eigen::Ref<MatrixXd> rx,
                 Eigen::Ref<MatrixXd> ru) const override;

 private:
  ManifoldPtr state_;
  VectorXd reference_;
};

/// r = u - u_ref.
class ControlRegularization final : public CostTerm {
 public:
  explicit ControlRegularization(VectorXd reference);

  std::string kind() const override { return "control_regularization"; }
  Index nr() const override { return reference_.size(); }
  VectorXd residual(const ConstVectorRef& x, const ConstVectorRef& u) const override;
  void jacobians(const ConstVectorRef& x, const ConstVectorRef& u, Eigen::Ref<MatrixXd> rx,
                 Eigen::Ref<MatrixXd> ru) const override;

 private:
  VectorXd reference_;
};

/// r = p_frame(q) - target.
class FrameTranslationTracking final : public CostTerm {
 public:
  FrameTranslationTracking(SystemPtr system, std::string frame, VectorXd target);

  std::string kind() const override { return "frame_translation_tracking"; }
  Index nr() const override { return target_.size(); }
  VectorXd residual(const ConstVectorRef& x, const ConstVectorRef& u) const override;
  void jacobians(const ConstVectorRef& x, const ConstVectorRef& u, Eigen::Ref<MatrixXd> rx,
                 Eigen::Ref<MatrixXd> ru) const override;

 private:
  SystemPtr system_;
  std::string frame_;
  VectorXd target_;
};

/// r = com(q) - target.
class ComTracking final : public CostTerm {
 public:
  ComTracking(SystemPtr system, VectorXd target);

  std::string kind() const override { return "com_tracking"; }
  Index nr() const override { return target_.size(); }
  VectorXd residual(const ConstVectorRef& x, const ConstVectorRef& u) const override;
  void jacobians(const ConstVectorRef& x, const ConstVectorRef& u, Eigen::Ref<MatrixXd> rx,
                 Eigen::Ref<MatrixXd> ru) const override;

 private:
  SystemPtr system_;
  VectorXd target_;
};

/// Derivatives of a cost with Gauss-Newton Hessians.
struct CostDerivatives {
  VectorXd Lx;
  VectorXd Lu;
  MatrixXd Lxx;
  MatrixXd Lxu;
  MatrixXd Luu;
};

/// Sum of weight/2 * sum_i a_i r_i^2 over its terms (a: optional per-residual
/// weights, default ones).
class CostModel {
 public:
  CostModel(Index ndx, Index nu) : ndx_(ndx), nu_(nu) {}

  void add(std::shared_ptr<const CostTerm> term, double weight, VectorXd activation = {});

  [[nodiscard]] Index ndx() const { return ndx_; }
  [[nodiscard]] Index nu() const { return nu_; }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }
  [[nodiscard]] bool empty() const { return terms_.empty(); }

  [[nodiscard]] double calc(const ConstVectorRef& x, const ConstVectorRef& u) const;
  /// Adds scale times the derivatives into out (which must be sized).
  void calc_diff(const ConstVectorRef& x, const ConstVectorRef& u, double scale,
                 CostDerivatives& out) const;

 private:
  struct Entry {
    std::shared_ptr<const CostTerm> term;
    double weight;
    VectorXd activation;
  };

  Index ndx_;
  Index nu_;
  std::vector<Entry> terms_;
};

}  // namespace fddp
