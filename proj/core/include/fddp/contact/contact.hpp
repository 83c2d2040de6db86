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

#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "fddp/manifold/manifold.hpp"

namespace fddp {

/// One point contact: the frame is held at reference by Baumgarte feedback.
struct Contact {
  std::string frame;
  VectorXd reference;
  double alpha = 100.0;  // 1/s^2
  double beta = 20.0;    // 1/s
};

using ContactSet = std::vector<Contact>;

/// a0 = drift - alpha (reference - current) - beta velocity.
///
/// Point-contact placements are Euclidean, so the placement difference is a
/// subtraction.
[[nodiscard]] VectorXd baumgarte_a0(const Contact& contact, const ConstVectorRef& placement,
                                    const ConstVectorRef& velocity, const ConstVectorRef& drift);

/// Factorization of the contact KKT matrix [M J^T; J 0] through Cholesky
/// factors of M and of the operational-space inertia Mhat = J M^-1 J^T.
class KktFactorization {
 public:
  /// Pivot threshold on Mhat below which J is treated as rank deficient.
  static constexpr double kRankTolerance = 1e-10;

  KktFactorization() = default;

  /// Throws FactorizationError if M is not SPD and RankDeficiency if Mhat has
  /// a Cholesky pivot below kRankTolerance. An empty J is allowed.
  void compute(const MatrixXd& m, const MatrixXd& j);

  [[nodiscard]] Index nv() const { return nv_; }
  [[nodiscard]] Index nf() const { return nf_; }
  [[nodiscard]] const MatrixXd& mhat() const { return mhat_; }

  /// Solves [M J^T; J 0] [y; z] = [top; bottom] for any number of columns.
  void solve(const MatrixXd& top, const MatrixXd& bottom, MatrixXd& y, MatrixXd& z) const;

  [[nodiscard]] VectorXd solve_mass(const VectorXd& b) const { return m_llt_.solve(b); }

 private:
  Index nv_ = 0;
  Index nf_ = 0;
  Eigen::LLT<MatrixXd> m_llt_;
  MatrixXd minv_jt_;  // M^-1 J^T
  MatrixXd mhat_;
  Eigen::LLT<MatrixXd> mhat_llt_;
  MatrixXd j_;
};

/// Contact-constrained forward dynamics state.
///
/// The returned pair solves M vdot - J^T lambda = tau_b, J vdot = -a0.
struct ContactWorkspace {
  MatrixXd M;
  MatrixXd Jc;
  VectorXd tau_b;
  VectorXd a0;
  VectorXd vdot;
  VectorXd lambda;
  KktFactorization kkt;
};

void contact_forward_dynamics(ContactWorkspace& ws);

/// Convenience form used by tests and tools.
[[nodiscard]] ContactWorkspace contact_forward_dynamics(const MatrixXd& m, const MatrixXd& jc,
                                                        const VectorXd& tau_b, const VectorXd& a0);

struct ContactDerivatives {
  MatrixXd vdot_x;
  MatrixXd vdot_u;
  MatrixXd lambda_x;
  MatrixXd lambda_u;
};

/// Sensitivities of (vdot, lambda) given the partials of the residuals
/// M vdot - J^T lambda - tau_b (dtau_*) and J vdot + a0 (da0_*) at fixed vdot,
/// lambda. The forward solve must have run on ws.
[[nodiscard]] ContactDerivatives contact_dynamics_derivatives(const ContactWorkspace& ws,
                                                              const MatrixXd& dtau_dx,
                                                              const MatrixXd& dtau_du,
                                                              const MatrixXd& da0_dx,
                                                              const MatrixXd& da0_du);

/// Impact map: M v+ - J^T Lambda = M v-, J v+ = -e J v-.
struct ImpulseWorkspace {
  MatrixXd M;
  MatrixXd Jc;
  VectorXd v_minus;
  double restitution = 0.0;
  VectorXd v_plus;
  VectorXd Lambda;
  KktFactorization kkt;
};

void impulse_dynamics(ImpulseWorkspace& ws);

[[nodiscard]] ImpulseWorkspace impulse_dynamics(const MatrixXd& m, const MatrixXd& jc,
                                                const VectorXd& v_minus, double restitution);

struct ImpulseDerivatives {
  MatrixXd v_plus_x;
  MatrixXd Lambda_x;
};

/// Sensitivities of (v+, Lambda) given the partials of the residuals
/// M (v+ - v-) - J^T Lambda (dres_top) and J (v+ + e v-) (dres_bottom) at
/// fixed v+, Lambda.
[[nodiscard]] ImpulseDerivatives impulse_dynamics_derivatives(const ImpulseWorkspace& ws,
                                                              const MatrixXd& dres_top,
                                                              const MatrixXd& dres_bottom);

}  // namespace fddp
