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

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "fddp/manifold/manifold.hpp"

namespace fddp {

/// Lagrangian mechanical system M(q) vdot + b(q, v) = S u (+ contact forces).
///
/// Configuration q lives on config_manifold(); velocities and every Jacobian
/// column indexed by q use its tangent coordinates (right perturbations), so
/// nv == config_manifold()->ndx(). Partial derivatives not overridden by a
/// concrete system fall back to central finite differences (step 1e-6) with
/// configuration perturbations applied through integrate.
class MechanicalSystem {
 public:
  MechanicalSystem(std::string id, ManifoldPtr config, Index nu);
  virtual ~MechanicalSystem() = default;

  [[nodiscard]] const std::string& id() const { return id_; }
  [[nodiscard]] const ManifoldPtr& config_manifold() const { return config_; }
  [[nodiscard]] Index nq() const { return config_->nx(); }
  [[nodiscard]] Index nv() const { return config_->ndx(); }
  [[nodiscard]] Index nu() const { return nu_; }

  /// State manifold (q, v): vector(nq + nv) for Euclidean configurations,
  /// composite(config, vector(nv)) otherwise.
  [[nodiscard]] const ManifoldPtr& state_manifold() const { return state_; }

  [[nodiscard]] virtual MatrixXd mass_matrix(const ConstVectorRef& q) const = 0;
  /// Coriolis, centrifugal, gravity and damping terms.
  [[nodiscard]] virtual VectorXd bias(const ConstVectorRef& q, const ConstVectorRef& v) const = 0;
  /// Actuation matrix S (nv x nu), configuration independent.
  [[nodiscard]] virtual MatrixXd actuation() const = 0;

  /// d(M(q) a)/dq for fixed a.
  [[nodiscard]] virtual MatrixXd dmass_times(const ConstVectorRef& q, const ConstVectorRef& a) const;
  /// db/dq (first) and db/dv (second).
  [[nodiscard]] virtual std::pair<MatrixXd, MatrixXd> dbias(const ConstVectorRef& q,
                                                            const ConstVectorRef& v) const;

  // Frames. Placements of the planar and point systems are positions.
  [[nodiscard]] virtual std::vector<std::string> frames() const { return {}; }
  [[nodiscard]] bool has_frame(const std::string& name) const;
  [[nodiscard]] virtual Index frame_dim(const std::string& name) const;
  [[nodiscard]] virtual VectorXd frame_position(const std::string& name,
                                                const ConstVectorRef& q) const;
  [[nodiscard]] virtual MatrixXd frame_jacobian(const std::string& name,
                                                const ConstVectorRef& q) const;
  /// Jdot(q, v) v.
  [[nodiscard]] virtual VectorXd frame_drift(const std::string& name, const ConstVectorRef& q,
                                             const ConstVectorRef& v) const;
  /// d(J(q)^T f)/dq for fixed f.
  [[nodiscard]] virtual MatrixXd djacobian_transpose_times(const std::string& name,
                                                           const ConstVectorRef& q,
                                                           const ConstVectorRef& f) const;
  /// d(J(q) w)/dq for fixed w.
  [[nodiscard]] virtual MatrixXd djacobian_times(const std::string& name, const ConstVectorRef& q,
                                                 const ConstVectorRef& w) const;
  /// d(frame_drift)/dq and d(frame_drift)/dv.
  [[nodiscard]] virtual std::pair<MatrixXd, MatrixXd> ddrift(const std::string& name,
                                                             const ConstVectorRef& q,
                                                             const ConstVectorRef& v) const;

  [[nodiscard]] virtual bool has_com() const { return false; }
  [[nodiscard]] virtual VectorXd com(const ConstVectorRef& q) const;
  [[nodiscard]] virtual MatrixXd com_jacobian(const ConstVectorRef& q) const;

  /// Unconstrained forward dynamics M^-1 (S u - b).
  [[nodiscard]] VectorXd free_acceleration(const ConstVectorRef& q, const ConstVectorRef& v,
                                           const ConstVectorRef& u) const;

 protected:
  [[noreturn]] void unknown_frame(const std::string& name) const;

  /// Central differences of f over tangent perturbations of q.
  [[nodiscard]] MatrixXd config_fd(const ConstVectorRef& q,
                                   const std::function<VectorXd(const VectorXd&)>& f) const;

 private:
  std::string id_;
  ManifoldPtr config_;
  ManifoldPtr state_;
  Index nu_;
};

using SystemPtr = std::shared_ptr<const MechanicalSystem>;

/// Model parameters keyed by name; missing keys fall back to documented defaults.
using Params = std::map<std::string, double>;

/// Planar pendulum, q = 0 hanging down. Params: mass (1), length (1),
/// gravity (9.81), damping (0). Frame "tip".
[[nodiscard]] SystemPtr make_pendulum(const Params& p);

/// Planar double pendulum with point masses at the link ends. Params: m1, m2
/// (1), l1, l2 (1), gravity (9.81), underactuated (0: both joints actuated, 1:
/// second joint only). Frames "elbow", "tip".
[[nodiscard]] SystemPtr make_double_pendulum(const Params& p);

/// Point mass in R^dim with direct force actuation and gravity along the last
/// axis. Params: dim (1), mass (1), gravity (0). Frame "body".
[[nodiscard]] SystemPtr make_double_integrator(const Params& p);

/// Vertical-plane hopper: body (x, z) with a prismatic massive foot, q = (x, z,
/// leg length). Params: body_mass (1), foot_mass (0.1), gravity (9.81). Frames
/// "base", "foot".
[[nodiscard]] SystemPtr make_point_mass_hopper(const Params& p);

/// Two-link leg with uniform rod links on a planar floating base. Params:
/// base_mass (3), base_inertia (0.05), thigh_mass (0.5), shank_mass (0.3),
/// thigh_length (0.3), shank_length (0.3), gravity (9.81). Frames "base",
/// "knee", "foot".
[[nodiscard]] SystemPtr make_planar_monoped(const Params& p);

/// Free rigid body orientation, q in SO(3), v the body angular velocity.
/// Params: ixx, iyy, izz (1, 2, 3). Torque actuated. Frame "tip" at body
/// point (1, 0, 0).
[[nodiscard]] SystemPtr make_rigid_body_attitude(const Params& p);

/// Catalogue lookup by identifier; throws ConfigError on unknown ids. The
/// identifier "lqr" is not a mechanical system and is handled by the action
/// layer.
[[nodiscard]] SystemPtr make_system(const std::string& id, const Params& p);

[[nodiscard]] std::vector<std::string> system_ids();

}  // namespace fddp
