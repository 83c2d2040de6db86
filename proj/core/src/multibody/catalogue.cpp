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

#include <cmath>

#include "fddp/errors.hpp"
#include "fddp/manifold/so3.hpp"
#include "fddp/multibody/system.hpp"
#include "params.hpp"

namespace fddp {
namespace {

using detail::ParamReader;

class Pendulum final : public MechanicalSystem {
 public:
  Pendulum(double m, double l, double g, double d)
      : MechanicalSystem("pendulum", make_manifold(ManifoldSpec::vector(1)), 1),
        m_(m), l_(l), g_(g), d_(d) {}

  MatrixXd mass_matrix(const ConstVectorRef&) const override {
    return MatrixXd::Constant(1, 1, m_ * l_ * l_);
  }
  VectorXd bias(const ConstVectorRef& q, const ConstVectorRef& v) const override {
    return VectorXd::Constant(1, m_ * g_ * l_ * std::sin(q[0]) + d_ * v[0]);
  }
  MatrixXd actuation() const override { return MatrixXd::Identity(1, 1); }
  MatrixXd dmass_times(const ConstVectorRef&, const ConstVectorRef&) const override {
    return MatrixXd::Zero(1, 1);
  }
  std::pair<MatrixXd, MatrixXd> dbias(const ConstVectorRef& q,
                                      const ConstVectorRef&) const override {
    return {MatrixXd::Constant(1, 1, m_ * g_ * l_ * std::cos(q[0])),
            MatrixXd::Constant(1, 1, d_)};
  }

  std::vector<std::string> frames() const override { return {"tip"}; }
  Index frame_dim(const std::string& name) const override {
    if (name != "tip") unknown_frame(name);
    return 2;
  }
  VectorXd frame_position(const std::string& name, const ConstVectorRef& q) const override {
    if (name != "tip") unknown_frame(name);
    return Eigen::Vector2d(l_ * std::sin(q[0]), -l_ * std::cos(q[0]));
  }
  MatrixXd frame_jacobian(const std::string& name, const ConstVectorRef& q) const override {
    if (name != "tip") unknown_frame(name);
    return Eigen::Vector2d(l_ * std::cos(q[0]), l_ * std::sin(q[0]));
  }
  bool has_com() const override { return true; }
  VectorXd com(const ConstVectorRef& q) const override { return frame_position("tip", q); }
  MatrixXd com_jacobian(const ConstVectorRef& q) const override {
    return frame_jacobian("tip", q);
  }

 private:
  double m_, l_, g_, d_;
};

class DoublePendulum final : public MechanicalSystem {
 public:
  DoublePendulum(double m1, double m2, double l1, double l2, double g, bool underactuated)
      : MechanicalSystem("double_pendulum", make_manifold(ManifoldSpec::vector(2)),
                         underactuated ? 1 : 2),
        m1_(m1), m2_(m2), l1_(l1), l2_(l2), g_(g), underactuated_(underactuated) {}

  MatrixXd mass_matrix(const ConstVectorRef& q) const override {
    const double c2 = std::cos(q[1]);
    const double a = m2_ * l2_ * l2_;
    const double b = m2_ * l1_ * l2_ * c2;
    Eigen::Matrix2d m;
    m << (m1_ + m2_) * l1_ * l1_ + a + 2.0 * b, a + b,
         a + b, a;
    return m;
  }

  VectorXd bias(const ConstVectorRef& q, const ConstVectorRef& v) const override {
    const double h = m2_ * l1_ * l2_ * std::sin(q[1]);
    const double s1 = std::sin(q[0]);
    const double s12 = std::sin(q[0] + q[1]);
    Eigen::Vector2d b;
    b << -h * (2.0 * v[0] * v[1] + v[1] * v[1]) + (m1_ + m2_) * g_ * l1_ * s1 + m2_ * g_ * l2_ * s12,
         h * v[0] * v[0] + m2_ * g_ * l2_ * s12;
    return b;
  }

  MatrixXd actuation() const override {
    if (underactuated_) return Eigen::Vector2d(0.0, 1.0);
    return MatrixXd::Identity(2, 2);
  }

  MatrixXd dmass_times(const ConstVectorRef& q, const ConstVectorRef& a) const override {
    const double dh = -m2_ * l1_ * l2_ * std::sin(q[1]);
    MatrixXd out = MatrixXd::Zero(2, 2);
    out(0, 1) = dh * (2.0 * a[0] + a[1]);
    out(1, 1) = dh * a[0];
    return out;
  }

  std::pair<MatrixXd, MatrixXd> dbias(const ConstVectorRef& q,
                                      const ConstVectorRef& v) const override {
    const double h = m2_ * l1_ * l2_ * std::sin(q[1]);
    const double dh = m2_ * l1_ * l2_ * std::cos(q[1]);
    const double c1 = std::cos(q[0]);
    const double c12 = std::cos(q[0] + q[1]);
    const double gt = m2_ * g_ * l2_ * c12;
    Eigen::Matrix2d dq;
    dq << (m1_ + m2_) * g_ * l1_ * c1 + gt, -dh * (2.0 * v[0] * v[1] + v[1] * v[1]) + gt,
          gt, dh * v[0] * v[0] + gt;
    Eigen::Matrix2d dv;
    dv << -2.0 * h * v[1], -2.0 * h * (v[0] + v[1]),
          2.0 * h * v[0], 0.0;
    return {dq, dv};
  }

  std::vector<std::string> frames() const override { return {"elbow", "tip"}; }
  Index frame_dim(const std::string& name) const override {
    if (name != "elbow" && name != "tip") unknown_frame(name);
    return 2;
  }
  VectorXd frame_position(const std::string& name, const ConstVectorRef& q) const override {
    Eigen::Vector2d p(l1_ * std::sin(q[0]), -l1_ * std::cos(q[0]));
    if (name == "elbow") return p;
    if (name != "tip") unknown_frame(name);
    return p + Eigen::Vector2d(l2_ * std::sin(q[0] + q[1]), -l2_ * std::cos(q[0] + q[1]));
  }
  MatrixXd frame_jacobian(const std::string& name, const ConstVectorRef& q) const override {
    Eigen::Matrix2d j = Eigen::Matrix2d::Zero();
    j.col(0) << l1_ * std::cos(q[0]), l1_ * std::sin(q[0]);
    if (name == "elbow") return j;
    if (name != "tip") unknown_frame(name);
    const Eigen::Vector2d d(l2_ * std::cos(q[0] + q[1]), l2_ * std::sin(q[0] + q[1]));
    j.col(0) += d;
    j.col(1) = d;
    return j;
  }
  bool has_com() const override { return true; }
  VectorXd com(const ConstVectorRef& q) const override {
    return (m1_ * frame_position("elbow", q) + m2_ * frame_position("tip", q)) / (m1_ + m2_);
  }
  MatrixXd com_jacobian(const ConstVectorRef& q) const override {
    return (m1_ * frame_jacobian("elbow", q) + m2_ * frame_jacobian("tip", q)) / (m1_ + m2_);
  }

 private:
  double m1_, m2_, l1_, l2_, g_;
  bool underactuated_;
};

class DoubleIntegrator final : public MechanicalSystem {
 public:
  DoubleIntegrator(Index dim, double mass, double g)
      : MechanicalSystem("double_integrator", make_manifold(ManifoldSpec::vector(dim)), dim),
        mass_(mass), g_(g) {}

  MatrixXd mass_matrix(const ConstVectorRef&) const override {
    return mass_ * MatrixXd::Identity(nv(), nv());
  }
  VectorXd bias(const ConstVectorRef&, const ConstVectorRef&) const override {
    VectorXd b = VectorXd::Zero(nv());
    b[nv() - 1] = mass_ * g_;
    return b;
  }
  MatrixXd actuation() const override { return MatrixXd::Identity(nv(), nv()); }
  MatrixXd dmass_times(const ConstVectorRef&, const ConstVectorRef&) const override {
    return MatrixXd::Zero(nv(), nv());
  }
  std::pair<MatrixXd, MatrixXd> dbias(const ConstVectorRef&,
                                      const ConstVectorRef&) const override {
    return {MatrixXd::Zero(nv(), nv()), MatrixXd::Zero(nv(), nv())};
  }

  std::vector<std::string> frames() const override { return {"body"}; }
  Index frame_dim(const std::string& name) const override {
    if (name != "body") unknown_frame(name);
    return nv();
  }
  VectorXd frame_position(const std::string& name, const ConstVectorRef& q) const override {
    if (name != "body") unknown_frame(name);
    return q;
  }
  MatrixXd frame_jacobian(const std::string& name, const ConstVectorRef&) const override {
    if (name != "body") unknown_frame(name);
    return MatrixXd::Identity(nv(), nv());
  }
  VectorXd frame_drift(const std::string& name, const ConstVectorRef&,
                       const ConstVectorRef&) const override {
    if (name != "body") unknown_frame(name);
    return VectorXd::Zero(nv());
  }
  MatrixXd djacobian_transpose_times(const std::string&, const ConstVectorRef&,
                                     const ConstVectorRef&) const override {
    return MatrixXd::Zero(nv(), nv());
  }
  MatrixXd djacobian_times(const std::string&, const ConstVectorRef&,
                           const ConstVectorRef&) const override {
    return MatrixXd::Zero(nv(), nv());
  }
  std::pair<MatrixXd, MatrixXd> ddrift(const std::string&, const ConstVectorRef&,
                                       const ConstVectorRef&) const override {
    return {MatrixXd::Zero(nv(), nv()), MatrixXd::Zero(nv(), nv())};
  }
  bool has_com() const override { return true; }
  VectorXd com(const ConstVectorRef& q) const override { return q; }
  MatrixXd com_jacobian(const ConstVectorRef&) const override {
    return MatrixXd::Identity(nv(), nv());
  }

 private:
  double mass_, g_;
};

class PointMassHopper final : public MechanicalSystem {
 public:
  PointMassHopper(double mb, double mf, double g)
      : MechanicalSystem("point_mass_hopper", make_manifold(ManifoldSpec::vector(3)), 1),
        mb_(mb), mf_(mf), g_(g) {}

  MatrixXd mass_matrix(const ConstVectorRef&) const override {
    const double m = mb_ + mf_;
    Eigen::Matrix3d mm;
    mm << m, 0.0, 0.0,
          0.0, m, -mf_,
          0.0, -mf_, mf_;
    return mm;
  }
  VectorXd bias(const ConstVectorRef&, const ConstVectorRef&) const override {
    return Eigen::Vector3d(0.0, (mb_ + mf_) * g_, -mf_ * g_);
  }
  MatrixXd actuation() const override { return Eigen::Vector3d(0.0, 0.0, 1.0); }
  MatrixXd dmass_times(const ConstVectorRef&, const ConstVectorRef&) const override {
    return MatrixXd::Zero(3, 3);
  }
  std::pair<MatrixXd, MatrixXd> dbias(const ConstVectorRef&,
                                      const ConstVectorRef&) const override {
    return {MatrixXd::Zero(3, 3), MatrixXd::Zero(3, 3)};
  }

  std::vector<std::string> frames() const override { return {"base", "foot"}; }
  Index frame_dim(const std::string& name) const override {
    if (name != "base" && name != "foot") unknown_frame(name);
    return 2;
  }
  VectorXd frame_position(const std::string& name, const ConstVectorRef& q) const override {
    if (name == "base") return Eigen::Vector2d(q[0], q[1]);
    if (name != "foot") unknown_frame(name);
    return Eigen::Vector2d(q[0], q[1] - q[2]);
  }
  MatrixXd frame_jacobian(const std::string& name, const ConstVectorRef&) const override {
    Eigen::Matrix<double, 2, 3> j;
    j << 1.0, 0.0, 0.0,
         0.0, 1.0, 0.0;
    if (name == "foot") {
      j(1, 2) = -1.0;
    } else if (name != "base") {
      unknown_frame(name);
    }
    return j;
  }
  VectorXd frame_drift(const std::string& name, const ConstVectorRef&,
                       const ConstVectorRef&) const override {
    (void)frame_dim(name);
    return VectorXd::Zero(2);
  }
  MatrixXd djacobian_transpose_times(const std::string&, const ConstVectorRef&,
                                     const ConstVectorRef&) const override {
    return MatrixXd::Zero(3, 3);
  }
  MatrixXd djacobian_times(const std::string&, const ConstVectorRef&,
                           const ConstVectorRef&) const override {
    return MatrixXd::Zero(2, 3);
  }
  std::pair<MatrixXd, MatrixXd> ddrift(const std::string&, const ConstVectorRef&,
                                       const ConstVectorRef&) const override {
    return {MatrixXd::Zero(2, 3), MatrixXd::Zero(2, 3)};
  }
  bool has_com() const override { return true; }
  VectorXd com(const ConstVectorRef& q) const override {
    return (mb_ * frame_position("base", q) + mf_ * frame_position("foot", q)) / (mb_ + mf_);
  }
  MatrixXd com_jacobian(const ConstVectorRef& q) const override {
    return (mb_ * frame_jacobian("base", q) + mf_ * frame_jacobian("foot", q)) / (mb_ + mf_);
  }

 private:
  double mb_, mf_, g_;
};

class RigidBodyAttitude final : public MechanicalSystem {
 public:
  explicit RigidBodyAttitude(const Eigen::Vector3d& inertia)
      : MechanicalSystem("rigid_body_attitude", make_manifold(ManifoldSpec::rotation3d()), 3),
        inertia_(inertia.asDiagonal()) {}

  MatrixXd mass_matrix(const ConstVectorRef&) const override { return inertia_; }
  VectorXd bias(const ConstVectorRef&, const ConstVectorRef& v) const override {
    const Eigen::Vector3d w = v.head<3>();
    return w.cross(inertia_ * w);
  }
  MatrixXd actuation() const override { return MatrixXd::Identity(3, 3); }
  MatrixXd dmass_times(const ConstVectorRef&, const ConstVectorRef&) const override {
    return MatrixXd::Zero(3, 3);
  }
  std::pair<MatrixXd, MatrixXd> dbias(const ConstVectorRef&,
                                      const ConstVectorRef& v) const override {
    const Eigen::Vector3d w = v.head<3>();
    MatrixXd dv = so3::skew(w) * inertia_ - so3::skew(inertia_ * w);
    return {MatrixXd::Zero(3, 3), std::move(dv)};
  }

  std::vector<std::string> frames() const override { return {"tip"}; }
  Index frame_dim(const std::string& name) const override {
    if (name != "tip") unknown_frame(name);
    return 3;
  }
  VectorXd frame_position(const std::string& name, const ConstVectorRef& q) const override {
    if (name != "tip") unknown_frame(name);
    Eigen::Quaterniond r;
    r.coeffs() = q.head<4>();
    return r * Eigen::Vector3d::UnitX();
  }
  MatrixXd frame_jacobian(const std::string& name, const ConstVectorRef& q) const override {
    if (name != "tip") unknown_frame(name);
    Eigen::Quaterniond r;
    r.coeffs() = q.head<4>();
    // d(R exp(w) p) = -R [p]x dw
    return -r.toRotationMatrix() * so3::skew(Eigen::Vector3d::UnitX());
  }

 private:
  Eigen::Matrix3d inertia_;
};

}  // namespace

SystemPtr make_pendulum(const Params& p) {
  ParamReader r("pendulum", p, {"mass", "length", "gravity", "damping"});
  return std::make_shared<Pendulum>(r.positive("mass", 1.0), r.positive("length", 1.0),
                                    r.get("gravity", 9.81), r.nonnegative("damping", 0.0));
}

SystemPtr make_double_pendulum(const Params& p) {
  ParamReader r("double_pendulum", p, {"m1", "m2", "l1", "l2", "gravity", "underactuated"});
  return std::make_shared<DoublePendulum>(r.positive("m1", 1.0), r.positive("m2", 1.0),
                                          r.positive("l1", 1.0), r.positive("l2", 1.0),
                                          r.get("gravity", 9.81), r.get("underactuated", 0.0) != 0.0);
}

SystemPtr make_double_integrator(const Params& p) {
  ParamReader r("double_integrator", p, {"dim", "mass", "gravity"});
  const double dim = r.positive("dim", 1.0);
  if (dim != std::floor(dim)) throw ConfigError("parameter 'dim' must be an integer", "model.params.dim");
  return std::make_shared<DoubleIntegrator>(static_cast<Index>(dim), r.positive("mass", 1.0),
                                            r.get("gravity", 0.0));
}

SystemPtr make_point_mass_hopper(const Params& p) {
  ParamReader r("point_mass_hopper", p, {"body_mass", "foot_mass", "gravity"});
  return std::make_shared<PointMassHopper>(r.positive("body_mass", 1.0),
                                           r.positive("foot_mass", 0.1), r.get("gravity", 9.81));
}

SystemPtr make_rigid_body_attitude(const Params& p) {
  ParamReader r("rigid_body_attitude", p, {"ixx", "iyy", "izz"});
  return std::make_shared<RigidBodyAttitude>(
      Eigen::Vector3d(r.positive("ixx", 1.0), r.positive("iyy", 2.0), r.positive("izz", 3.0)));
}

SystemPtr make_system(const std::string& id, const Params& p) {
  if (id == "pendulum") return make_pendulum(p);
  if (id == "double_pendulum") return make_double_pendulum(p);
  if (id == "double_integrator") return make_double_integrator(p);
  if (id == "point_mass_hopper") return make_point_mass_hopper(p);
  if (id == "planar_monoped") return make_planar_monoped(p);
  if (id == "rigid_body_attitude") return make_rigid_body_attitude(p);
  throw ConfigError("unknown model id '" + id + "'", "model.id");
}

std::vector<std::string> system_ids() {
  return {"pendulum", "double_pendulum", "double_integrator", "point_mass_hopper",
          "planar_monoped", "rigid_body_attitude"};
}

}  // namespace fddp
