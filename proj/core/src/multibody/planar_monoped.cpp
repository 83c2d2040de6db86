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

// Two-link leg hinged at the base of a planar floating body.
//
// q = (x, z, cos th, sin th, phi1, phi2), v = (xdot, zdot, thdot, phi1dot,
// phi2dot). Link directions are u(psi) = (sin psi, -cos psi) with psi1 = th +
// phi1 and psi2 = psi1 + phi2, so the zero posture points the leg straight
// down. The base is a rigid body at the hip; each link is a uniform rod.

#include <array>
#include <cmath>

#include "fddp/multibody/system.hpp"
#include "params.hpp"

namespace fddp {
namespace {

using detail::ParamReader;

struct Point {
  double a1;  // distance along the thigh
  double a2;  // distance along the shank
};

class PlanarMonoped final : public MechanicalSystem {
 public:
  PlanarMonoped(double mb, double ib, double m1, double m2, double l1, double l2, double g)
      : MechanicalSystem("planar_monoped",
                         make_manifold(ManifoldSpec::composite(
                             {ManifoldSpec::free_flyer_planar(), ManifoldSpec::vector(2)})),
                         2),
        mb_(mb), ib_(ib), m1_(m1), m2_(m2), l1_(l1), l2_(l2), g_(g) {}

  MatrixXd mass_matrix(const ConstVectorRef& q) const override {
    MatrixXd m = MatrixXd::Zero(5, 5);
    const std::array<Body, 3> bodies = this->bodies();
    for (const auto& b : bodies) {
      const MatrixXd jv = point_jacobian(q, b.point);
      const Eigen::Matrix<double, 1, 5> jw = angular_jacobian(b.chain);
      m.noalias() += b.mass * jv.transpose() * jv + b.inertia * jw.transpose() * jw;
    }
    return m;
  }

  VectorXd bias(const ConstVectorRef& q, const ConstVectorRef& v) const override {
    VectorXd b = VectorXd::Zero(5);
    for (const auto& body : bodies()) {
      const MatrixXd jv = point_jacobian(q, body.point);
      const Eigen::Vector2d acc = point_drift(q, v, body.point) + Eigen::Vector2d(0.0, g_);
      b.noalias() += body.mass * jv.transpose() * acc;
    }
    return b;
  }

  MatrixXd actuation() const override {
    MatrixXd s = MatrixXd::Zero(5, 2);
    s(3, 0) = 1.0;
    s(4, 1) = 1.0;
    return s;
  }

  std::vector<std::string> frames() const override { return {"base", "knee", "foot"}; }
  Index frame_dim(const std::string& name) const override {
    (void)frame_point(name);
    return 2;
  }
  VectorXd frame_position(const std::string& name, const ConstVectorRef& q) const override {
    return point_position(q, frame_point(name));
  }
  MatrixXd frame_jacobian(const std::string& name, const ConstVectorRef& q) const override {
    return point_jacobian(q, frame_point(name));
  }
  VectorXd frame_drift(const std::string& name, const ConstVectorRef& q,
                       const ConstVectorRef& v) const override {
    return point_drift(q, v, frame_point(name));
  }

  bool has_com() const override { return true; }
  VectorXd com(const ConstVectorRef& q) const override {
    Eigen::Vector2d c = Eigen::Vector2d::Zero();
    double total = 0.0;
    for (const auto& b : bodies()) {
      c += b.mass * point_position(q, b.point);
      total += b.mass;
    }
    return c / total;
  }
  MatrixXd com_jacobian(const ConstVectorRef& q) const override {
    MatrixXd j = MatrixXd::Zero(2, 5);
    double total = 0.0;
    for (const auto& b : bodies()) {
      j += b.mass * point_jacobian(q, b.point);
      total += b.mass;
    }
    return j / total;
  }

 private:
  struct Body {
    double mass;
    double inertia;
    Point point;
    int chain;  // number of leg joints between the base and this body
  };

  std::array<Body, 3> bodies() const {
    return {Body{mb_, ib_, {0.0, 0.0}, 0},
            Body{m1_, m1_ * l1_ * l1_ / 12.0, {0.5 * l1_, 0.0}, 1},
            Body{m2_, m2_ * l2_ * l2_ / 12.0, {l1_, 0.5 * l2_}, 2}};
  }

  Point frame_point(const std::string& name) const {
    if (name == "base") return {0.0, 0.0};
    if (name == "knee") return {l1_, 0.0};
    if (name == "foot") return {l1_, l2_};
    unknown_frame(name);
  }

  static std::pair<double, double> angles(const ConstVectorRef& q) {
    const double th = std::atan2(q[3], q[2]);
    return {th + q[4], th + q[4] + q[5]};
  }

  static Eigen::Matrix<double, 1, 5> angular_jacobian(int chain) {
    Eigen::Matrix<double, 1, 5> j = Eigen::Matrix<double, 1, 5>::Zero();
    j(2) = 1.0;
    for (int i = 0; i < chain; ++i) j(3 + i) = 1.0;
    return j;
  }

  static Eigen::Vector2d point_position(const ConstVectorRef& q, const Point& p) {
    const auto [psi1, psi2] = angles(q);
    return Eigen::Vector2d(q[0], q[1]) + p.a1 * Eigen::Vector2d(std::sin(psi1), -std::cos(psi1)) +
           p.a2 * Eigen::Vector2d(std::sin(psi2), -std::cos(psi2));
  }

  static MatrixXd point_jacobian(const ConstVectorRef& q, const Point& p) {
    const auto [psi1, psi2] = angles(q);
    const Eigen::Vector2d d1 = p.a1 * Eigen::Vector2d(std::cos(psi1), std::sin(psi1));
    const Eigen::Vector2d d2 = p.a2 * Eigen::Vector2d(std::cos(psi2), std::sin(psi2));
    MatrixXd j = MatrixXd::Zero(2, 5);
    j(0, 0) = 1.0;
    j(1, 1) = 1.0;
    j.col(2) = d1 + d2;
    j.col(3) = d1 + d2;
    j.col(4) = d2;
    return j;
  }

  static Eigen::Vector2d point_drift(const ConstVectorRef& q, const ConstVectorRef& v,
                                     const Point& p) {
    const auto [psi1, psi2] = angles(q);
    const double w1 = v[2] + v[3];
    const double w2 = w1 + v[4];
    return p.a1 * w1 * w1 * Eigen::Vector2d(-std::sin(psi1), std::cos(psi1)) +
           p.a2 * w2 * w2 * Eigen::Vector2d(-std::sin(psi2), std::cos(psi2));
  }

  double mb_, ib_, m1_, m2_, l1_, l2_, g_;
};

}  // namespace

SystemPtr make_planar_monoped(const Params& p) {
  ParamReader r("planar_monoped", p,
                {"base_mass", "base_inertia", "thigh_mass", "shank_mass", "thigh_length",
                 "shank_length", "gravity"});
  return std::make_shared<PlanarMonoped>(
      r.positive("base_mass", 3.0), r.positive("base_inertia", 0.05), r.positive("thigh_mass", 0.5),
      r.positive("shank_mass", 0.3), r.positive("thigh_length", 0.3),
      r.positive("shank_length", 0.3), r.get("gravity", 9.81));
}

}  // namespace fddp
