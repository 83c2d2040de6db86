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

#include <random>

#include <Eigen/LU>
#include <gtest/gtest.h>

#include "fddp/contact/contact.hpp"
#include "fddp/errors.hpp"
#include "test_util.hpp"

namespace fddp {
namespace {

using testing_util::random_matrix;
using testing_util::random_spd;

// Dense oracle for M vdot - J^T lambda = tau, J vdot = rhs.
Eigen::VectorXd dense_solve(const Eigen::MatrixXd& m, const Eigen::MatrixXd& j,
                            const Eigen::VectorXd& tau, const Eigen::VectorXd& rhs) {
  const Index nv = m.rows();
  const Index nf = j.rows();
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(nv + nf, nv + nf);
  k.topLeftCorner(nv, nv) = m;
  k.topRightCorner(nv, nf) = -j.transpose();
  k.bottomLeftCorner(nf, nv) = j;
  Eigen::VectorXd b(nv + nf);
  b << tau, rhs;
  return k.fullPivLu().solve(b);
}

TEST(Baumgarte, AtReferenceReturnsDrift) {
  Contact c{"foot", Eigen::Vector2d(0.3, 0.0)};
  const Eigen::Vector2d drift(0.5, -2.0);
  EXPECT_EQ(baumgarte_a0(c, c.reference, Eigen::Vector2d::Zero(), drift), drift);
}

TEST(Baumgarte, ZeroGainsReturnDrift) {
  Contact c{"foot", Eigen::Vector2d(0.3, 0.0), 0.0, 0.0};
  const Eigen::Vector2d drift(0.5, -2.0);
  EXPECT_EQ(baumgarte_a0(c, Eigen::Vector2d(1.0, 1.0), Eigen::Vector2d(3.0, 4.0), drift), drift);
}

TEST(Baumgarte, OneDimensionalArithmetic) {
  Contact c{"foot", Eigen::VectorXd::Constant(1, 0.01), 100.0, 20.0};
  const Eigen::VectorXd a0 = baumgarte_a0(c, Eigen::VectorXd::Zero(1),
                                          Eigen::VectorXd::Constant(1, 0.1), Eigen::VectorXd::Zero(1));
  EXPECT_NEAR(a0[0], -3.0, 1e-14);
}

TEST(Baumgarte, RejectsMismatchedSizes) {
  Contact c{"foot", Eigen::Vector2d::Zero()};
  EXPECT_THROW((void)baumgarte_a0(c, Eigen::Vector3d::Zero(), Eigen::Vector2d::Zero(),
                                  Eigen::Vector2d::Zero()),
               DimensionError);
}

TEST(ContactDynamics, ScalarSupportAgainstGravity) {
  const auto ws = contact_forward_dynamics(Eigen::MatrixXd::Ones(1, 1), Eigen::MatrixXd::Ones(1, 1),
                                           Eigen::VectorXd::Constant(1, -9.81), Eigen::VectorXd::Zero(1));
  EXPECT_NEAR(ws.vdot[0], 0.0, 1e-14);
  EXPECT_NEAR(ws.lambda[0], 9.81, 1e-14);
}

TEST(ContactDynamics, PlanarIdentityInertia) {
  Eigen::MatrixXd j(1, 2);
  j << 1.0, 0.0;
  const auto ws = contact_forward_dynamics(Eigen::MatrixXd::Identity(2, 2), j,
                                           Eigen::Vector2d(1.0, 1.0), Eigen::VectorXd::Zero(1));
  EXPECT_TRUE(ws.vdot.isApprox(Eigen::Vector2d(0.0, 1.0), 1e-14));
  EXPECT_NEAR(ws.lambda[0], -1.0, 1e-14);
  EXPECT_NEAR(ws.kkt.mhat()(0, 0), 1.0, 1e-14);
}

TEST(ContactDynamics, NoContactsIsUnconstrained) {
  std::mt19937 rng(3);
  const Eigen::MatrixXd m = random_spd(4, rng);
  const Eigen::VectorXd tau = random_matrix(4, 1, rng);
  const auto ws = contact_forward_dynamics(m, Eigen::MatrixXd(0, 4), tau, Eigen::VectorXd(0));
  EXPECT_TRUE(ws.vdot.isApprox(m.llt().solve(tau), 1e-12));
  EXPECT_EQ(ws.lambda.size(), 0);
}

TEST(ContactDynamics, MatchesDenseSolveWithSmallResidual) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Index nv = 2 + trial % 5;
    const Index nf = 1 + trial % nv;
    const Eigen::MatrixXd m = random_spd(nv, rng);
    const Eigen::MatrixXd j = random_matrix(nf, nv, rng);
    const Eigen::VectorXd tau = 5.0 * random_matrix(nv, 1, rng);
    const Eigen::VectorXd a0 = 5.0 * random_matrix(nf, 1, rng);
    const auto ws = contact_forward_dynamics(m, j, tau, a0);
    const Eigen::VectorXd ref = dense_solve(m, j, tau, -a0);
    EXPECT_TRUE(ws.vdot.isApprox(ref.head(nv), 1e-9));
    EXPECT_TRUE(ws.lambda.isApprox(ref.tail(nf), 1e-9));
    const double scale = 1.0 + m.norm() + j.norm() + tau.norm() + a0.norm();
    const double top = (m * ws.vdot - j.transpose() * ws.lambda - tau).lpNorm<Eigen::Infinity>();
    const double bottom = (j * ws.vdot + a0).lpNorm<Eigen::Infinity>();
    EXPECT_LE(std::max(top, bottom), 1e-9 * scale);
  }
}

TEST(ContactDynamics, RankDeficientJacobianThrows) {
  Eigen::MatrixXd j(2, 3);
  j << 1.0, 2.0, 0.0, 2.0, 4.0, 0.0;
  try {
    (void)contact_forward_dynamics(Eigen::MatrixXd::Identity(3, 3), j, Eigen::Vector3d::Zero(),
                                   Eigen::Vector2d::Zero());
    FAIL() << "expected RankDeficiency";
  } catch (const RankDeficiency& e) {
    EXPECT_LT(e.pivot(), KktFactorization::kRankTolerance);
  }
}

TEST(ContactDynamics, IndefiniteMassThrows) {
  const Eigen::MatrixXd m = Eigen::Vector2d(1.0, -1.0).asDiagonal();
  EXPECT_THROW((void)contact_forward_dynamics(m, Eigen::MatrixXd(0, 2), Eigen::Vector2d::Zero(),
                                              Eigen::VectorXd(0)),
               FactorizationError);
}

TEST(ContactDerivatives, ZeroPartialsGiveZeroBlocks) {
  std::mt19937 rng(5);
  const auto ws = contact_forward_dynamics(random_spd(3, rng), random_matrix(2, 3, rng),
                                           Eigen::Vector3d::Ones(), Eigen::Vector2d::Ones());
  const auto d = contact_dynamics_derivatives(ws, Eigen::MatrixXd::Zero(3, 6),
                                              Eigen::MatrixXd::Zero(3, 2),
                                              Eigen::MatrixXd::Zero(2, 6),
                                              Eigen::MatrixXd::Zero(2, 2));
  EXPECT_TRUE(d.vdot_x.isZero(0.0));
  EXPECT_TRUE(d.vdot_u.isZero(0.0));
  EXPECT_TRUE(d.lambda_x.isZero(0.0));
  EXPECT_TRUE(d.lambda_u.isZero(0.0));
}

TEST(ContactDerivatives, LinearTorqueMatchesDenseInverse) {
  // tau_b = u, so the residual partial is -I and the sensitivity is the
  // (vdot, lambda) block of the dense KKT inverse applied to [I; 0].
  std::mt19937 rng(7);
  const Index nv = 4;
  const Index nf = 2;
  const Eigen::MatrixXd m = random_spd(nv, rng);
  const Eigen::MatrixXd j = random_matrix(nf, nv, rng);
  const auto ws = contact_forward_dynamics(m, j, Eigen::VectorXd::Zero(nv), Eigen::VectorXd::Zero(nf));
  const auto d = contact_dynamics_derivatives(ws, Eigen::MatrixXd::Zero(nv, 0),
                                              -Eigen::MatrixXd::Identity(nv, nv),
                                              Eigen::MatrixXd::Zero(nf, 0),
                                              Eigen::MatrixXd::Zero(nf, nv));
  for (Index i = 0; i < nv; ++i) {
    const Eigen::VectorXd ref =
        dense_solve(m, j, Eigen::VectorXd::Unit(nv, i), Eigen::VectorXd::Zero(nf));
    EXPECT_TRUE(d.vdot_u.col(i).isApprox(ref.head(nv), 1e-10));
    EXPECT_TRUE(d.lambda_u.col(i).isApprox(ref.tail(nf), 1e-10));
  }
}

TEST(ImpulseDynamics, ScalarInelastic) {
  const auto ws = impulse_dynamics(Eigen::MatrixXd::Ones(1, 1), Eigen::MatrixXd::Ones(1, 1),
                                   Eigen::VectorXd::Constant(1, -1.0), 0.0);
  EXPECT_NEAR(ws.v_plus[0], 0.0, 1e-14);
  EXPECT_NEAR(ws.Lambda[0], 1.0, 1e-14);
}

TEST(ImpulseDynamics, ScalarElasticReversal) {
  const auto ws = impulse_dynamics(Eigen::MatrixXd::Ones(1, 1), Eigen::MatrixXd::Ones(1, 1),
                                   Eigen::VectorXd::Constant(1, -1.0), 1.0);
  EXPECT_NEAR(ws.v_plus[0], 1.0, 1e-14);
  EXPECT_NEAR(ws.Lambda[0], 2.0, 1e-14);
}

TEST(ImpulseDynamics, PlanarTangentialVelocityKept) {
  Eigen::MatrixXd j(1, 2);
  j << 1.0, 0.0;
  const auto ws = impulse_dynamics(Eigen::MatrixXd::Identity(2, 2), j, Eigen::Vector2d(-1.0, 3.0), 0.0);
  EXPECT_TRUE(ws.v_plus.isApprox(Eigen::Vector2d(0.0, 3.0), 1e-14));
  EXPECT_NEAR(ws.Lambda[0], 1.0, 1e-14);
}

TEST(ImpulseDynamics, RejectsRestitutionOutsideUnitInterval) {
  EXPECT_THROW((void)impulse_dynamics(Eigen::MatrixXd::Ones(1, 1), Eigen::MatrixXd::Ones(1, 1),
                                      Eigen::VectorXd::Ones(1), 1.5),
               DimensionError);
}

TEST(ImpulseDynamics, RandomDrawsSatisfyImpactLaw) {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Index nv = 1 + trial % 6;
    const Index nf = 1 + (trial / 6) % nv;
    const Eigen::MatrixXd m = random_spd(nv, rng);
    const Eigen::MatrixXd j = random_matrix(nf, nv, rng);
    const Eigen::VectorXd vm = 3.0 * random_matrix(nv, 1, rng);
    const double e = trial % 3 == 0 ? 0.0 : unit(rng);
    const auto ws = impulse_dynamics(m, j, vm, e);
    EXPECT_LE((j * ws.v_plus + e * j * vm).lpNorm<Eigen::Infinity>(), 1e-10);
    EXPECT_LE((m * (ws.v_plus - vm) - j.transpose() * ws.Lambda).lpNorm<Eigen::Infinity>(), 1e-10);
    if (e == 0.0) {
      EXPECT_LE(ws.v_plus.dot(m * ws.v_plus), vm.dot(m * vm) + 1e-12);
    }
  }
}

TEST(ImpulseDerivatives, InelasticVelocityJacobian) {
  Eigen::MatrixXd j(1, 2);
  j << 1.0, 0.0;
  const Eigen::MatrixXd m = Eigen::MatrixXd::Identity(2, 2);
  const auto ws = impulse_dynamics(m, j, Eigen::Vector2d(-1.0, 3.0), 0.0);
  // Residual partials with respect to v-: top -M, bottom e J.
  const auto d = impulse_dynamics_derivatives(ws, -m, 0.0 * j);
  EXPECT_TRUE(d.v_plus_x.isApprox(Eigen::Vector2d(0.0, 1.0).asDiagonal().toDenseMatrix(), 1e-14));
}

TEST(ImpulseDerivatives, InelasticConstraintVelocityIsInsensitive) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::MatrixXd m = random_spd(5, rng);
    const Eigen::MatrixXd j = random_matrix(2, 5, rng);
    const auto ws = impulse_dynamics(m, j, random_matrix(5, 1, rng), 0.0);
    const auto d = impulse_dynamics_derivatives(ws, -m, Eigen::MatrixXd::Zero(2, 5));
    EXPECT_LE((j * d.v_plus_x).lpNorm<Eigen::Infinity>(), 1e-12);
  }
}

TEST(ImpulseDerivatives, MatchFiniteDifferencesInVelocity) {
  std::mt19937 rng(19);
  const Eigen::MatrixXd m = random_spd(4, rng);
  const Eigen::MatrixXd j = random_matrix(2, 4, rng);
  const Eigen::VectorXd vm = random_matrix(4, 1, rng);
  const double e = 0.4;
  const auto ws = impulse_dynamics(m, j, vm, e);
  const auto d = impulse_dynamics_derivatives(ws, -m, e * j);
  const double h = 1e-6;
  for (Index i = 0; i < 4; ++i) {
    const Eigen::VectorXd dv = h * Eigen::VectorXd::Unit(4, i);
    const auto p = impulse_dynamics(m, j, vm + dv, e);
    const auto n = impulse_dynamics(m, j, vm - dv, e);
    EXPECT_TRUE(d.v_plus_x.col(i).isApprox((p.v_plus - n.v_plus) / (2 * h), 1e-6));
    EXPECT_TRUE(d.Lambda_x.col(i).isApprox((p.Lambda - n.Lambda) / (2 * h), 1e-6));
  }
}

}  // namespace
}  // namespace fddp
