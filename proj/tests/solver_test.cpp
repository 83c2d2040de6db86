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
#include <random>

#include <Eigen/LU>
#include <gtest/gtest.h>

#include "fddp/action/differential.hpp"
#include "fddp/errors.hpp"
#include "fddp/solver/solver.hpp"
#include "test_util.hpp"

namespace fddp {
namespace {

using testing_util::random_matrix;

// x+ = x + u, cost = (q x^2 + r u^2) / 2 on every running node and
// qf x^2 / 2 at the end. r may be negative to exercise the failure path.
class ScalarModel final : public ActionModel {
 public:
  ScalarModel(double q, double r)
      : ActionModel(make_manifold(ManifoldSpec::vector(1)), 1), q_(q), r_(r) {}

  void calc(ActionData& d, const ConstVectorRef& x, const ConstVectorRef& u) const override {
    d.xnext = x + u;
    d.cost = 0.5 * (q_ * x[0] * x[0] + r_ * u[0] * u[0]);
  }
  void calc_diff(ActionData& d, const ConstVectorRef& x, const ConstVectorRef& u) const override {
    d.Fx.setOnes();
    d.Fu.setOnes();
    d.Lx << q_ * x[0];
    d.Lu << r_ * u[0];
    d.Lxx << q_;
    d.Lxu.setZero();
    d.Luu << r_;
  }
  std::string describe() const override { return "scalar"; }

 private:
  double q_, r_;
};

std::shared_ptr<ShootingProblem> scalar_problem(double x0, double q, double r, double qf,
                                                std::size_t n = 1) {
  auto state = make_manifold(ManifoldSpec::vector(1));
  CostModel terminal(1, 0);
  terminal.add(std::make_shared<StateRegularization>(state, VectorXd::Zero(1)), qf);
  return std::make_shared<ShootingProblem>(
      VectorXd::Constant(1, x0),
      std::vector<ActionModelPtr>(n, std::make_shared<ScalarModel>(q, r)),
      std::make_shared<TerminalActionModel>(state, std::move(terminal)));
}

// Spring-coupled two-mass chain with force inputs.
std::shared_ptr<ShootingProblem> lqr_chain(std::size_t n, double dt = 0.1) {
  MatrixXd a = MatrixXd::Zero(4, 4);
  a.topRightCorner(2, 2).setIdentity();
  a.bottomLeftCorner(2, 2) << -2.0, 1.0, 1.0, -1.0;
  MatrixXd b = MatrixXd::Zero(4, 2);
  b.bottomRows(2).setIdentity();
  auto state = make_manifold(ManifoldSpec::vector(4));
  CostModel running(4, 2);
  running.add(std::make_shared<StateRegularization>(state, VectorXd::Zero(4)), 1.0);
  running.add(std::make_shared<ControlRegularization>(VectorXd::Zero(2)), 0.1);
  CostModel terminal(4, 0);
  terminal.add(std::make_shared<StateRegularization>(state, VectorXd::Zero(4)), 10.0);
  std::vector<ActionModelPtr> models(
      n, std::make_shared<LqrActionModel>(a, b, VectorXd::Zero(4), dt, running));
  return std::make_shared<ShootingProblem>(Eigen::Vector4d(1.0, -0.5, 0.0, 0.0), models,
                                           std::make_shared<TerminalActionModel>(state, terminal));
}

std::shared_ptr<ShootingProblem> pendulum_problem(std::size_t n) {
  const auto system = make_pendulum({});
  const auto& state = system->state_manifold();
  CostModel running(2, 1);
  running.add(std::make_shared<StateRegularization>(state, Eigen::Vector2d(M_PI, 0.0)), 1.0);
  running.add(std::make_shared<ControlRegularization>(VectorXd::Zero(1)), 0.01);
  CostModel terminal(2, 0);
  terminal.add(std::make_shared<StateRegularization>(state, Eigen::Vector2d(M_PI, 0.0)), 100.0);
  auto diff = std::make_shared<const DifferentialActionModel>(system, ContactSet{}, running);
  std::vector<ActionModelPtr> models(n, std::make_shared<IntegratedActionModel>(diff, 0.02));
  return std::make_shared<ShootingProblem>(Eigen::Vector2d::Zero(), models,
                                           std::make_shared<TerminalActionModel>(state, terminal));
}

struct Iterate {
  Trajectory xs;
  Trajectory us;
};

Iterate random_iterate(const ShootingProblem& p, std::mt19937& rng, double scale = 1.0) {
  Iterate it;
  for (std::size_t k = 0; k <= p.horizon(); ++k) {
    it.xs.push_back(p.state()->integrate(p.x0(), scale * random_matrix(p.state()->ndx(), 1, rng)));
  }
  for (std::size_t k = 0; k < p.horizon(); ++k) {
    it.us.push_back(scale * random_matrix(p.running(k).nu(), 1, rng));
  }
  return it;
}

// Linearizes the problem at an iterate and runs one backward pass.
struct Linearization {
  explicit Linearization(const ShootingProblem& p) : data(p), trial(p), ws(p) {}
  ProblemData data;
  ProblemData trial;
  SolverWorkspace ws;
  Trajectory gaps;
};

std::unique_ptr<Linearization> linearize(const ShootingProblem& p, const Iterate& it,
                                         double mu = 0.0) {
  auto lin = std::make_unique<Linearization>(p);
  (void)problem_calc(p, lin->data, it.xs, it.us);
  problem_calc_diff(p, lin->data, it.xs, it.us);
  lin->gaps = problem_gaps(p, lin->data, it.xs);
  backward_pass(p, lin->data, lin->gaps, mu, lin->ws);
  return lin;
}

TEST(BackwardPass, OneNodeMatchesClosedFormRiccati) {
  const double q = 2.0, r = 0.5, qf = 3.0, x0 = 1.5;
  auto p = scalar_problem(x0, q, r, qf);
  const Iterate it{{VectorXd::Constant(1, x0), VectorXd::Constant(1, x0)}, {VectorXd::Zero(1)}};
  auto lin = linearize(*p, it);
  // Q_uu = r + qf, Q_ux = qf, K = -qf / (r + qf), V_xx = q + qf - qf^2 / (r + qf).
  const double quu = r + qf;
  EXPECT_NEAR(lin->ws.K[0](0, 0), -qf / quu, 1e-15);
  EXPECT_NEAR(lin->ws.Vxx[0](0, 0), q + qf - qf * qf / quu, 1e-14);
  // k = -Q_u / Q_uu with Q_u = qf x0 at u = 0.
  EXPECT_NEAR(lin->ws.k[0][0], -qf * x0 / quu, 1e-14);
}

TEST(BackwardPass, ZeroGapsLeaveValueJacobianUndeflected) {
  auto p = lqr_chain(5);
  Trajectory us(5, VectorXd::Constant(2, 0.3));
  const Iterate it{problem_simulate(*p, us), us};
  auto lin = linearize(*p, it);
  for (const auto& g : lin->gaps) EXPECT_TRUE(g.isZero(0.0));
  const auto& d = lin->data.node(4);
  EXPECT_TRUE(lin->ws.Qu[4].isApprox(d.Lu + d.Fu.transpose() * lin->ws.Vx[5], 1e-14));
}

TEST(BackwardPass, IndefiniteControlHessianThrowsAtNode) {
  auto p = scalar_problem(1.0, 1.0, -2.0, 1.0, 3);
  const Iterate it{Trajectory(4, VectorXd::Ones(1)), Trajectory(3, VectorXd::Zero(1))};
  ProblemData data(*p);
  (void)problem_calc(*p, data, it.xs, it.us);
  problem_calc_diff(*p, data, it.xs, it.us);
  SolverWorkspace ws(*p);
  try {
    backward_pass(*p, data, problem_gaps(*p, data, it.xs), 0.0, ws);
    FAIL() << "expected NotPositiveDefinite";
  } catch (const NotPositiveDefinite& e) {
    EXPECT_EQ(e.node(), 2u);
  }
}

TEST(Goldstein, AcceptsSufficientDescent) { EXPECT_TRUE(goldstein_accept(0.8, 1.0, -1.0)); }

TEST(Goldstein, AcceptsBoundedAscentWhenAscentExpected) {
  EXPECT_TRUE(goldstein_accept(2.5, 1.0, 1.0));
}

TEST(Goldstein, RejectsInsufficientDescent) { EXPECT_FALSE(goldstein_accept(0.95, 1.0, -1.0)); }

TEST(ExpectedImprovement, ZeroGapsReduceToFeedForwardTerms) {
  auto p = pendulum_problem(20);
  Trajectory us(20, VectorXd::Constant(1, 0.5));
  const Iterate it{problem_simulate(*p, us), us};
  auto lin = linearize(*p, it);
  const auto e = expected_improvement(*p, lin->data, lin->gaps, lin->ws);
  double d1 = 0.0, d2 = 0.0;
  for (std::size_t k = 0; k < 20; ++k) {
    d1 += lin->ws.k[k].dot(lin->ws.Qu[k]);
    d2 += lin->ws.k[k].dot(lin->ws.Quu[k] * lin->ws.k[k]);
  }
  EXPECT_NEAR(e.d1, d1, 1e-12 * (1.0 + std::abs(d1)));
  EXPECT_NEAR(e.d2, d2, 1e-12 * (1.0 + std::abs(d2)));
}

TEST(ExpectedImprovement, NoDirectionNoChange) {
  auto p = lqr_chain(4);
  Trajectory us(4, VectorXd::Zero(2));
  const Iterate it{problem_simulate(*p, us), us};
  auto lin = linearize(*p, it);
  for (auto& k : lin->ws.k) k.setZero();
  const auto e = expected_improvement(*p, lin->data, lin->gaps, lin->ws);
  EXPECT_EQ(e.at(0.3), 0.0);
  EXPECT_EQ(e.at(1.0), 0.0);
}

TEST(ExpectedImprovement, EqualsLocalQuadraticModelAlongFullStep) {
  // With gaps open, Delta_1 and Delta_2 are the gradient and curvature of the
  // local quadratic cost model along the full-step linearized direction.
  auto p = pendulum_problem(15);
  std::mt19937 rng(21);
  const Iterate it = random_iterate(*p, rng);
  auto lin = linearize(*p, it);
  const auto& ws = lin->ws;
  VectorXd dx = lin->gaps[0];
  double g = 0.0, h = 0.0;
  for (std::size_t k = 0; k <= p->horizon(); ++k) {
    const auto& d = lin->data.node(k);
    g += d.Lx.dot(dx);
    h += dx.dot(d.Lxx * dx);
    if (k == p->horizon()) break;
    const VectorXd du = ws.k[k] + ws.K[k] * dx;
    g += d.Lu.dot(du);
    h += 2.0 * dx.dot(d.Lxu * du) + du.dot(d.Luu * du);
    dx = d.Fx * dx + d.Fu * du + lin->gaps[k + 1];
  }
  const auto e = expected_improvement(*p, lin->data, lin->gaps, ws);
  EXPECT_NEAR(e.d1, g, 1e-9 * (1.0 + std::abs(g)));
  EXPECT_NEAR(e.d2, h, 1e-9 * (1.0 + std::abs(h)));
}

TEST(ExpectedImprovement, ExactOnLqrWithZeroGaps) {
  auto p = lqr_chain(20);
  std::mt19937 rng(22);
  Trajectory us;
  for (int k = 0; k < 20; ++k) us.push_back(random_matrix(2, 1, rng));
  const Iterate it{problem_simulate(*p, us), us};
  auto lin = linearize(*p, it);
  const double cost = problem_rollout(*p, it.xs, it.us).cost;
  const auto e = expected_improvement(*p, lin->data, lin->gaps, lin->ws);
  for (double alpha = 1.0; alpha > 1e-3; alpha *= 0.5) {
    const auto trial = forward_pass_fddp(*p, it.xs, it.us, lin->gaps, lin->ws, alpha, lin->trial);
    EXPECT_NEAR(trial.cost - cost, e.at(alpha), 1e-9) << alpha;
  }
}

TEST(ForwardPass, FullStepClosesEveryGapAndMatchesDdp) {
  auto p = pendulum_problem(25);
  std::mt19937 rng(23);
  const Iterate it = random_iterate(*p, rng, 0.5);
  auto lin = linearize(*p, it, 1e-6);
  const auto fddp = forward_pass_fddp(*p, it.xs, it.us, lin->gaps, lin->ws, 1.0, lin->trial);
  for (const auto& g : problem_rollout(*p, fddp.xs, fddp.us).gaps) {
    EXPECT_LE(g.lpNorm<Eigen::Infinity>(), 1e-12);
  }
  ProblemData other(*p);
  const auto ddp = forward_pass_ddp(*p, it.xs, it.us, lin->ws, 1.0, other);
  for (std::size_t k = 0; k < 25; ++k) {
    EXPECT_EQ(fddp.us[k], ddp.us[k]);
    EXPECT_EQ(fddp.xs[k + 1], ddp.xs[k + 1]);
  }
}

TEST(ForwardPass, PartialStepContractsGaps) {
  auto p = pendulum_problem(25);
  std::mt19937 rng(24);
  const Iterate it = random_iterate(*p, rng, 0.5);
  auto lin = linearize(*p, it, 1e-6);
  for (double alpha : {0.5, 0.25, 0.125}) {
    const auto trial = forward_pass_fddp(*p, it.xs, it.us, lin->gaps, lin->ws, alpha, lin->trial);
    const Trajectory gaps = problem_gaps(*p, lin->trial, trial.xs);
    for (std::size_t k = 0; k < gaps.size(); ++k) {
      EXPECT_LE((gaps[k] - (1.0 - alpha) * lin->gaps[k]).lpNorm<Eigen::Infinity>(), 1e-10)
          << "node " << k << " alpha " << alpha;
    }
  }
}

TEST(ForwardPass, ZeroStepWithoutFeedForwardIsIdentity) {
  auto p = pendulum_problem(10);
  std::mt19937 rng(25);
  const Iterate it = random_iterate(*p, rng, 0.5);
  auto lin = linearize(*p, it, 1e-6);
  for (auto& k : lin->ws.k) k.setZero();
  const auto trial = forward_pass_fddp(*p, it.xs, it.us, lin->gaps, lin->ws, 0.0, lin->trial);
  for (std::size_t k = 0; k < 10; ++k) EXPECT_LE((trial.us[k] - it.us[k]).lpNorm<Eigen::Infinity>(), 1e-10);
  const Trajectory gaps = problem_gaps(*p, lin->trial, trial.xs);
  for (std::size_t k = 0; k <= 10; ++k) {
    EXPECT_LE((trial.xs[k] - it.xs[k]).lpNorm<Eigen::Infinity>(), 1e-12);
    EXPECT_LE((gaps[k] - lin->gaps[k]).lpNorm<Eigen::Infinity>(), 1e-12);
  }
}

TEST(KktDirection, MatchesFullFddpStepOnLqr) {
  auto p = lqr_chain(20);
  std::mt19937 rng(26);
  for (int trial = 0; trial < 5; ++trial) {
    const Iterate it = random_iterate(*p, rng);
    auto lin = linearize(*p, it);
    const auto step = forward_pass_fddp(*p, it.xs, it.us, lin->gaps, lin->ws, 1.0, lin->trial);
    const auto dir = kkt_search_direction(*p, it.xs, it.us);
    for (std::size_t k = 0; k <= 20; ++k) {
      EXPECT_LE((step.xs[k] - it.xs[k] - dir.dxs[k]).lpNorm<Eigen::Infinity>(), 1e-8);
    }
    for (std::size_t k = 0; k < 20; ++k) {
      EXPECT_LE((step.us[k] - it.us[k] - dir.dus[k]).lpNorm<Eigen::Infinity>(), 1e-8);
    }
  }
}

TEST(KktDirection, FeasibleIterateSatisfiesHomogeneousDynamics) {
  auto p = pendulum_problem(10);
  Trajectory us(10, VectorXd::Constant(1, 0.2));
  const Trajectory xs = problem_simulate(*p, us);
  ProblemData data(*p);
  (void)problem_calc(*p, data, xs, us);
  problem_calc_diff(*p, data, xs, us);
  const auto dir = kkt_search_direction(*p, data, problem_gaps(*p, data, xs));
  EXPECT_LE(dir.dxs[0].lpNorm<Eigen::Infinity>(), 1e-10);
  for (std::size_t k = 0; k < 10; ++k) {
    const auto& d = data.node(k);
    EXPECT_LE((dir.dxs[k + 1] - d.Fx * dir.dxs[k] - d.Fu * dir.dus[k]).lpNorm<Eigen::Infinity>(),
              1e-10);
  }
}

TEST(KktDirection, ScalarOneNodeHandSolution) {
  // Unknowns (dx0, dx1, du0, y0, y1) for q = 2, r = 1, qf = 4 at x = (1, 3),
  // u = 0, x0 = 2: gaps f0 = 1, f1 = 1 + 0 - 3 = -2.
  auto p = scalar_problem(2.0, 2.0, 1.0, 4.0);
  const Trajectory xs{VectorXd::Constant(1, 1.0), VectorXd::Constant(1, 3.0)};
  const Trajectory us{VectorXd::Zero(1)};
  const auto dir = kkt_search_direction(*p, xs, us);
  // dx0 = 1 fixed; minimize q(x+dx0)^2/2 + r du^2/2 + qf(x1+dx1)^2/2 with
  // dx1 = dx0 + du - 2: du = -qf (x1 + dx0 - 2) / (r + qf) = -8/5.
  EXPECT_NEAR(dir.dxs[0][0], 1.0, 1e-12);
  EXPECT_NEAR(dir.dus[0][0], -1.6, 1e-12);
  EXPECT_NEAR(dir.dxs[1][0], 1.0 - 1.6 - 2.0, 1e-12);
}

TEST(Solve, LqrConvergesToDenseOptimumInTwoIterations) {
  auto p = lqr_chain(20);
  std::mt19937 rng(27);
  const Iterate it = random_iterate(*p, rng);
  SolverOptions options;
  const auto result = solve(*p, it.xs, it.us, options);
  ASSERT_EQ(result.report.termination, Termination::kConverged);
  EXPECT_LE(result.report.iteration_count(), 2);
  const auto dir = kkt_search_direction(*p, it.xs, it.us);
  Trajectory xs = it.xs, us = it.us;
  for (std::size_t k = 0; k <= 20; ++k) xs[k] += dir.dxs[k];
  for (std::size_t k = 0; k < 20; ++k) us[k] += dir.dus[k];
  EXPECT_NEAR(result.cost, problem_rollout(*p, xs, us).cost, 1e-8);
}

TEST(Solve, ZeroIterationLimitReportsInitialRowOnly) {
  auto p = lqr_chain(5);
  SolverOptions options;
  options.max_iters = 0;
  const auto result = solve(*p, Trajectory(6, p->x0()), Trajectory(5, VectorXd::Zero(2)), options);
  EXPECT_EQ(result.report.termination, Termination::kMaxIters);
  EXPECT_EQ(result.report.iteration_count(), 0);
  ASSERT_EQ(result.report.iterations.size(), 1u);
  EXPECT_FALSE(result.report.iterations[0].accepted);
}

TEST(Solve, DdpReplacesStateGuessByRollout) {
  auto p = pendulum_problem(30);
  std::mt19937 rng(28);
  const Iterate it = random_iterate(*p, rng);
  SolverOptions options;
  options.type = SolverType::kDdp;
  options.max_iters = 0;
  const auto result = solve(*p, it.xs, it.us, options);
  EXPECT_LE(result.report.iterations[0].gap_l2, 1e-12);
  const Trajectory sim = problem_simulate(*p, it.us);
  for (std::size_t k = 0; k <= 30; ++k) EXPECT_EQ(result.xs[k], sim[k]);
}

TEST(Solve, CallbackSeesEveryRecordedRow) {
  auto p = pendulum_problem(40);
  int calls = 0;
  int last = -1;
  const auto result = solve(*p, Trajectory(41, p->x0()), Trajectory(40, VectorXd::Zero(1)),
                            SolverOptions{}, [&](const IterationEvent& e) {
                              EXPECT_EQ(e.record.iteration, last + 1);
                              last = e.record.iteration;
                              ++calls;
                            });
  EXPECT_EQ(static_cast<std::size_t>(calls), result.report.iterations.size());
}

TEST(Solve, FddpAndDdpAgreeFromFeasibleIterate) {
  auto p = pendulum_problem(40);
  Trajectory us(40, VectorXd::Constant(1, 0.1));
  const Trajectory xs = problem_simulate(*p, us);
  SolverOptions options;
  options.max_iters = 1;
  const auto a = solve(*p, xs, us, options);
  options.type = SolverType::kDdp;
  const auto b = solve(*p, xs, us, options);
  ASSERT_EQ(a.report.iterations.size(), b.report.iterations.size());
  for (std::size_t k = 0; k < 40; ++k) {
    EXPECT_LE((a.us[k] - b.us[k]).lpNorm<Eigen::Infinity>(), 1e-12);
    EXPECT_LE((a.xs[k + 1] - b.xs[k + 1]).lpNorm<Eigen::Infinity>(), 1e-12);
  }
}

TEST(Solve, ThreadCountDoesNotChangeResult) {
  auto p = pendulum_problem(60);
  SolverOptions options;
  options.max_iters = 20;
  const auto a = solve(*p, Trajectory(61, p->x0()), Trajectory(60, VectorXd::Zero(1)), options);
  options.threads = 3;
  const auto b = solve(*p, Trajectory(61, p->x0()), Trajectory(60, VectorXd::Zero(1)), options);
  ASSERT_EQ(a.report.iterations.size(), b.report.iterations.size());
  for (std::size_t i = 0; i < a.report.iterations.size(); ++i) {
    EXPECT_EQ(a.report.iterations[i].cost, b.report.iterations[i].cost);
  }
  for (std::size_t k = 0; k < 60; ++k) EXPECT_EQ(a.us[k], b.us[k]);
}

TEST(SolverType, StringRoundTrip) {
  EXPECT_EQ(solver_type_from_string("ddp"), SolverType::kDdp);
  EXPECT_EQ(solver_type_from_string(to_string(SolverType::kFddp)), SolverType::kFddp);
  EXPECT_THROW((void)solver_type_from_string("ilqr"), Error);
}

}  // namespace
}  // namespace fddp
