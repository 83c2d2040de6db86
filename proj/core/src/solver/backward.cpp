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

#include <Eigen/Cholesky>

#include "fddp/errors.hpp"
#include "fddp/solver/solver.hpp"

namespace fddp {

SolverWorkspace::SolverWorkspace(const ShootingProblem& problem) {
  const std::size_t n = problem.horizon();
  const Index ndx = problem.state()->ndx();
  for (std::size_t t = 0; t < n; ++t) {
    const Index nu = problem.running(t).nu();
    Qx.emplace_back(VectorXd::Zero(ndx));
    Qu.emplace_back(VectorXd::Zero(nu));
    Qxx.emplace_back(MatrixXd::Zero(ndx, ndx));
    Qxu.emplace_back(MatrixXd::Zero(ndx, nu));
    Quu.emplace_back(MatrixXd::Zero(nu, nu));
    k.emplace_back(VectorXd::Zero(nu));
    K.emplace_back(MatrixXd::Zero(nu, ndx));
  }
  Vx.assign(n + 1, VectorXd::Zero(ndx));
  Vxx.assign(n + 1, MatrixXd::Zero(ndx, ndx));
}

void backward_pass(const ShootingProblem& problem, const ProblemData& data, const Trajectory& gaps,
                   double mu, SolverWorkspace& ws) {
  const std::size_t n = problem.horizon();
  ws.mu = mu;
  const auto& term = data.node(n);
  ws.Vx[n] = term.Lx;
  ws.Vxx[n] = term.Lxx;

  for (std::size_t i = n; i-- > 0;) {
    const auto& d = data.node(i);
    const VectorXd vx_next = ws.Vx[i + 1] + ws.Vxx[i + 1] * gaps[i + 1];
    const MatrixXd& vxx_next = ws.Vxx[i + 1];

    const MatrixXd fxt_vxx = d.Fx.transpose() * vxx_next;
    ws.Qx[i] = d.Lx + d.Fx.transpose() * vx_next;
    ws.Qu[i] = d.Lu + d.Fu.transpose() * vx_next;
    ws.Qxx[i] = d.Lxx + fxt_vxx * d.Fx;
    ws.Qxu[i] = d.Lxu + fxt_vxx * d.Fu;
    ws.Quu[i] = d.Luu + d.Fu.transpose() * vxx_next * d.Fu;

    const Index nu = ws.Qu[i].size();
    if (nu > 0) {
      MatrixXd quu_reg = ws.Quu[i];
      quu_reg.diagonal().array() += mu;
      Eigen::LLT<MatrixXd> llt(quu_reg);
      if (llt.info() != Eigen::Success) throw NotPositiveDefinite(i);
      ws.k[i] = -llt.solve(ws.Qu[i]);
      ws.K[i] = -llt.solve(ws.Qxu[i].transpose());
      if (!ws.k[i].allFinite() || !ws.K[i].allFinite()) throw NotPositiveDefinite(i);
      ws.Vx[i] = ws.Qx[i] + ws.K[i].transpose() * ws.Qu[i];
      ws.Vxx[i] = ws.Qxx[i] + ws.Qxu[i] * ws.K[i];
    } else {
      ws.Vx[i] = ws.Qx[i];
      ws.Vxx[i] = ws.Qxx[i];
    }
    ws.Vxx[i] = 0.5 * (ws.Vxx[i] + ws.Vxx[i].transpose()).eval();
  }
}

ExpectedImprovement expected_improvement(const ShootingProblem& problem, const ProblemData& data,
                                         const Trajectory& gaps, const SolverWorkspace& ws) {
  const std::size_t n = problem.horizon();
  ExpectedImprovement out;
  for (std::size_t i = 0; i < n; ++i) {
    out.d1 += ws.k[i].dot(ws.Qu[i]);
    out.d2 += ws.k[i].dot(ws.Quu[i] * ws.k[i]);
  }
  // Gap terms, with d the deviation of the full-step linearized rollout.
  VectorXd d = gaps[0];
  for (std::size_t i = 0; i <= n; ++i) {
    const VectorXd& f = gaps[i];
    if (f.squaredNorm() > 0.0) {
      const VectorXd vxx_d = ws.Vxx[i] * d;
      const VectorXd vxx_f = ws.Vxx[i] * f;
      out.d1 += f.dot(ws.Vx[i] + vxx_f - vxx_d);
      out.d2 += f.dot(2.0 * vxx_d - vxx_f);
    }
    if (i < n) {
      const auto& nd = data.node(i);
      const VectorXd e = ws.k[i] + ws.K[i] * d;
      d = nd.Fx * d + nd.Fu * e + gaps[i + 1];
    }
  }
  return out;
}

}  // namespace fddp
