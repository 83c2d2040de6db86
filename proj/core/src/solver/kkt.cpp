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

#include <Eigen/LU>

#include "fddp/errors.hpp"
#include "fddp/solver/solver.hpp"

namespace fddp {

KktDirection kkt_search_direction(const ShootingProblem& problem, const ProblemData& data,
                                  const Trajectory& gaps) {
  const std::size_t n = problem.horizon();
  const Index ndx = problem.state()->ndx();
  std::vector<Index> u_offset(n);
  Index nu_total = 0;
  for (std::size_t k = 0; k < n; ++k) {
    u_offset[k] = nu_total;
    nu_total += problem.running(k).nu();
  }
  const Index nxs = ndx * static_cast<Index>(n + 1);
  const Index nw = nxs + nu_total;
  if (static_cast<Index>(n) * ndx + nu_total > 2000) {
    throw DimensionError("problem too large for the dense KKT assembly");
  }
  const Index nc = nxs;  // one constraint block per state
  const auto x_at = [&](std::size_t k) { return ndx * static_cast<Index>(k); };
  const auto u_at = [&](std::size_t k) { return nxs + u_offset[k]; };

  // [H C^T; C 0] [w; -y] = [-g; gaps], w = (dx_0..dx_N, du_0..du_{N-1}).
  MatrixXd kkt = MatrixXd::Zero(nw + nc, nw + nc);
  VectorXd rhs = VectorXd::Zero(nw + nc);
  for (std::size_t k = 0; k <= n; ++k) {
    const auto& d = data.node(k);
    const Index nu = k < n ? problem.running(k).nu() : 0;
    kkt.block(x_at(k), x_at(k), ndx, ndx) = d.Lxx;
    rhs.segment(x_at(k), ndx) = -d.Lx;
    if (nu > 0) {
      kkt.block(x_at(k), u_at(k), ndx, nu) = d.Lxu;
      kkt.block(u_at(k), x_at(k), nu, ndx) = d.Lxu.transpose();
      kkt.block(u_at(k), u_at(k), nu, nu) = d.Luu;
      rhs.segment(u_at(k), nu) = -d.Lu;
    }
  }
  // dx_0 = gap_0; dx_{k+1} - Fx dx_k - Fu du_k = gap_{k+1}.
  MatrixXd c = MatrixXd::Zero(nc, nw);
  c.block(0, 0, ndx, ndx).setIdentity();
  rhs.segment(nw, ndx) = gaps[0];
  for (std::size_t k = 0; k < n; ++k) {
    const auto& d = data.node(k);
    const Index row = x_at(k + 1);
    c.block(row, x_at(k + 1), ndx, ndx).setIdentity();
    c.block(row, x_at(k), ndx, ndx) = -d.Fx;
    if (d.Fu.cols() > 0) c.block(row, u_at(k), ndx, d.Fu.cols()) = -d.Fu;
    rhs.segment(nw + row, ndx) = gaps[k + 1];
  }
  kkt.block(nw, 0, nc, nw) = c;
  kkt.block(0, nw, nw, nc) = c.transpose();

  Eigen::FullPivLU<MatrixXd> lu(kkt);
  if (!lu.isInvertible()) throw SingularKkt("multiple-shooting KKT matrix is singular");
  const VectorXd sol = lu.solve(rhs);
  if (!sol.allFinite()) throw SingularKkt("multiple-shooting KKT solve is not finite");

  KktDirection out;
  for (std::size_t k = 0; k <= n; ++k) {
    out.dxs.push_back(sol.segment(x_at(k), ndx));
    out.multipliers.push_back(-sol.segment(nw + x_at(k), ndx));
  }
  for (std::size_t k = 0; k < n; ++k) {
    out.dus.push_back(sol.segment(u_at(k), problem.running(k).nu()));
  }
  return out;
}

KktDirection kkt_search_direction(const ShootingProblem& problem, const Trajectory& xs,
                                  const Trajectory& us) {
  ProblemData data(problem);
  problem_calc(problem, data, xs, us);
  problem_calc_diff(problem, data, xs, us);
  return kkt_search_direction(problem, data, problem_gaps(problem, data, xs));
}

}  // namespace fddp
