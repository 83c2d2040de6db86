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

#include "fddp/harness/builder.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "fddp/action/differential.hpp"
#include "fddp/errors.hpp"
#include "fddp/harness/csv.hpp"

namespace fddp {
namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

CostModel make_costs(const std::vector<CostSpec>& specs, const ManifoldPtr& state,
                     const SystemPtr& system, Index nu, const std::string& field) {
  CostModel costs(state->ndx(), nu);
  for (const auto& s : specs) {
    std::shared_ptr<const CostTerm> term;
    if (s.kind == "state_regularization") {
      VectorXd ref = s.reference.size() > 0 ? s.reference : state->neutral();
      if (ref.size() != state->nx()) {
        throw ConfigError("state_regularization reference must have " +
                              std::to_string(state->nx()) + " entries",
                          field);
      }
      state->check_point(ref);
      term = std::make_shared<StateRegularization>(state, std::move(ref));
    } else if (s.kind == "control_regularization") {
      if (nu == 0) continue;  // nothing to regularize on unactuated nodes
      VectorXd ref = s.reference.size() > 0 ? s.reference : VectorXd::Zero(nu);
      if (ref.size() != nu) {
        throw ConfigError("control_regularization reference must have " + std::to_string(nu) +
                              " entries",
                          field);
      }
      term = std::make_shared<ControlRegularization>(std::move(ref));
    } else if (s.kind == "frame_translation_tracking") {
      if (!system) throw ConfigError("frame tracking needs a mechanical model", field);
      if (!system->has_frame(s.frame)) {
        throw ConfigError("model '" + system->id() + "' has no frame '" + s.frame + "'", field);
      }
      if (s.reference.size() != system->frame_dim(s.frame)) {
        throw ConfigError("target for frame '" + s.frame + "' must have " +
                              std::to_string(system->frame_dim(s.frame)) + " entries",
                          field);
      }
      term = std::make_shared<FrameTranslationTracking>(system, s.frame, s.reference);
    } else if (s.kind == "com_tracking") {
      if (!system || !system->has_com()) {
        throw ConfigError("model has no centre of mass for com_tracking", field);
      }
      term = std::make_shared<ComTracking>(system, s.reference);
    } else {
      throw ConfigError("unknown cost kind '" + s.kind + "'", field);
    }
    if (s.weights.size() > 0 && s.weights.size() != term->nr()) {
      throw ConfigError(s.kind + " weights must have " + std::to_string(term->nr()) + " entries",
                        field);
    }
    costs.add(term, s.weight, s.weights);
  }
  return costs;
}

void check_contacts(const ContactSet& contacts, const MechanicalSystem& system) {
  for (const auto& c : contacts) {
    if (!system.has_frame(c.frame)) {
      throw ConfigError("model '" + system.id() + "' has no frame '" + c.frame + "'",
                        "phases.contacts");
    }
    if (c.reference.size() != system.frame_dim(c.frame)) {
      throw ConfigError("contact reference for '" + c.frame + "' must have " +
                            std::to_string(system.frame_dim(c.frame)) + " entries",
                        "phases.contacts");
    }
  }
}

std::shared_ptr<ShootingProblem> build_lqr(const Scenario& s, std::vector<std::string>& labels) {
  const LqrSpec& l = *s.lqr;
  const Index n = l.A.rows();
  if (l.A.cols() != n || l.B.rows() != n) {
    throw ConfigError("lqr: A must be square and B must have as many rows as A", "model");
  }
  const VectorXd c = l.c.size() > 0 ? l.c : VectorXd::Zero(n);
  if (c.size() != n) throw ConfigError("lqr: c must have one entry per state", "model.c");
  auto state = make_manifold(ManifoldSpec::vector(n));
  if (s.state_manifold && *s.state_manifold != state->spec()) {
    throw ConfigError("state_manifold does not match the model", "state_manifold");
  }
  if (s.x0.size() != n) throw ConfigError("x0 must have " + std::to_string(n) + " entries", "x0");

  const Index nu = l.B.cols();
  std::vector<ActionModelPtr> running;
  for (std::size_t k = 0; k < s.horizon; ++k) {
    running.push_back(std::make_shared<LqrActionModel>(
        l.A, l.B, c, s.dt[k], make_costs(s.running_costs, state, nullptr, nu, "costs.running")));
    labels.push_back("lqr dt=" + fmt(s.dt[k]));
  }
  auto terminal = std::make_shared<TerminalActionModel>(
      state, make_costs(s.terminal_costs, state, nullptr, 0, "costs.terminal"));
  labels.emplace_back("terminal");
  return std::make_shared<ShootingProblem>(s.x0, std::move(running), std::move(terminal));
}

}  // namespace

BuiltProblem build_problem(const Scenario& s) {
  validate_scenario(s);
  BuiltProblem out;
  if (s.lqr) {
    out.problem = build_lqr(s, out.node_labels);
    return out;
  }

  out.system = make_system(s.model_id, s.params);
  const auto& state = out.system->state_manifold();
  if (s.state_manifold && *s.state_manifold != state->spec()) {
    throw ConfigError("state_manifold " + describe(*s.state_manifold) + " does not match model '" +
                          s.model_id + "' (" + describe(state->spec()) + ")",
                      "state_manifold");
  }
  if (s.x0.size() != state->nx()) {
    throw ConfigError("x0 must have " + std::to_string(state->nx()) + " entries", "x0");
  }
  try {
    state->check_point(s.x0);
  } catch (const Error& e) {
    throw ConfigError(std::string("x0: ") + e.what(), "x0");
  }

  std::vector<PhaseSpec> phases = s.phases;
  if (phases.empty()) phases.push_back({0, s.horizon, {}, {}});
  std::sort(phases.begin(), phases.end(),
            [](const PhaseSpec& a, const PhaseSpec& b) { return a.start < b.start; });

  const Index nu = out.system->nu();
  std::vector<ActionModelPtr> running(s.horizon);
  for (std::size_t i = 0; i < phases.size(); ++i) {
    const PhaseSpec& phase = phases[i];
    check_contacts(phase.contacts, *out.system);
    std::vector<CostSpec> specs = s.running_costs;
    specs.insert(specs.end(), phase.costs.begin(), phase.costs.end());
    auto diff = std::make_shared<const DifferentialActionModel>(
        out.system, phase.contacts, make_costs(specs, state, out.system, nu, "phases.costs"));
    for (std::size_t k = phase.start; k < phase.end; ++k) {
      running[k] = std::make_shared<IntegratedActionModel>(diff, s.dt[k]);
    }
  }
  out.node_labels.resize(s.horizon);
  for (std::size_t i = 0; i < phases.size(); ++i) {
    for (std::size_t k = phases[i].start; k < phases[i].end; ++k) {
      out.node_labels[k] = "phase " + std::to_string(i) + " dt=" + fmt(s.dt[k]);
    }
  }
  for (const auto& w : s.switches) {
    const auto phase = std::find_if(phases.begin(), phases.end(),
                                    [&](const PhaseSpec& p) { return p.start == w.node; });
    running[w.node] = std::make_shared<ImpulseActionModel>(
        out.system, phase->contacts, w.restitution,
        make_costs(w.costs, state, out.system, 0, "switches.costs"));
    out.node_labels[w.node] = "switch e=" + fmt(w.restitution);
  }
  auto terminal = std::make_shared<TerminalActionModel>(
      state, make_costs(s.terminal_costs, state, out.system, 0, "costs.terminal"));
  out.node_labels.emplace_back("terminal");
  out.problem = std::make_shared<ShootingProblem>(s.x0, std::move(running), std::move(terminal));
  return out;
}

WarmStart make_warm_start(const Scenario& s, const BuiltProblem& built) {
  const ShootingProblem& problem = *built.problem;
  const auto& m = *problem.state();
  const std::size_t n = problem.horizon();
  WarmStart ws;

  if (s.warm_start.policy == WarmStartSpec::Policy::kFile) {
    std::ifstream in(s.warm_start.path);
    if (!in) {
      throw ConfigError("cannot open warm-start file '" + s.warm_start.path.string() + "'",
                        "warm_start.path");
    }
    read_solution_csv(in, m.nx(), ws.xs, ws.us);
    try {
      problem.check_trajectory(ws.xs, ws.us);
    } catch (const DimensionError& e) {
      throw ConfigError(std::string("warm-start file: ") + e.what(), "warm_start.path");
    }
    return ws;
  }

  ws.xs.assign(n + 1, problem.x0());
  if (s.warm_start.policy == WarmStartSpec::Policy::kQuasiStaticInterpolation) {
    std::vector<Keyframe> keys = s.warm_start.keyframes;
    std::sort(keys.begin(), keys.end(),
              [](const Keyframe& a, const Keyframe& b) { return a.node < b.node; });
    if (keys.empty() || keys.front().node != 0) keys.insert(keys.begin(), {0, problem.x0()});
    for (const auto& key : keys) {
      if (key.x.size() != m.nx()) {
        throw ConfigError("keyframe at node " + std::to_string(key.node) + " must have " +
                              std::to_string(m.nx()) + " entries",
                          "warm_start.keyframes");
      }
      m.check_point(key.x);
    }
    for (std::size_t i = 0; i < keys.size(); ++i) {
      const Keyframe& a = keys[i];
      if (i + 1 == keys.size()) {
        for (std::size_t k = a.node; k <= n; ++k) ws.xs[k] = a.x;
        break;
      }
      const Keyframe& b = keys[i + 1];
      const VectorXd delta = m.difference(a.x, b.x);
      for (std::size_t k = a.node; k < b.node; ++k) {
        const double t = static_cast<double>(k - a.node) / static_cast<double>(b.node - a.node);
        ws.xs[k] = m.integrate(a.x, t * delta);
      }
    }
  }

  ws.us.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const ActionModel& node = problem.running(k);
    ws.us[k] = VectorXd::Zero(node.nu());
    if (s.warm_start.policy != WarmStartSpec::Policy::kQuasiStaticInterpolation ||
        node.nu() == 0) {
      continue;
    }
    try {
      ws.us[k] = node.quasi_static(ws.xs[k]);
    } catch (const NonConvergence& e) {
      ws.us[k] = e.best();
    } catch (const UnsupportedOperation&) {
      // Models without a static equilibrium notion start from zero control.
    }
  }
  return ws;
}

}  // namespace fddp
