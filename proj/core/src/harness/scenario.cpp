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

#include "fddp/harness/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fddp/errors.hpp"

namespace fddp {
namespace {

using nlohmann::json;

const json& require(const json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) {
    throw ConfigError("missing required field '" + path + key + "'", path + key);
  }
  return j.at(key);
}

double number(const json& j, const std::string& field) {
  if (!j.is_number()) throw ConfigError("field '" + field + "' must be a number", field);
  return j.get<double>();
}

std::size_t count(const json& j, const std::string& field) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw ConfigError("field '" + field + "' must be a non-negative integer", field);
  }
  return j.get<std::size_t>();
}

std::string text(const json& j, const std::string& field) {
  if (!j.is_string()) throw ConfigError("field '" + field + "' must be a string", field);
  return j.get<std::string>();
}

VectorXd vector(const json& j, const std::string& field) {
  if (!j.is_array()) throw ConfigError("field '" + field + "' must be an array of numbers", field);
  VectorXd v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v[static_cast<Index>(i)] = number(j[i], field + "[" + std::to_string(i) + "]");
  }
  return v;
}

MatrixXd matrix(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    throw ConfigError("field '" + field + "' must be a non-empty array of rows", field);
  }
  const std::size_t cols = j[0].size();
  MatrixXd m(static_cast<Index>(j.size()), static_cast<Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string row_field = field + "[" + std::to_string(r) + "]";
    const VectorXd row = vector(j[r], row_field);
    if (static_cast<std::size_t>(row.size()) != cols) {
      throw ConfigError("rows of '" + field + "' must all have " + std::to_string(cols) +
                            " entries",
                        row_field);
    }
    m.row(static_cast<Index>(r)) = row.transpose();
  }
  return m;
}

std::vector<CostSpec> costs(const json& j, const std::string& field) {
  if (!j.is_array()) throw ConfigError("field '" + field + "' must be an array", field);
  std::vector<CostSpec> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = field + "[" + std::to_string(i) + "].";
    const json& c = j[i];
    CostSpec s;
    s.kind = text(require(c, "kind", p), p + "kind");
    if (c.contains("weight")) s.weight = number(c["weight"], p + "weight");
    if (c.contains("weights")) s.weights = vector(c["weights"], p + "weights");
    if (s.kind == "state_regularization" || s.kind == "control_regularization") {
      if (c.contains("reference")) s.reference = vector(c["reference"], p + "reference");
    } else if (s.kind == "frame_translation_tracking") {
      s.frame = text(require(c, "frame", p), p + "frame");
      s.reference = vector(require(c, "target", p), p + "target");
    } else if (s.kind == "com_tracking") {
      s.reference = vector(require(c, "target", p), p + "target");
    } else {
      throw ConfigError("unknown cost kind '" + s.kind + "'", p + "kind");
    }
    out.push_back(std::move(s));
  }
  return out;
}

ContactSet contacts(const json& j, const std::string& field) {
  if (!j.is_array()) throw ConfigError("field '" + field + "' must be an array", field);
  ContactSet out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = field + "[" + std::to_string(i) + "].";
    Contact c;
    c.frame = text(require(j[i], "frame", p), p + "frame");
    c.reference = vector(require(j[i], "reference", p), p + "reference");
    if (j[i].contains("alpha")) c.alpha = number(j[i]["alpha"], p + "alpha");
    if (j[i].contains("beta")) c.beta = number(j[i]["beta"], p + "beta");
    out.push_back(std::move(c));
  }
  return out;
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

void check_costs(const std::vector<CostSpec>& cs, const std::string& field) {
  for (const auto& c : cs) {
    if (!(c.weight >= 0.0)) throw ConfigError("cost weights must be non-negative", field);
    if (c.weights.size() > 0 && (c.weights.array() < 0.0).any()) {
      throw ConfigError("per-residual cost weights must be non-negative", field);
    }
  }
}

}  // namespace

void Scenario::resize_horizon(std::size_t n) {
  if (!phases.empty() || !switches.empty()) {
    throw ConfigError("cannot resize a scenario with contact phases", "horizon");
  }
  if (n == 0) throw ConfigError("horizon must be positive", "horizon");
  const double step = dt.empty() ? 0.0 : dt.front();
  horizon = n;
  dt.assign(n, step);
}

Scenario parse_scenario(std::string_view input, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(input);
  } catch (const json::parse_error& e) {
    const std::size_t line = line_of(input, e.byte);
    throw ConfigError("scenario is not valid JSON (line " + std::to_string(line) + "): " +
                          e.what(),
                      "", line);
  }
  if (!j.is_object()) throw ConfigError("scenario must be a JSON object", "");

  Scenario s;
  s.name = text(require(j, "name", ""), "name");

  const json& model = require(j, "model", "");
  if (!model.is_object() || !model.contains("id")) {
    throw ConfigError("missing required field 'model.id'", "model.id");
  }
  s.model_id = text(model["id"], "model.id");
  if (model.contains("params")) {
    const json& p = model["params"];
    if (!p.is_object()) throw ConfigError("'model.params' must be an object", "model.params");
    for (const auto& [key, value] : p.items()) {
      s.params[key] = number(value, "model.params." + key);
    }
  }
  if (s.model_id == "lqr") {
    LqrSpec l;
    l.A = matrix(require(model, "A", "model."), "model.A");
    l.B = matrix(require(model, "B", "model."), "model.B");
    if (model.contains("c")) l.c = vector(model["c"], "model.c");
    s.lqr = std::move(l);
  }

  if (j.contains("state_manifold")) {
    s.state_manifold = manifold_spec_from_json(j["state_manifold"].dump());
  }

  s.horizon = count(require(j, "horizon", ""), "horizon");
  const json& dt = require(j, "dt", "");
  if (dt.is_array()) {
    const VectorXd v = vector(dt, "dt");
    s.dt.assign(v.data(), v.data() + v.size());
  } else {
    s.dt.assign(s.horizon, number(dt, "dt"));
  }
  s.x0 = vector(require(j, "x0", ""), "x0");

  if (j.contains("phases")) {
    const json& ph = j["phases"];
    if (!ph.is_array()) throw ConfigError("'phases' must be an array", "phases");
    for (std::size_t i = 0; i < ph.size(); ++i) {
      const std::string p = "phases[" + std::to_string(i) + "].";
      PhaseSpec phase;
      phase.start = count(require(ph[i], "start", p), p + "start");
      phase.end = count(require(ph[i], "end", p), p + "end");
      if (ph[i].contains("contacts")) phase.contacts = contacts(ph[i]["contacts"], p + "contacts");
      if (ph[i].contains("costs")) phase.costs = costs(ph[i]["costs"], p + "costs");
      s.phases.push_back(std::move(phase));
    }
  }
  if (j.contains("switches")) {
    const json& sw = j["switches"];
    if (!sw.is_array()) throw ConfigError("'switches' must be an array", "switches");
    for (std::size_t i = 0; i < sw.size(); ++i) {
      const std::string p = "switches[" + std::to_string(i) + "].";
      SwitchSpec w;
      w.node = count(require(sw[i], "node", p), p + "node");
      if (sw[i].contains("restitution")) w.restitution = number(sw[i]["restitution"], p + "restitution");
      if (sw[i].contains("costs")) w.costs = costs(sw[i]["costs"], p + "costs");
      s.switches.push_back(std::move(w));
    }
  }

  if (j.contains("costs")) {
    const json& c = j["costs"];
    if (c.contains("running")) s.running_costs = costs(c["running"], "costs.running");
    if (c.contains("terminal")) s.terminal_costs = costs(c["terminal"], "costs.terminal");
  }

  if (j.contains("warm_start")) {
    const json& w = j["warm_start"];
    const std::string policy = text(require(w, "policy", "warm_start."), "warm_start.policy");
    if (policy == "zeros") {
      s.warm_start.policy = WarmStartSpec::Policy::kZeros;
    } else if (policy == "quasi_static_interpolation") {
      s.warm_start.policy = WarmStartSpec::Policy::kQuasiStaticInterpolation;
      if (w.contains("keyframes")) {
        const json& kf = w["keyframes"];
        if (!kf.is_array()) {
          throw ConfigError("'warm_start.keyframes' must be an array", "warm_start.keyframes");
        }
        for (std::size_t i = 0; i < kf.size(); ++i) {
          const std::string p = "warm_start.keyframes[" + std::to_string(i) + "].";
          s.warm_start.keyframes.push_back(
              {count(require(kf[i], "node", p), p + "node"), vector(require(kf[i], "x", p), p + "x")});
        }
      }
    } else if (policy == "file") {
      s.warm_start.policy = WarmStartSpec::Policy::kFile;
      std::filesystem::path path = text(require(w, "path", "warm_start."), "warm_start.path");
      s.warm_start.path = path.is_relative() ? base_dir / path : path;
    } else {
      throw ConfigError("unknown warm-start policy '" + policy + "'", "warm_start.policy");
    }
  }

  if (j.contains("solver")) {
    const json& o = j["solver"];
    if (o.contains("type")) s.solver.type = solver_type_from_string(text(o["type"], "solver.type"));
    if (o.contains("max_iters")) {
      s.solver.max_iters = static_cast<int>(count(o["max_iters"], "solver.max_iters"));
    }
    if (o.contains("tolerance")) s.solver.tolerance = number(o["tolerance"], "solver.tolerance");
    if (o.contains("threads")) s.solver.threads = count(o["threads"], "solver.threads");
    if (o.contains("initial_regularization")) {
      s.solver.initial_regularization =
          number(o["initial_regularization"], "solver.initial_regularization");
    }
  }
  if (j.contains("seed")) s.seed = count(j["seed"], "seed");

  validate_scenario(s);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str(), path.parent_path());
}

void validate_scenario(const Scenario& s) {
  if (s.name.empty()) throw ConfigError("scenario name must not be empty", "name");
  if (s.model_id.empty()) throw ConfigError("model id must not be empty", "model.id");
  if (s.model_id != "lqr") {
    const auto ids = system_ids();
    if (std::find(ids.begin(), ids.end(), s.model_id) == ids.end()) {
      throw ConfigError("unknown model id '" + s.model_id + "'", "model.id");
    }
  }
  if (s.horizon == 0) throw ConfigError("horizon must be at least 1", "horizon");
  if (s.dt.size() != s.horizon) {
    throw ConfigError("dt must be a scalar or have one entry per node (" +
                          std::to_string(s.horizon) + ")",
                      "dt");
  }
  for (double h : s.dt) {
    if (!(h > 0.0)) throw ConfigError("every step size must be positive", "dt");
  }
  if (s.x0.size() == 0) throw ConfigError("x0 must not be empty", "x0");

  if (!s.phases.empty()) {
    std::vector<PhaseSpec> sorted = s.phases;
    std::sort(sorted.begin(), sorted.end(),
              [](const PhaseSpec& a, const PhaseSpec& b) { return a.start < b.start; });
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      const auto& p = sorted[i];
      if (p.start >= p.end) {
        throw ConfigError("phase [" + std::to_string(p.start) + ", " + std::to_string(p.end) +
                              ") is empty",
                          "phases");
      }
      if (i > 0 && p.start < sorted[i - 1].end) {
        throw ConfigError("phases overlap: [" + std::to_string(sorted[i - 1].start) + ", " +
                              std::to_string(sorted[i - 1].end) + ") and [" +
                              std::to_string(p.start) + ", " + std::to_string(p.end) + ")",
                          "phases");
      }
      const std::size_t expected = i == 0 ? 0 : sorted[i - 1].end;
      if (p.start != expected) {
        throw ConfigError("phases do not cover nodes [" + std::to_string(expected) + ", " +
                              std::to_string(p.start) + ")",
                          "phases");
      }
      for (const auto& c : p.contacts) {
        if (!(c.alpha >= 0.0) || !(c.beta >= 0.0)) {
          throw ConfigError("Baumgarte gains must be non-negative", "phases.contacts");
        }
      }
      check_costs(p.costs, "phases.costs");
    }
    if (sorted.back().end != s.horizon) {
      throw ConfigError("phases must end at the horizon (" + std::to_string(s.horizon) + ")",
                        "phases");
    }
  }

  std::vector<std::size_t> seen;
  for (const auto& w : s.switches) {
    if (std::find(seen.begin(), seen.end(), w.node) != seen.end()) {
      throw ConfigError("duplicate switch node " + std::to_string(w.node), "switches");
    }
    seen.push_back(w.node);
    const auto phase = std::find_if(s.phases.begin(), s.phases.end(),
                                    [&](const PhaseSpec& p) { return p.start == w.node; });
    if (w.node == 0 || phase == s.phases.end()) {
      throw ConfigError("switch node " + std::to_string(w.node) + " is not on a phase boundary",
                        "switches");
    }
    if (phase->contacts.empty()) {
      throw ConfigError("switch node " + std::to_string(w.node) +
                            " starts a phase without contacts",
                        "switches");
    }
    if (!(w.restitution >= 0.0 && w.restitution <= 1.0)) {
      throw ConfigError("restitution must lie in [0, 1]", "switches.restitution");
    }
    check_costs(w.costs, "switches.costs");
  }

  if (s.lqr && (!s.phases.empty() || !s.switches.empty())) {
    throw ConfigError("lqr scenarios cannot declare contact phases", "phases");
  }
  check_costs(s.running_costs, "costs.running");
  check_costs(s.terminal_costs, "costs.terminal");
  for (const auto& k : s.warm_start.keyframes) {
    if (k.node > s.horizon) {
      throw ConfigError("keyframe node " + std::to_string(k.node) + " is past the horizon",
                        "warm_start.keyframes");
    }
  }
  if (s.solver.threads == 0) throw ConfigError("solver.threads must be at least 1", "solver.threads");
  if (!(s.solver.tolerance >= 0.0)) {
    throw ConfigError("solver.tolerance must be non-negative", "solver.tolerance");
  }
  if (!(s.solver.initial_regularization >= 0.0)) {
    throw ConfigError("solver.initial_regularization must be non-negative",
                      "solver.initial_regularization");
  }
}

}  // namespace fddp
