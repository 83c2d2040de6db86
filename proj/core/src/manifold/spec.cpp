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

#include "fddp/manifold/spec.hpp"

#include <nlohmann/json.hpp>

#include "fddp/errors.hpp"

namespace fddp {
namespace {

using nlohmann::json;

json spec_to_json(const ManifoldSpec& spec) {
  json j;
  j["kind"] = std::string(to_string(spec.kind));
  if (spec.kind == ManifoldSpec::Kind::kVector) j["dim"] = spec.dim;
  if (spec.kind == ManifoldSpec::Kind::kComposite) {
    j["children"] = json::array();
    for (const auto& c : spec.children) j["children"].push_back(spec_to_json(c));
  }
  return j;
}

ManifoldSpec spec_from_json(const json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw ConfigError("manifold entry needs a string 'kind'", path);
  }
  const auto kind = j["kind"].get<std::string>();
  if (kind == "vector") {
    if (!j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<long long>() < 0) {
      throw ConfigError("vector manifold needs a non-negative integer 'dim'", path + ".dim");
    }
    return ManifoldSpec::vector(j["dim"].get<Index>());
  }
  if (kind == "rotation3d") return ManifoldSpec::rotation3d();
  if (kind == "free_flyer_planar") return ManifoldSpec::free_flyer_planar();
  if (kind == "composite") {
    if (!j.contains("children") || !j["children"].is_array() || j["children"].empty()) {
      throw ConfigError("composite manifold needs a non-empty 'children' array",
                        path + ".children");
    }
    std::vector<ManifoldSpec> children;
    for (std::size_t i = 0; i < j["children"].size(); ++i) {
      children.push_back(
          spec_from_json(j["children"][i], path + ".children[" + std::to_string(i) + "]"));
    }
    return ManifoldSpec::composite(std::move(children));
  }
  throw ConfigError("unknown manifold kind '" + kind + "'", path + ".kind");
}

}  // namespace

ManifoldSpec ManifoldSpec::vector(Index n) {
  ManifoldSpec s;
  s.kind = Kind::kVector;
  s.dim = n;
  return s;
}

ManifoldSpec ManifoldSpec::rotation3d() {
  ManifoldSpec s;
  s.kind = Kind::kRotation3d;
  return s;
}

ManifoldSpec ManifoldSpec::free_flyer_planar() {
  ManifoldSpec s;
  s.kind = Kind::kFreeFlyerPlanar;
  return s;
}

ManifoldSpec ManifoldSpec::composite(std::vector<ManifoldSpec> children) {
  ManifoldSpec s;
  s.kind = Kind::kComposite;
  s.children = std::move(children);
  return s;
}

Index ManifoldSpec::nx() const {
  switch (kind) {
    case Kind::kVector: return dim;
    case Kind::kRotation3d: return 4;
    case Kind::kFreeFlyerPlanar: return 4;
    case Kind::kComposite: {
      Index n = 0;
      for (const auto& c : children) n += c.nx();
      return n;
    }
  }
  return 0;
}

Index ManifoldSpec::ndx() const {
  switch (kind) {
    case Kind::kVector: return dim;
    case Kind::kRotation3d: return 3;
    case Kind::kFreeFlyerPlanar: return 3;
    case Kind::kComposite: {
      Index n = 0;
      for (const auto& c : children) n += c.ndx();
      return n;
    }
  }
  return 0;
}

std::string_view to_string(ManifoldSpec::Kind kind) {
  switch (kind) {
    case ManifoldSpec::Kind::kVector: return "vector";
    case ManifoldSpec::Kind::kRotation3d: return "rotation3d";
    case ManifoldSpec::Kind::kFreeFlyerPlanar: return "free_flyer_planar";
    case ManifoldSpec::Kind::kComposite: return "composite";
  }
  return "unknown";
}

std::string describe(const ManifoldSpec& spec) {
  switch (spec.kind) {
    case ManifoldSpec::Kind::kVector: return "vector(" + std::to_string(spec.dim) + ")";
    case ManifoldSpec::Kind::kComposite: {
      std::string out = "composite(";
      for (std::size_t i = 0; i < spec.children.size(); ++i) {
        if (i > 0) out += ", ";
        out += describe(spec.children[i]);
      }
      return out + ")";
    }
    default: return std::string(to_string(spec.kind));
  }
}

std::string to_json(const ManifoldSpec& spec) { return spec_to_json(spec).dump(); }

ManifoldSpec manifold_spec_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed manifold JSON: ") + e.what(), "state_manifold");
  }
  return spec_from_json(j, "state_manifold");
}

}  // namespace fddp
