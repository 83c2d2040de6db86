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

#include <initializer_list>
#include <string>

#include "fddp/errors.hpp"
#include "fddp/multibody/system.hpp"

namespace fddp::detail {

/// Reads model parameters with defaults and rejects names it does not know.
class ParamReader {
 public:
  ParamReader(const std::string& model, const Params& params,
              std::initializer_list<const char*> known)
      : params_(params) {
    for (const auto& [key, value] : params) {
      bool ok = false;
      for (const char* k : known) ok = ok || key == k;
      if (!ok) {
        throw ConfigError("unknown parameter '" + key + "' for model '" + model + "'",
                          "model.params." + key);
      }
    }
  }

  [[nodiscard]] double get(const char* key, double fallback) const {
    const auto it = params_.find(key);
    return it == params_.end() ? fallback : it->second;
  }

  [[nodiscard]] double positive(const char* key, double fallback) const {
    const double v = get(key, fallback);
    if (!(v > 0.0)) {
      throw ConfigError(std::string("parameter '") + key + "' must be positive",
                        std::string("model.params.") + key);
    }
    return v;
  }

  [[nodiscard]] double nonnegative(const char* key, double fallback) const {
    const double v = get(key, fallback);
    if (!(v >= 0.0)) {
      throw ConfigError(std::string("parameter '") + key + "' must be non-negative",
                        std::string("model.params.") + key);
    }
    return v;
  }

 private:
  const Params& params_;
};

}  // namespace fddp::detail
