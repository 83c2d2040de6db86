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

#include <ostream>
#include <string>
#include <vector>

#include "fddp/action/problem.hpp"
#include "fddp/solver/solver.hpp"

namespace fddp {

/// Shortest decimal form that parses back to the same double.
[[nodiscard]] std::string format_double(double value);

inline constexpr const char* kTraceHeader =
    "iteration,cost,gap_l2,step_length,regularization,expected_dj,accepted,cost_normalized,"
    "gap_normalized";

/// Trace rows; the two last columns divide cost and gap by their row-0 values.
void write_trace_csv(std::ostream& os, const std::vector<IterationRecord>& rows);

/// node,x_0..x_{nx-1},u_0..u_{m-1}; nodes without controls leave the u cells empty.
void write_solution_csv(std::ostream& os, const Trajectory& xs, const Trajectory& us);

struct TraceRow {
  int iteration = 0;
  double cost = 0.0;
  double gap_l2 = 0.0;
  double step_length = 0.0;
  double regularization = 0.0;
  double expected_dj = 0.0;
  bool accepted = false;
};

/// Reads back the first seven trace columns. Throws ConfigError on bad input.
[[nodiscard]] std::vector<TraceRow> read_trace_csv(std::istream& is);

/// Reads a solution file; nx fixes the split between state and control cells.
void read_solution_csv(std::istream& is, Index nx, Trajectory& xs, Trajectory& us);

}  // namespace fddp
