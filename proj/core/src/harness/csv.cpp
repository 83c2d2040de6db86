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

#include "fddp/harness/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "fddp/errors.hpp"

namespace fddp {
namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_double(const std::string& cell, std::size_t line) {
  double v = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (cell.empty() || ec != std::errc() || ptr != last) {
    throw ConfigError("malformed number '" + cell + "'", "csv", line);
  }
  return v;
}

bool getline_trimmed(std::istream& is, std::string& line) {
  if (!std::getline(is, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

std::string ratio(double value, double base) {
  return base != 0.0 && std::isfinite(base) ? format_double(value / base) : std::string();
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) throw Error("format_double: buffer too small");
  return std::string(buffer, ptr);
}

void write_trace_csv(std::ostream& os, const std::vector<IterationRecord>& rows) {
  os << kTraceHeader << '\n';
  const double cost0 = rows.empty() ? 0.0 : rows.front().cost;
  const double gap0 = rows.empty() ? 0.0 : rows.front().gap_l2;
  for (const auto& r : rows) {
    os << r.iteration << ',' << format_double(r.cost) << ',' << format_double(r.gap_l2) << ','
       << format_double(r.step_length) << ',' << format_double(r.regularization) << ','
       << format_double(r.expected_dj) << ',' << (r.accepted ? 1 : 0) << ','
       << ratio(r.cost, cost0) << ',' << ratio(r.gap_l2, gap0) << '\n';
  }
}

void write_solution_csv(std::ostream& os, const Trajectory& xs, const Trajectory& us) {
  if (xs.empty()) throw DimensionError("write_solution_csv: empty state trajectory");
  const Index nx = xs.front().size();
  Index nu = 0;
  for (const auto& u : us) nu = std::max(nu, static_cast<Index>(u.size()));
  os << "node";
  for (Index i = 0; i < nx; ++i) os << ",x" << i;
  for (Index i = 0; i < nu; ++i) os << ",u" << i;
  os << '\n';
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (xs[k].size() != nx) throw DimensionError("write_solution_csv: ragged state trajectory");
    os << k;
    for (Index i = 0; i < nx; ++i) os << ',' << format_double(xs[k][i]);
    const Index nuk = k < us.size() ? us[k].size() : 0;
    for (Index i = 0; i < nu; ++i) {
      os << ',';
      if (i < nuk) os << format_double(us[k][i]);
    }
    os << '\n';
  }
}

std::vector<TraceRow> read_trace_csv(std::istream& is) {
  std::string line;
  if (!getline_trimmed(is, line)) throw ConfigError("trace is empty", "csv", 1);
  const auto header = split(line);
  const auto column = [&](const char* name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ConfigError(std::string("trace lacks column ") + name, name, 1);
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t c_iter = column("iteration"), c_cost = column("cost"),
                    c_gap = column("gap_l2"), c_alpha = column("step_length"),
                    c_mu = column("regularization"), c_dj = column("expected_dj"),
                    c_acc = column("accepted");
  std::vector<TraceRow> rows;
  std::size_t lineno = 1;
  while (getline_trimmed(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() < header.size()) throw ConfigError("short trace row", "csv", lineno);
    TraceRow r;
    r.iteration = static_cast<int>(parse_double(cells[c_iter], lineno));
    r.cost = parse_double(cells[c_cost], lineno);
    r.gap_l2 = parse_double(cells[c_gap], lineno);
    r.step_length = parse_double(cells[c_alpha], lineno);
    r.regularization = parse_double(cells[c_mu], lineno);
    r.expected_dj = parse_double(cells[c_dj], lineno);
    r.accepted = parse_double(cells[c_acc], lineno) != 0.0;
    rows.push_back(r);
  }
  return rows;
}

void read_solution_csv(std::istream& is, Index nx, Trajectory& xs, Trajectory& us) {
  std::string line;
  if (!getline_trimmed(is, line)) throw ConfigError("solution file is empty", "csv", 1);
  const auto header = split(line);
  if (header.size() < static_cast<std::size_t>(nx) + 1 || header.front() != "node") {
    throw ConfigError("solution header must be node followed by " + std::to_string(nx) +
                          " state columns",
                      "csv", 1);
  }
  const std::size_t nu = header.size() - 1 - static_cast<std::size_t>(nx);
  xs.clear();
  us.clear();
  std::vector<VectorXd> controls;
  std::size_t lineno = 1;
  while (getline_trimmed(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto cells = split(line);
    cells.resize(header.size());
    VectorXd x(nx);
    for (Index i = 0; i < nx; ++i) x[i] = parse_double(cells[1 + static_cast<std::size_t>(i)], lineno);
    std::vector<double> u;
    for (std::size_t i = 0; i < nu; ++i) {
      const std::string& cell = cells[1 + static_cast<std::size_t>(nx) + i];
      if (cell.empty()) break;
      u.push_back(parse_double(cell, lineno));
    }
    xs.push_back(std::move(x));
    controls.push_back(Eigen::Map<const VectorXd>(u.data(), static_cast<Index>(u.size())));
  }
  if (xs.empty()) throw ConfigError("solution file has no rows", "csv", lineno);
  controls.pop_back();  // terminal node carries no control
  us = std::move(controls);
}

}  // namespace fddp
