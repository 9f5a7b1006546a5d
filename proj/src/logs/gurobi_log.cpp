/* Copyright 2026 GenBench contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "log_common.hpp"

namespace genbench {
namespace detail {
namespace {

std::string gurobi_version(const std::vector<std::string_view>& lines)
{
  for (auto line : lines) {
    // "Gurobi Optimizer version 11.0.3 build v11.0.3rc0 (linux64 ...)"
    if (starts_with(line, "Gurobi Optimizer version ")) {
      auto toks = tokenize(line);
      if (toks.size() >= 4) return std::string(toks[3].text);
    }
    // "Gurobi 11.0.3 (linux64) logging started ..."
    if (starts_with(line, "Gurobi ") && line.find("logging started") != std::string_view::npos) {
      auto toks = tokenize(line);
      if (toks.size() >= 2) return std::string(toks[1].text);
    }
  }
  return {};
}

struct TerminalLine {
  std::string_view prefix;
  LogTerminal terminal;
};

constexpr TerminalLine kTerminalLines[] = {
    {"Optimal solution found", LogTerminal::Optimal},
    {"Optimal objective", LogTerminal::Optimal},
    {"Infeasible or unbounded model", LogTerminal::InfeasibleOrUnbounded},
    {"Model is infeasible or unbounded", LogTerminal::InfeasibleOrUnbounded},
    {"Infeasible model", LogTerminal::Infeasible},
    {"Model is infeasible", LogTerminal::Infeasible},
    {"Unbounded model", LogTerminal::Unbounded},
    {"Model is unbounded", LogTerminal::Unbounded},
    {"Time limit reached", LogTerminal::TimeLimit},
    {"Solution limit reached", LogTerminal::OtherLimit},
    {"Node limit reached", LogTerminal::OtherLimit},
    {"Iteration limit reached", LogTerminal::OtherLimit},
    {"Work limit reached", LogTerminal::OtherLimit},
    {"Interrupt request received", LogTerminal::OtherLimit},
};

struct NodeRow {
  char marker = ' ';
  long long explored = 0;
  std::optional<double> incumbent;
  std::optional<double> bound;
  std::optional<double> gap;
};

// Columns vary in the middle (current node obj, depth, IntInf may be blank or
// "cutoff"), so rows are read from both ends.
std::optional<NodeRow> parse_node_row(std::string_view line)
{
  if (line.empty()) return std::nullopt;
  NodeRow row;
  std::string_view body = line;
  if (line[0] == 'H' || line[0] == '*') {
    row.marker = line[0];
    body = line.substr(1);
  } else if (line[0] != ' ') {
    return std::nullopt;
  }
  auto toks = tokenize(body);
  if (toks.size() < 7) return std::nullopt;
  auto expl = parse_int(toks[0].text);
  if (!expl || !parse_int(toks[1].text)) return std::nullopt;
  const auto& time = toks.back().text;
  if (time.size() < 2 || time.back() != 's' || !parse_finite(time.substr(0, time.size() - 1)))
    return std::nullopt;
  const std::size_t n = toks.size();
  row.explored = *expl;
  row.gap = parse_percent(toks[n - 3].text);
  row.bound = parse_finite(toks[n - 4].text);
  row.incumbent = parse_finite(toks[n - 5].text);
  return row;
}

}  // namespace

SolveSummary gurobi_summary(const std::vector<std::string_view>& lines)
{
  SolveSummary s;
  s.solver_version = gurobi_version(lines);
  for (auto line : lines) {
    for (const auto& t : kTerminalLines) {
      if (starts_with(line, t.prefix) && s.terminal == LogTerminal::Unknown) {
        s.terminal = t.terminal;
        s.status_text = std::string(trim(line));
      }
    }
    if (starts_with(line, "Explored ")) {
      // "Explored 300 nodes (11095 simplex iterations) in 1.20 seconds (...)"
      auto toks = tokenize(line);
      if (toks.size() >= 2) s.nodes = parse_int(toks[1].text);
      for (std::size_t i = 0; i + 1 < toks.size(); ++i)
        if (toks[i].text == "in") s.solve_time = parse_finite(toks[i + 1].text);
    } else if (starts_with(line, "Solved in ")) {
      // LP: "Solved in 3 iterations and 0.01 seconds (...)"
      auto toks = tokenize(line);
      for (std::size_t i = 0; i + 1 < toks.size(); ++i)
        if (toks[i].text == "and") s.solve_time = parse_finite(toks[i + 1].text);
      if (!s.nodes) s.nodes = 0;
    } else if (starts_with(line, "Best objective ")) {
      // "Best objective 5.0e+01, best bound 5.0e+01, gap 0.0000%"
      std::string l(line);
      std::replace(l.begin(), l.end(), ',', ' ');
      auto toks = tokenize(l);
      for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
        if (toks[i].text == "objective") s.primal_bound = parse_finite(toks[i + 1].text);
        if (toks[i].text == "bound") s.dual_bound = parse_finite(toks[i + 1].text);
        if (toks[i].text == "gap") s.gap_percent = parse_percent(toks[i + 1].text);
      }
    } else if (auto v = field_after(line, "Optimal objective")) {
      s.primal_bound = parse_finite(*v);
      s.dual_bound = s.primal_bound;
      s.gap_percent = 0.0;
    }
  }
  s.has_incumbent = s.primal_bound.has_value();
  return s;
}

}  // namespace detail

SolverInternalFeatures parse_gurobi_log(std::string_view text, const CutNameMap* map)
{
  using namespace detail;
  const CutNameMap& names = map ? *map : default_cut_map(SolverId::Gurobi);
  const auto lines = complete_lines(text);

  SolverInternalFeatures f;
  f.solver = SolverId::Gurobi;
  f.solver_version = gurobi_version(lines);
  bool recognized = !f.solver_version.empty();
  bool in_table = false;
  bool in_cuts = false;
  bool have_cut_table = false;

  for (auto line : lines) {
    if (in_cuts) {
      if (trim(line).empty() || !starts_with(line, "  ")) {
        in_cuts = false;
      } else {
        const auto colon = line.rfind(':');
        auto count = colon == std::string_view::npos ? std::nullopt : parse_int(line.substr(colon + 1));
        if (!count) {
          ++f.diagnostics.unrecognized_lines;
        } else {
          ++f.diagnostics.lines_matched;
          add_cut(f, names, trim(line.substr(0, colon)), *count);
        }
        continue;
      }
    }
    if (starts_with(line, "Cutting planes:")) {
      in_cuts = true;
      in_table = false;
      have_cut_table = true;
      ++f.diagnostics.lines_matched;
      continue;
    }
    if (starts_with(line, "Found heuristic solution:")) {
      ++f.heuristic_success_count;
      ++f.diagnostics.lines_matched;
      continue;
    }
    if (line.find("Expl Unexpl") != std::string_view::npos) {
      in_table = true;
      recognized = true;
      ++f.diagnostics.lines_matched;
      continue;
    }
    if (starts_with(line, "Explored ") || starts_with(line, "Solution count")) {
      in_table = false;
      continue;
    }
    if (!in_table || trim(line).empty()) continue;
    if (line.find("Obj  Depth") != std::string_view::npos) {
      ++f.diagnostics.lines_matched;
      continue;
    }
    auto row = parse_node_row(line);
    if (!row) {
      // Prose in the table region: "Concurrent spin time", restarts, etc.
      continue;
    }
    ++f.diagnostics.lines_matched;
    if (row->marker == 'H') ++f.heuristic_success_count;
    if (row->explored == 0 && row->incumbent && row->bound) {
      f.root_incumbent = row->incumbent;
      f.root_bound = row->bound;
      auto g = row->gap;
      if (!g) {
        g = 100.0 * std::fabs(*row->incumbent - *row->bound) / std::max(std::fabs(*row->incumbent), 1e-10);
        f.diagnostics.notes.push_back("root gap recomputed from bounds");
      }
      f.root_gap_percent = g;
    }
  }
  if (!recognized) {
    const auto s = gurobi_summary(lines);
    if (s.terminal == LogTerminal::Unknown)
      throw Error(ErrorCode::UnrecognizedLog, "no Gurobi banner, node table or status line found");
  }

  const SolveSummary summary = gurobi_summary(lines);
  finish_features(f, summary, have_cut_table);
  return f;
}

}  // namespace genbench
