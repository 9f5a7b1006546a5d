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
#include <cctype>
#include <cmath>
#include <string>
#include <vector>

#include "log_common.hpp"

namespace genbench {
namespace detail {
namespace {

// Src letters of rows reporting a solution found by a primal heuristic.
constexpr std::string_view kHeuristicSources = "CFHIJLRZlpuz";

std::string highs_version(const std::vector<std::string_view>& lines)
{
  for (auto line : lines) {
    if (!starts_with(line, "Running HiGHS ")) continue;
    auto toks = tokenize(line);
    if (toks.size() >= 3) return std::string(toks[2].text);
  }
  return {};
}

LogTerminal highs_terminal(std::string_view status)
{
  const std::string t = lower(status);
  if (t.find("infeasible or unbounded") != std::string::npos ||
      t.find("primal infeasible or unbounded") != std::string::npos)
    return LogTerminal::InfeasibleOrUnbounded;
  if (t.find("infeasible") != std::string::npos) return LogTerminal::Infeasible;
  if (t.find("unbounded") != std::string::npos) return LogTerminal::Unbounded;
  if (t == "optimal") return LogTerminal::Optimal;
  if (t.find("time limit") != std::string::npos) return LogTerminal::TimeLimit;
  if (t.find("limit") != std::string::npos || t.find("interrupt") != std::string::npos)
    return LogTerminal::OtherLimit;
  return LogTerminal::Unknown;
}

struct NodeRow {
  char src = ' ';
  long long proc = 0;
  std::optional<double> bound;
  std::optional<double> sol;
  std::optional<double> gap;
};

bool is_time_token(std::string_view t)
{
  return t.size() >= 2 && t.back() == 's' && parse_finite(t.substr(0, t.size() - 1)).has_value();
}

// [Src] Proc InQueue Leaves Expl% BestBound BestSol Gap Cuts InLp Confl LpIters Time
std::optional<NodeRow> parse_node_row(std::string_view line)
{
  auto toks = tokenize(line);
  NodeRow row;
  std::size_t i = 0;
  if (toks.size() == 13) {
    if (toks[0].text.size() != 1 || !std::isalpha(static_cast<unsigned char>(toks[0].text[0])))
      return std::nullopt;
    row.src = toks[0].text[0];
    i = 1;
  } else if (toks.size() != 12) {
    return std::nullopt;
  }
  auto proc = parse_int(toks[i].text);
  if (!proc || !parse_int(toks[i + 1].text) || !parse_int(toks[i + 2].text)) return std::nullopt;
  if (!parse_percent(toks[i + 3].text)) return std::nullopt;
  if (!is_time_token(toks[i + 11].text)) return std::nullopt;
  row.proc = *proc;
  row.bound = parse_finite(toks[i + 4].text);
  row.sol = parse_finite(toks[i + 5].text);
  row.gap = parse_percent(toks[i + 6].text);
  return row;
}

}  // namespace

SolveSummary highs_summary(const std::vector<std::string_view>& lines)
{
  SolveSummary s;
  s.solver_version = highs_version(lines);
  bool in_report = false;
  for (auto raw : lines) {
    if (starts_with(raw, "Solving report")) {
      in_report = true;
      continue;
    }
    if (in_report) {
      auto line = trim(raw);
      if (auto v = field_after(line, "Status"); v && s.status_text.empty()) {
        s.status_text = std::string(*v);
        s.terminal = highs_terminal(*v);
      } else if (auto v = field_after(line, "Primal bound")) {
        s.primal_bound = parse_finite(*v);
      } else if (auto v = field_after(line, "Dual bound")) {
        s.dual_bound = parse_finite(*v);
      } else if (auto v = field_after(line, "Gap")) {
        auto toks = tokenize(*v);
        if (!toks.empty()) s.gap_percent = parse_percent(toks[0].text);
      } else if (auto v = field_after(line, "Timing"); v && !s.solve_time) {
        s.solve_time = parse_finite(*v);
      } else if (auto v = field_after(line, "Nodes")) {
        s.nodes = parse_int(*v);
      }
      continue;
    }
    // LP solves print a short model summary instead.
    if (auto v = field_after(raw, "Model status"); v && s.status_text.empty()) {
      s.status_text = std::string(*v);
      s.terminal = highs_terminal(*v);
      s.nodes = 0;
    } else if (auto v = field_after(raw, "Objective value")) {
      if (s.terminal == LogTerminal::Optimal) {
        s.primal_bound = parse_finite(*v);
        s.dual_bound = s.primal_bound;
        s.gap_percent = 0.0;
      }
    } else if (auto v = field_after(raw, "HiGHS run time"); v && !s.solve_time) {
      s.solve_time = parse_finite(*v);
    }
  }
  s.has_incumbent = s.primal_bound.has_value();
  return s;
}

}  // namespace detail

SolverInternalFeatures parse_highs_log(std::string_view text, const CutNameMap* map)
{
  using namespace detail;
  (void)map;  // HiGHS prints no per-class cut statistics.
  const auto lines = complete_lines(text);

  SolverInternalFeatures f;
  f.solver = SolverId::Highs;
  f.solver_version = highs_version(lines);
  bool recognized = !f.solver_version.empty();
  bool in_table = false;

  for (auto line : lines) {
    if (line.find("Proc.") != std::string_view::npos && line.find("InQueue") != std::string_view::npos) {
      in_table = true;
      recognized = true;
      ++f.diagnostics.lines_matched;
      continue;
    }
    if (starts_with(line, "Solving report")) {
      in_table = false;
      recognized = true;
      continue;
    }
    if (!in_table || trim(line).empty()) continue;
    auto row = parse_node_row(line);
    if (!row) continue;  // restart notices and other prose
    ++f.diagnostics.lines_matched;
    if (kHeuristicSources.find(row->src) != std::string_view::npos) ++f.heuristic_success_count;
    if (row->proc == 0 && row->bound && row->sol) {
      f.root_incumbent = row->sol;
      f.root_bound = row->bound;
      auto g = row->gap;
      if (!g) {
        g = 100.0 * std::fabs(*row->sol - *row->bound) / std::max(std::fabs(*row->sol), 1e-9);
        f.diagnostics.notes.push_back("root gap recomputed from bounds");
      }
      f.root_gap_percent = g;
    }
  }
  if (!recognized) throw Error(ErrorCode::UnrecognizedLog, "no HiGHS banner, node table or solving report found");

  f.diagnostics.notes.push_back("HiGHS reports no per-class cut statistics; cut vector is zero");
  const SolveSummary summary = highs_summary(lines);
  finish_features(f, summary, false);
  return f;
}

}  // namespace genbench
