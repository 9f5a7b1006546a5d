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
#include <fstream>
#include <sstream>

#include "genbench/error.hpp"
#include "genbench/log_parsers.hpp"
#include "log_common.hpp"

namespace genbench {

namespace detail {
std::string_view embedded_cut_map_text(SolverId solver);
}

std::string_view to_string(SolverId id)
{
  switch (id) {
    case SolverId::Gurobi: return "gurobi";
    case SolverId::Scip: return "scip";
    case SolverId::Highs: return "highs";
  }
  return "?";
}

SolverId solver_from_string(std::string_view name)
{
  const std::string n = detail::lower(detail::trim(name));
  if (n == "gurobi") return SolverId::Gurobi;
  if (n == "scip") return SolverId::Scip;
  if (n == "highs") return SolverId::Highs;
  throw Error(ErrorCode::InvalidConfig, "unknown solver '" + std::string(name) + "'");
}

std::string_view to_string(SolveStatus status)
{
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::FeasibleTimeLimit: return "feasible_time_limit";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unbounded: return "unbounded";
    case SolveStatus::TimeLimitNoIncumbent: return "time_limit_no_incumbent";
    case SolveStatus::Error: return "error";
  }
  return "?";
}

SolveStatus status_from_string(std::string_view name)
{
  for (auto s : {SolveStatus::Optimal, SolveStatus::FeasibleTimeLimit, SolveStatus::Infeasible,
                 SolveStatus::Unbounded, SolveStatus::TimeLimitNoIncumbent, SolveStatus::Error})
    if (to_string(s) == name) return s;
  throw Error(ErrorCode::InvalidConfig, "unknown solve status '" + std::string(name) + "'");
}

CutNameMap parse_cut_map(std::string_view text)
{
  CutNameMap map;
  std::size_t line_no = 0;
  for (auto raw : detail::split_lines(text)) {
    ++line_no;
    auto line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw Error(ErrorCode::InvalidConfig, "cut map line " + std::to_string(line_no) + ": expected 'name = Slot'");
    auto name = detail::trim(line.substr(0, eq));
    auto slot = detail::trim(line.substr(eq + 1));
    auto idx = cut_slot_index(slot);
    if (name.empty() || !idx)
      throw Error(ErrorCode::InvalidConfig,
                  "cut map line " + std::to_string(line_no) + ": unknown slot '" + std::string(slot) + "'");
    map[std::string(name)] = *idx;
  }
  return map;
}

CutNameMap load_cut_map(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open cut map " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_cut_map(ss.str());
}

const CutNameMap& default_cut_map(SolverId solver)
{
  static const CutNameMap scip = parse_cut_map(detail::embedded_cut_map_text(SolverId::Scip));
  static const CutNameMap gurobi = parse_cut_map(detail::embedded_cut_map_text(SolverId::Gurobi));
  static const CutNameMap highs = parse_cut_map(detail::embedded_cut_map_text(SolverId::Highs));
  switch (solver) {
    case SolverId::Scip: return scip;
    case SolverId::Gurobi: return gurobi;
    case SolverId::Highs: return highs;
  }
  return scip;
}

double relative_gap(double incumbent, double bound)
{
  return std::fabs(incumbent - bound) / std::max(1.0, std::fabs(incumbent));
}

SolverInternalFeatures parse_log(SolverId solver, std::string_view text, const CutNameMap* map)
{
  switch (solver) {
    case SolverId::Gurobi: return parse_gurobi_log(text, map);
    case SolverId::Scip: return parse_scip_log(text, map);
    case SolverId::Highs: return parse_highs_log(text, map);
  }
  throw Error(ErrorCode::InvalidConfig, "unknown solver");
}

SolveSummary parse_solve_summary(SolverId solver, std::string_view text)
{
  const auto lines = detail::complete_lines(text);
  switch (solver) {
    case SolverId::Gurobi: return detail::gurobi_summary(lines);
    case SolverId::Scip: return detail::scip_summary(lines);
    case SolverId::Highs: return detail::highs_summary(lines);
  }
  return {};
}

namespace detail {

void finish_features(SolverInternalFeatures& f, const SolveSummary& summary, bool has_cut_table)
{
  // Solved without branching: the root gap is the final gap.
  if (summary.terminal == LogTerminal::Optimal && summary.nodes && *summary.nodes <= 1 &&
      summary.gap_percent) {
    f.root_gap_percent = *summary.gap_percent;
    if (summary.primal_bound && summary.dual_bound) {
      f.root_incumbent = summary.primal_bound;
      f.root_bound = summary.dual_bound;
    }
    f.diagnostics.notes.push_back("solved at the root; root gap taken from the final summary");
  }
  if (f.root_incumbent && f.root_bound)
    f.root_gap_rel = relative_gap(*f.root_incumbent, *f.root_bound);
  else
    f.root_gap_rel.reset();
  if (!f.root_gap_percent) f.diagnostics.missing_fields.push_back("root_gap");
  if (!has_cut_table) f.diagnostics.missing_fields.push_back("cut_statistics");
  if (summary.terminal == LogTerminal::Unknown) f.diagnostics.missing_fields.push_back("final_status");
  if (f.solver_version.empty()) f.diagnostics.missing_fields.push_back("solver_version");
}

}  // namespace detail
}  // namespace genbench
