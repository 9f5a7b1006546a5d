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

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "genbench/cut_vector.hpp"
#include "genbench/solver_types.hpp"

namespace genbench {

struct ParseDiagnostics {
  std::size_t lines_matched = 0;
  /// Lines inside a recognized block that did not fit its grammar.
  std::size_t unrecognized_lines = 0;
  std::vector<std::string> missing_fields;
  std::vector<std::string> notes;
  /// Cut classes with nonzero counts that have no canonical slot.
  std::map<std::string, std::int64_t> unmapped_cuts;

  bool operator==(const ParseDiagnostics&) const = default;
};

struct SolverInternalFeatures {
  SolverId solver = SolverId::Scip;
  std::string instance;
  std::string solver_version;
  /// Gap at the end of root processing as the solver printed it (percent).
  std::optional<double> root_gap_percent;
  /// Bounds on the same root row, and (inc - bound) / max(1, |inc|) from them.
  std::optional<double> root_incumbent;
  std::optional<double> root_bound;
  std::optional<double> root_gap_rel;
  std::int64_t heuristic_success_count = 0;
  CutVector cut_vector{};
  ParseDiagnostics diagnostics;

  bool operator==(const SolverInternalFeatures&) const = default;
};

/// How the run ended according to the log's own summary.
enum class LogTerminal { Unknown, Optimal, Infeasible, Unbounded, InfeasibleOrUnbounded, TimeLimit, OtherLimit };

struct SolveSummary {
  std::string solver_version;
  LogTerminal terminal = LogTerminal::Unknown;
  std::string status_text;  // as printed
  std::optional<std::int64_t> nodes;
  std::optional<double> solve_time;
  std::optional<double> primal_bound;
  std::optional<double> dual_bound;
  std::optional<double> gap_percent;
  bool has_incumbent = false;
};

/// Canonical-slot name map, loaded from "solver_name = Slot" lines.
using CutNameMap = std::map<std::string, std::size_t, std::less<>>;

CutNameMap parse_cut_map(std::string_view text);  // throws InvalidConfig
CutNameMap load_cut_map(const std::filesystem::path& path);
/// Maps shipped with the toolkit (data/cutmaps/<solver>.map, embedded at build time).
const CutNameMap& default_cut_map(SolverId solver);

/// Each parser throws UnrecognizedLog when the text carries none of the
/// solver's banner or table structure. Truncated logs parse without error.
SolverInternalFeatures parse_gurobi_log(std::string_view text, const CutNameMap* map = nullptr);
SolverInternalFeatures parse_scip_log(std::string_view text, const CutNameMap* map = nullptr);
SolverInternalFeatures parse_highs_log(std::string_view text, const CutNameMap* map = nullptr);
SolverInternalFeatures parse_log(SolverId solver, std::string_view text, const CutNameMap* map = nullptr);

SolveSummary parse_solve_summary(SolverId solver, std::string_view text);

/// (inc - bound) / max(1, |inc|), taken in absolute value so it is
/// independent of the objective sense.
double relative_gap(double incumbent, double bound);

}  // namespace genbench
