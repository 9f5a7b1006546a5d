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

LogTerminal scip_terminal(std::string_view text)
{
  const std::string t = lower(text);
  if (t.find("infeasible or unbounded") != std::string::npos) return LogTerminal::InfeasibleOrUnbounded;
  if (t.find("infeasible") != std::string::npos) return LogTerminal::Infeasible;
  if (t.find("unbounded") != std::string::npos) return LogTerminal::Unbounded;
  if (t.find("optimal solution found") != std::string::npos) return LogTerminal::Optimal;
  // A gap limit stops at a proven-within-tolerance solution.
  if (t.find("gap limit") != std::string::npos) return LogTerminal::Optimal;
  if (t.find("time limit") != std::string::npos) return LogTerminal::TimeLimit;
  if (t.find("limit") != std::string::npos || t.find("interrupt") != std::string::npos)
    return LogTerminal::OtherLimit;
  return LogTerminal::Unknown;
}

std::string scip_version(const std::vector<std::string_view>& lines)
{
  for (auto line : lines) {
    if (!starts_with(line, "SCIP version ")) continue;
    auto toks = tokenize(line);
    if (toks.size() >= 3) return std::string(toks[2].text);
  }
  return {};
}

struct SepaRow {
  std::string name;
  bool child = false;
  std::int64_t applied = 0;
};

}  // namespace

SolveSummary scip_summary(const std::vector<std::string_view>& lines)
{
  SolveSummary s;
  s.solver_version = scip_version(lines);
  bool have_status = false, have_time = false, have_nodes = false, have_primal = false,
       have_dual = false, have_gap = false;
  std::int64_t solutions = -1;
  for (auto line : lines) {
    if (auto v = field_after(line, "SCIP Status"); v && !have_status) {
      have_status = true;
      s.status_text = std::string(*v);
      const auto lb = v->find('[');
      const auto rb = v->rfind(']');
      std::string_view inner = *v;
      if (lb != std::string_view::npos && rb != std::string_view::npos && rb > lb)
        inner = v->substr(lb + 1, rb - lb - 1);
      s.terminal = scip_terminal(inner);
      if (s.terminal == LogTerminal::Unknown && v->find("problem is solved") != std::string_view::npos)
        s.terminal = LogTerminal::Optimal;
    } else if (auto v = field_after(line, "Solving Time (sec)"); v && !have_time) {
      have_time = true;
      s.solve_time = parse_finite(*v);
    } else if (auto v = field_after(line, "Solving Nodes"); v && !have_nodes) {
      have_nodes = true;
      // "3 (total of 5 nodes in 3 runs)" reports the current run first.
      const auto total = v->find("total of ");
      if (total != std::string_view::npos) {
        auto toks = tokenize(v->substr(total + 9));
        if (!toks.empty()) s.nodes = parse_int(toks[0].text);
      } else {
        auto toks = tokenize(*v);
        if (!toks.empty()) s.nodes = parse_int(toks[0].text);
      }
    } else if (auto v = field_after(line, "Primal Bound"); v && !have_primal) {
      have_primal = true;
      auto toks = tokenize(*v);
      if (!toks.empty()) s.primal_bound = parse_finite(toks[0].text);
      const auto paren = v->find('(');
      if (paren != std::string_view::npos) {
        auto rest = tokenize(v->substr(paren + 1));
        if (!rest.empty()) {
          if (auto n = parse_int(rest[0].text)) solutions = *n;
        }
      }
    } else if (auto v = field_after(line, "Dual Bound"); v && !have_dual) {
      have_dual = true;
      auto toks = tokenize(*v);
      if (!toks.empty()) s.dual_bound = parse_finite(toks[0].text);
    } else if (auto v = field_after(line, "Gap"); v && !have_gap && starts_with(line, "Gap ")) {
      have_gap = true;
      auto toks = tokenize(*v);
      if (!toks.empty()) s.gap_percent = parse_finite(toks[0].text);
    }
  }
  // SCIP prints +-1e+20 for "no value".
  auto drop_infinite = [](std::optional<double>& x) {
    if (x && std::fabs(*x) >= 1e20) x.reset();
  };
  drop_infinite(s.primal_bound);
  drop_infinite(s.dual_bound);
  s.has_incumbent = s.primal_bound.has_value() && solutions != 0;
  if (!s.has_incumbent) s.primal_bound.reset();
  return s;
}

}  // namespace detail

SolverInternalFeatures parse_scip_log(std::string_view text, const CutNameMap* map)
{
  using namespace detail;
  const CutNameMap& names = map ? *map : default_cut_map(SolverId::Scip);
  const auto lines = complete_lines(text);

  SolverInternalFeatures f;
  f.solver = SolverId::Scip;
  f.solver_version = scip_version(lines);

  bool recognized = !f.solver_version.empty();
  int heur_col = -1, node_col = -1, dual_col = -1, primal_col = -1, gap_col = -1;
  std::size_t header_fields = 0;

  bool in_sepa = false;
  std::size_t applied_idx = 0;
  bool have_cut_table = false;
  std::vector<SepaRow> sepa_rows;
  bool sepa_closed = false;

  for (std::size_t li = 0; li < lines.size(); ++li) {
    std::string_view line = lines[li];

    if (in_sepa) {
      if (!starts_with(line, "  ")) {
        in_sepa = false;
        sepa_closed = true;
      } else {
        ++f.diagnostics.lines_matched;
        const auto colon = line.find(':');
        if (colon == std::string_view::npos) {
          ++f.diagnostics.unrecognized_lines;
          continue;
        }
        std::string_view name = trim(line.substr(0, colon));
        SepaRow row;
        if (starts_with(name, ">")) {
          row.child = true;
          name = trim(name.substr(1));
        }
        row.name = std::string(name);
        if (row.name == "cut pool") continue;
        auto vals = tokenize(line.substr(colon + 1));
        if (vals.size() <= applied_idx) {
          ++f.diagnostics.unrecognized_lines;
          continue;
        }
        auto applied = parse_int(vals[applied_idx].text);
        if (!applied) {
          const auto dash = vals[applied_idx].text == "-";
          if (!dash) ++f.diagnostics.unrecognized_lines;
          row.applied = 0;
        } else {
          row.applied = *applied;
        }
        sepa_rows.push_back(std::move(row));
        continue;
      }
    }

    if (starts_with(line, "Separators") && line.find(':') != std::string_view::npos) {
      auto cols = tokenize(line.substr(line.find(':') + 1));
      for (std::size_t i = 0; i < cols.size(); ++i)
        if (cols[i].text == "Applied") {
          applied_idx = i;
          in_sepa = true;
          have_cut_table = true;
          recognized = true;
          ++f.diagnostics.lines_matched;
        }
      if (!in_sepa) ++f.diagnostics.unrecognized_lines;
      continue;
    }

    if (starts_with(line, "feasible solution found by ") &&
        line.find(" heuristic") != std::string_view::npos) {
      ++f.heuristic_success_count;
      ++f.diagnostics.lines_matched;
      continue;
    }

    // Display table header, repeated periodically.
    if (line.find("| node") != std::string_view::npos && line.find("dualbound") != std::string_view::npos) {
      recognized = true;
      ++f.diagnostics.lines_matched;
      std::vector<std::string> fields;
      std::size_t start = 0;
      while (true) {
        const auto bar = line.find('|', start);
        fields.emplace_back(trim(line.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start)));
        if (bar == std::string_view::npos) break;
        start = bar + 1;
      }
      header_fields = fields.size();
      heur_col = node_col = dual_col = primal_col = gap_col = -1;
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (fields[i] == "mem/heur") heur_col = static_cast<int>(i);
        else if (fields[i] == "node") node_col = static_cast<int>(i);
        else if (fields[i] == "dualbound") dual_col = static_cast<int>(i);
        else if (fields[i] == "primalbound") primal_col = static_cast<int>(i);
        else if (fields[i] == "gap") gap_col = static_cast<int>(i);
      }
      continue;
    }

    if (header_fields > 0 && line.size() > 2 && line.find('|') != std::string_view::npos &&
        (line[0] == ' ' || std::isalpha(static_cast<unsigned char>(line[0])) || line[0] == '*')) {
      std::vector<std::string_view> fields;
      std::size_t start = 0;
      while (true) {
        const auto bar = line.find('|', start);
        fields.push_back(trim(line.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start)));
        if (bar == std::string_view::npos) break;
        start = bar + 1;
      }
      if (fields.size() != header_fields || fields[0].size() < 2 || fields[0].back() != 's') {
        ++f.diagnostics.unrecognized_lines;
        continue;
      }
      ++f.diagnostics.lines_matched;
      const char marker = line[0];
      if (marker != ' ' && marker != '*' && heur_col >= 0) {
        // '*' marks solutions from LP, strong branching or pseudo solutions.
        const auto heur = fields[heur_col];
        if (heur != "LP" && heur != "strongbr" && heur != "pseudosol" && heur != "relaxation")
          ++f.heuristic_success_count;
      }
      if (node_col < 0 || dual_col < 0 || primal_col < 0) continue;
      auto node = parse_int(fields[node_col]);
      if (!node) {
        ++f.diagnostics.unrecognized_lines;
        continue;
      }
      if (*node == 1) {
        auto dual = parse_finite(fields[dual_col]);
        auto primal = parse_finite(fields[primal_col]);
        if (dual && primal && std::fabs(*dual) < 1e20 && std::fabs(*primal) < 1e20) {
          f.root_incumbent = primal;
          f.root_bound = dual;
          std::optional<double> g;
          if (gap_col >= 0) g = parse_percent(fields[gap_col]);
          if (!g) {
            g = 100.0 * std::fabs(*primal - *dual) / std::max(std::fabs(*primal), 1e-9);
            f.diagnostics.notes.push_back("root gap recomputed from bounds");
          }
          f.root_gap_percent = g;
        }
      }
      continue;
    }
  }
  if (in_sepa) f.diagnostics.notes.push_back("separator table truncated");

  if (!recognized) {
    // Summary-only logs are still SCIP logs.
    const auto s = scip_summary(lines);
    if (s.terminal == LogTerminal::Unknown)
      throw Error(ErrorCode::UnrecognizedLog, "no SCIP banner, display table or status line found");
  }

  // A parent row whose children follow is replaced by them. The last row of a
  // table that was cut off may be a parent whose children are missing, so it
  // is only used once the table is known to be complete.
  const std::size_t usable = (sepa_closed || sepa_rows.empty()) ? sepa_rows.size() : sepa_rows.size() - 1;
  for (std::size_t i = 0; i < usable; ++i) {
    const auto& row = sepa_rows[i];
    const bool has_children = i + 1 < sepa_rows.size() && sepa_rows[i + 1].child && !row.child;
    if (has_children) continue;
    add_cut(f, names, row.name, row.applied);
  }

  const SolveSummary summary = scip_summary(lines);
  finish_features(f, summary, have_cut_table);
  return f;
}

}  // namespace genbench
