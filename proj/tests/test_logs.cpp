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
#include <string>
#include <vector>

#include "doctest.h"
#include "genbench/error.hpp"
#include "genbench/log_parsers.hpp"
#include "genbench/random.hpp"
#include "oracles.hpp"

using namespace genbench;
using namespace genbench::testing;

namespace {

std::string fixture(const std::string& name)
{
  std::ifstream in(std::string(GENBENCH_FIXTURE_DIR) + "/logs/" + name, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("log fixtures parse to their hand-checked values")
{
  for (const auto& e : expected_fixtures()) {
    CAPTURE(e.file);
    const auto f = parse_log(e.solver, fixture(e.file));
    CHECK(f.solver == e.solver);
    REQUIRE(f.root_gap_percent.has_value() == e.root_gap.has_value());
    if (e.root_gap) CHECK(*f.root_gap_percent == doctest::Approx(*e.root_gap).epsilon(1e-12));
    CHECK(f.heuristic_success_count == e.heuristics);
    CHECK(f.cut_vector == e.cut_vector);
    CHECK(f.diagnostics.unrecognized_lines == 0);
    CHECK(!f.solver_version.empty());
    for (auto c : f.cut_vector) CHECK(c >= 0);
    // Absent root gap is always reported.
    const bool flagged = std::find(f.diagnostics.missing_fields.begin(), f.diagnostics.missing_fields.end(),
                                   "root_gap") != f.diagnostics.missing_fields.end();
    CHECK(flagged == !e.root_gap.has_value());
  }
}

TEST_CASE("banner versions")
{
  CHECK(parse_scip_log(fixture("scip_is.log")).solver_version == "10.0.2");
  CHECK(parse_highs_log(fixture("highs_is.log")).solver_version == "1.15.1");
  CHECK(parse_gurobi_log(fixture("gurobi_is.log")).solver_version == "11.0.3");
}

TEST_CASE("unmapped cut classes go to diagnostics")
{
  const auto g = parse_gurobi_log(fixture("gurobi_is.log"));
  REQUIRE(g.diagnostics.unmapped_cuts.size() == 1);
  CHECK(g.diagnostics.unmapped_cuts.at("Lift-and-project") == 2);
  const auto t = parse_gurobi_log(fixture("gurobi_timelimit_noinc.log"));
  CHECK(t.diagnostics.unmapped_cuts.at("Projected implied bound") == 4);
  // Zero-count unmapped SCIP separators are not noise in the diagnostics.
  CHECK(parse_scip_log(fixture("scip_is.log")).diagnostics.unmapped_cuts.empty());
}

TEST_CASE("every fixture is rejected by the other parsers")
{
  for (const auto& e : expected_fixtures()) {
    CAPTURE(e.file);
    const std::string text = fixture(e.file);
    for (auto other : {SolverId::Gurobi, SolverId::Scip, SolverId::Highs}) {
      if (other == e.solver) continue;
      CAPTURE(to_string(other));
      try {
        (void)parse_log(other, text);
        FAIL("expected UnrecognizedLog");
      } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::UnrecognizedLog);
      }
    }
  }
  for (auto s : {SolverId::Gurobi, SolverId::Scip, SolverId::Highs}) {
    CHECK_THROWS_AS(parse_log(s, fixture("unrelated.log")), Error);
    CHECK_THROWS_AS(parse_log(s, ""), Error);
  }
}

TEST_CASE("parsers are pure")
{
  for (const auto& e : expected_fixtures()) {
    const std::string text = fixture(e.file);
    CHECK(parse_log(e.solver, text) == parse_log(e.solver, text));
  }
}

TEST_CASE("truncated log keeps what it has")
{
  const auto f = parse_scip_log(fixture("scip_truncated.log"));
  CHECK(f.root_gap_percent.has_value());
  const auto& missing = f.diagnostics.missing_fields;
  CHECK(std::find(missing.begin(), missing.end(), "cut_statistics") != missing.end());
  CHECK(std::find(missing.begin(), missing.end(), "final_status") != missing.end());
  CHECK(f.cut_vector == CutVector{});
}

TEST_CASE("no incumbent at the root")
{
  for (auto [file, solver] : {std::pair{"highs_infeasible.log", SolverId::Highs},
                              std::pair{"gurobi_timelimit_noinc.log", SolverId::Gurobi}}) {
    const auto f = parse_log(solver, fixture(file));
    CHECK_FALSE(f.root_gap_percent.has_value());
    CHECK_FALSE(f.root_gap_rel.has_value());
  }
}

TEST_CASE("truncation monotonicity over every prefix")
{
  Rng rng(11);
  for (const auto& e : expected_fixtures()) {
    CAPTURE(e.file);
    const std::string text = fixture(e.file);
    const auto full = parse_log(e.solver, text);
    std::vector<std::size_t> cuts_at;
    for (std::size_t i = 0; i < text.size(); ++i)
      if (text[i] == '\n') {
        cuts_at.push_back(i);
        cuts_at.push_back(i + 1);
      }
    for (int k = 0; k < 200; ++k) cuts_at.push_back(static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(text.size()))));
    for (auto n : cuts_at) {
      const std::string_view prefix(text.data(), n);
      SolverInternalFeatures p;
      try {
        p = parse_log(e.solver, prefix);
      } catch (const Error& err) {
        // Only a prefix that lost the banner may be unrecognizable.
        CHECK(err.code() == ErrorCode::UnrecognizedLog);
        CHECK(n < text.find('\n') + 1);
        continue;
      }
      CHECK(p.heuristic_success_count <= full.heuristic_success_count);
      for (std::size_t s = 0; s < kNumCutSlots; ++s) CHECK(p.cut_vector[s] <= full.cut_vector[s]);
    }
  }
}

TEST_CASE("root gap equals final gap when solved at the root")
{
  int checked = 0;
  for (const auto& e : expected_fixtures()) {
    const std::string text = fixture(e.file);
    const auto s = parse_solve_summary(e.solver, text);
    if (s.terminal != LogTerminal::Optimal || !s.nodes || *s.nodes > 1 || !s.gap_percent) continue;
    const auto f = parse_log(e.solver, text);
    CAPTURE(e.file);
    REQUIRE(f.root_gap_percent.has_value());
    CHECK(std::fabs(*f.root_gap_percent - *s.gap_percent) <= 0.01);
    ++checked;
  }
  CHECK(checked >= 3);
}

TEST_CASE("solve summaries")
{
  auto scip = parse_solve_summary(SolverId::Scip, fixture("scip_is.log"));
  CHECK(scip.terminal == LogTerminal::Optimal);
  CHECK(scip.nodes == 300);
  CHECK(scip.solve_time == doctest::Approx(2.63));
  CHECK(scip.primal_bound == doctest::Approx(50.0));
  CHECK(scip.has_incumbent);

  // Restarted runs report the total over all runs.
  CHECK(parse_solve_summary(SolverId::Scip, fixture("scip_restarts.log")).nodes == 6);

  auto tl = parse_solve_summary(SolverId::Scip, fixture("scip_timelimit.log"));
  CHECK(tl.terminal == LogTerminal::TimeLimit);
  CHECK(tl.has_incumbent);
  CHECK(tl.dual_bound == doctest::Approx(1011.14088469790));

  auto inf = parse_solve_summary(SolverId::Scip, fixture("scip_infeasible.log"));
  CHECK(inf.terminal == LogTerminal::Infeasible);
  CHECK_FALSE(inf.has_incumbent);
  CHECK(parse_solve_summary(SolverId::Scip, fixture("scip_unbounded.log")).terminal == LogTerminal::Unbounded);

  auto h = parse_solve_summary(SolverId::Highs, fixture("highs_timelimit.log"));
  CHECK(h.terminal == LogTerminal::TimeLimit);
  CHECK(h.primal_bound == doctest::Approx(36.0));
  CHECK(h.dual_bound == doctest::Approx(33.0));
  CHECK(h.nodes == 0);
  CHECK(parse_solve_summary(SolverId::Highs, fixture("highs_unbounded.log")).terminal == LogTerminal::Unbounded);
  CHECK(parse_solve_summary(SolverId::Highs, fixture("highs_infeasible.log")).terminal == LogTerminal::Infeasible);

  auto g = parse_solve_summary(SolverId::Gurobi, fixture("gurobi_timelimit_noinc.log"));
  CHECK(g.terminal == LogTerminal::TimeLimit);
  CHECK_FALSE(g.has_incumbent);
  CHECK(g.nodes == 6);
  CHECK(parse_solve_summary(SolverId::Gurobi, fixture("gurobi_is.log")).nodes == 300);

  auto trunc = parse_solve_summary(SolverId::Scip, fixture("scip_truncated.log"));
  CHECK(trunc.terminal == LogTerminal::Unknown);
  CHECK_FALSE(trunc.nodes.has_value());
}

TEST_CASE("cut maps")
{
  const auto& scip = default_cut_map(SolverId::Scip);
  CHECK(scip.at("gomorymi") == *cut_slot_index("Gomory"));
  CHECK(scip.at("knapsackcover") == *cut_slot_index("Cover"));
  CHECK(default_cut_map(SolverId::Highs).empty());
  CHECK(default_cut_map(SolverId::Gurobi).size() == kNumCutSlots);

  CHECK_THROWS_AS(parse_cut_map("gomory Gomory\n"), Error);
  CHECK_THROWS_AS(parse_cut_map("gomory = NotASlot\n"), Error);

  // A replacement map changes the result without code changes.
  const auto custom = parse_cut_map("# all to MIR\nzerohalf = MIR\n");
  const auto f = parse_scip_log(fixture("scip_is.log"), &custom);
  CHECK(f.cut_vector == cuts({{"MIR", 147}}));
  CHECK(f.diagnostics.unmapped_cuts.at("gomorymi") == 28);
}

TEST_CASE("relative gap")
{
  CHECK(relative_gap(10.0, 8.0) == doctest::Approx(0.2));
  CHECK(relative_gap(8.0, 10.0) == doctest::Approx(0.25));
  CHECK(relative_gap(0.5, 0.0) == doctest::Approx(0.5));  // denominator floored at 1
  const auto f = parse_scip_log(fixture("scip_is.log"));
  REQUIRE(f.root_gap_rel.has_value());
  CHECK(*f.root_gap_rel == doctest::Approx(std::fabs(48.0 - 55.49695) / 48.0));
}
