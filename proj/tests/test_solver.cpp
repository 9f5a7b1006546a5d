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
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "genbench/error.hpp"
#include "genbench/generators.hpp"
#include "genbench/random.hpp"
#include "genbench/solver.hpp"

using namespace genbench;
namespace fs = std::filesystem;

namespace {

fs::path fixture_path(const std::string& rel) { return fs::path(GENBENCH_FIXTURE_DIR) / rel; }

fs::path scratch_dir(const std::string& name)
{
  fs::path p = fs::temp_directory_path() / ("genbench_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string read_file(const fs::path& p)
{
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SolveRecord rec(SolveStatus status, std::int64_t nodes = 0, double time = 1.0)
{
  SolveRecord r;
  r.status = status;
  r.nodes = nodes;
  r.nodes_known = true;
  r.wall_time = time;
  r.solve_time = time;
  return r;
}

SolverConfig scip_config(double limit = 30.0)
{
  SolverConfig c;
  c.solver = SolverId::Scip;
  c.time_limit = limit;
  c.seed = 3;
  return c;
}

}  // namespace

TEST_CASE("config validation")
{
  SolverConfig c = scip_config();
  CHECK_NOTHROW(validate(c));
  c.time_limit = 0.0;
  CHECK_THROWS_AS(validate(c), Error);
  c = scip_config();
  c.threads = 0;
  CHECK_THROWS_AS(validate(c), Error);

  c = scip_config();
  c.parameters["no/such/param"] = "1";
  try {
    validate(c);
    FAIL("expected UnknownParameter");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownParameter);
  }
  // Rejected before anything is launched, even with a bogus executable.
  c.executable = "/nonexistent/solver";
  try {
    (void)run_solver(fixture_path("instances/trivial_optimal.mps"), c);
    FAIL("expected UnknownParameter");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownParameter);
  }

  c = scip_config();
  c.parameters["heuristics/emphasis"] = "sometimes";
  CHECK_THROWS_AS(validate(c), Error);
  c.parameters["heuristics/emphasis"] = "aggressive";
  CHECK_NOTHROW(validate(c));

  SolverConfig g;
  g.solver = SolverId::Gurobi;
  g.time_limit = 60;
  g.parameters["MIPFocus"] = "x";
  CHECK_THROWS_AS(validate(g), Error);
  g.parameters["MIPFocus"] = "2";
  CHECK_NOTHROW(validate(g));
}

TEST_CASE("adapter invocations")
{
  SolverConfig c = scip_config(12.5);
  c.parameters["separating/emphasis"] = "off";
  c.parameters["limits/gap"] = "0.01";
  auto inv = build_invocation(c, "/opt/scip", "/data/a.mps", "/run/logs/a.log");
  REQUIRE(inv.files.size() == 1);
  CHECK(inv.files[0].first == "/run/logs/a.log.set");
  const std::string& set = inv.files[0].second;
  CHECK(set.find("limits/time = 12.5\n") != std::string::npos);
  CHECK(set.find("randomization/randomseedshift = 3\n") != std::string::npos);
  CHECK(set.find("parallel/maxnthreads = 1\n") != std::string::npos);
  CHECK(set.find("limits/gap = 0.01\n") != std::string::npos);
  CHECK(inv.argv == std::vector<std::string>{"/opt/scip", "-s", "/run/logs/a.log.set", "-c",
                                             "read /data/a.mps set separating emphasis off optimize "
                                             "display statistics quit"});

  SolverConfig h;
  h.solver = SolverId::Highs;
  h.time_limit = 5;
  h.seed = (1ULL << 40) + 9;
  inv = build_invocation(h, "/opt/highs", "/data/a.mps", "/run/a.log");
  CHECK(inv.files.empty());
  CHECK(inv.argv == std::vector<std::string>{"/opt/highs", "--model_file", "/data/a.mps", "--time_limit", "5",
                                             "--threads", "1", "--random_seed", "9"});
  h.parameters["presolve"] = "off";
  inv = build_invocation(h, "/opt/highs", "/data/a.mps", "/run/a.log");
  REQUIRE(inv.files.size() == 1);
  CHECK(inv.files[0].second == "presolve = off\n");

  SolverConfig g;
  g.solver = SolverId::Gurobi;
  g.time_limit = 120;
  g.threads = 1;
  g.parameters["Heuristics"] = "0.05";
  inv = build_invocation(g, "/opt/gurobi_cl", "/data/a.mps", "/run/a.log");
  CHECK(inv.argv == std::vector<std::string>{"/opt/gurobi_cl", "TimeLimit=120", "Threads=1", "Seed=0",
                                             "Heuristics=0.05", "/data/a.mps"});
}

TEST_CASE("solver discovery")
{
  CHECK_THROWS_AS(discover_solver(SolverId::Scip, "/nonexistent/scip"), Error);
  const fs::path hang = fixture_path("fake_solvers/hang");
  CHECK(discover_solver(SolverId::Highs, hang) == fs::absolute(hang));

  ::setenv("GENBENCH_SOLVER_GUROBI", hang.c_str(), 1);
  CHECK(discover_solver(SolverId::Gurobi) == fs::absolute(hang));
  ::setenv("GENBENCH_SOLVER_GUROBI", "/nonexistent/gurobi_cl", 1);
  try {
    (void)discover_solver(SolverId::Gurobi);
    FAIL("expected SolverNotFound");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SolverNotFound);
  }
  ::unsetenv("GENBENCH_SOLVER_GUROBI");
  // The bundled shims are found without configuration.
  CHECK_NOTHROW(discover_solver(SolverId::Scip));
}

TEST_CASE("status classification is total")
{
  const std::vector<std::pair<std::string, SolverId>> logs = {
      {"scip_is.log", SolverId::Scip},           {"scip_timelimit.log", SolverId::Scip},
      {"scip_infeasible.log", SolverId::Scip},   {"scip_unbounded.log", SolverId::Scip},
      {"scip_truncated.log", SolverId::Scip},    {"highs_is.log", SolverId::Highs},
      {"highs_timelimit.log", SolverId::Highs},  {"highs_infeasible.log", SolverId::Highs},
      {"highs_unbounded.log", SolverId::Highs},  {"gurobi_is.log", SolverId::Gurobi},
      {"gurobi_timelimit_noinc.log", SolverId::Gurobi}, {"gurobi_infeasible.log", SolverId::Gurobi},
      {"unrelated.log", SolverId::Scip}};
  const std::vector<SolveStatus> expected = {
      SolveStatus::Optimal,    SolveStatus::FeasibleTimeLimit,    SolveStatus::Infeasible,
      SolveStatus::Unbounded,  SolveStatus::Error,                SolveStatus::Optimal,
      SolveStatus::FeasibleTimeLimit, SolveStatus::Infeasible,    SolveStatus::Unbounded,
      SolveStatus::Optimal,    SolveStatus::TimeLimitNoIncumbent, SolveStatus::Infeasible,
      SolveStatus::Error};
  for (std::size_t i = 0; i < logs.size(); ++i) {
    CAPTURE(logs[i].first);
    const std::string text = read_file(fixture_path("logs/" + logs[i].first));
    const auto r = classify_run(logs[i].second, text, {0, false, true});
    CHECK(r.status == expected[i]);
    if (r.status == SolveStatus::Optimal) {
      CHECK(r.incumbent.has_value());
      CHECK(r.bound.has_value());
    }
    // Every outcome combination maps to exactly one status without throwing.
    for (int code : {0, 1, 139})
      for (bool killed : {false, true})
        for (bool launched : {false, true}) CHECK_NOTHROW(classify_run(logs[i].second, text, {code, killed, launched}));
  }
  // Killed mid-run with an incumbent at the root.
  const std::string trunc = read_file(fixture_path("logs/scip_truncated.log"));
  CHECK(classify_run(SolverId::Scip, trunc, {137, true, true}).status == SolveStatus::FeasibleTimeLimit);
  CHECK(classify_run(SolverId::Scip, "", {137, true, true}).status == SolveStatus::TimeLimitNoIncumbent);
  CHECK(classify_run(SolverId::Scip, "", {127, false, false}).status == SolveStatus::Error);
  // Node count comes from the summary, including restarts.
  CHECK(classify_run(SolverId::Scip, read_file(fixture_path("logs/scip_restarts.log")), {}).nodes == 6);
}

TEST_CASE("run_solver on the trivial examples")
{
  for (SolverId solver : {SolverId::Scip, SolverId::Highs}) {
    CAPTURE(to_string(solver));
    SolverConfig c;
    c.solver = solver;
    c.time_limit = 30;
    const fs::path dir = scratch_dir(std::string("trivial_") + std::string(to_string(solver)));

    c.log_path = dir / "opt.log";
    auto r = run_solver(fixture_path("instances/trivial_optimal.mps"), c);
    CHECK(r.status == SolveStatus::Optimal);
    REQUIRE(r.incumbent.has_value());
    CHECK(*r.incumbent == doctest::Approx(1.0));
    CHECK(r.bound.has_value());
    CHECK(r.instance == "trivial_optimal");
    CHECK(fs::file_size(c.log_path) > 0);
    CHECK(r.wall_time <= c.time_limit + kWatchdogGraceSeconds);

    c.log_path = dir / "inf.log";
    CHECK(run_solver(fixture_path("instances/trivial_infeasible.mps"), c).status == SolveStatus::Infeasible);

    c.log_path = dir / "unb.log";
    CHECK(run_solver(fixture_path("instances/trivial_unbounded.mps"), c).status == SolveStatus::Unbounded);
  }
}

TEST_CASE("watchdog kills a hung solver")
{
  SolverConfig c;
  c.solver = SolverId::Highs;
  c.executable = fixture_path("fake_solvers/hang");
  c.time_limit = 0.5;
  c.log_path = scratch_dir("hang") / "hang.log";
  const auto r = run_solver(fixture_path("instances/trivial_optimal.mps"), c);
  CHECK(r.killed);
  CHECK(r.status == SolveStatus::TimeLimitNoIncumbent);
  CHECK(r.wall_time <= c.time_limit + kWatchdogGraceSeconds);
  CHECK(r.wall_time >= c.time_limit);
}

TEST_CASE("a crashing solver yields an error record")
{
  SolverConfig c;
  c.solver = SolverId::Scip;
  c.executable = fixture_path("fake_solvers/crash");
  c.time_limit = 5;
  c.log_path = scratch_dir("crash") / "crash.log";
  const auto r = run_solver(fixture_path("instances/trivial_optimal.mps"), c);
  CHECK(r.status == SolveStatus::Error);
  CHECK(r.exit_code == 139);
  CHECK_FALSE(r.killed);
}

TEST_CASE("batch runs write the run directory in name order")
{
  const fs::path run = scratch_dir("batch");
  std::vector<fs::path> inst = {fixture_path("instances/trivial_unbounded.mps"),
                                fixture_path("instances/trivial_optimal.mps"),
                                fixture_path("instances/trivial_infeasible.mps")};
  BatchOptions opt;
  opt.jobs = 3;
  const auto records = run_solver_batch(inst, scip_config(), run, opt);
  REQUIRE(records.size() == 3);
  CHECK(records[0].instance == "trivial_infeasible");
  CHECK(records[1].instance == "trivial_optimal");
  CHECK(records[2].instance == "trivial_unbounded");
  CHECK(records[1].status == SolveStatus::Optimal);
  CHECK(fs::exists(run / "logs" / "trivial_optimal.log"));
  CHECK(fs::exists(run / "instances" / "trivial_optimal.mps"));
  CHECK(read_records(run / "records.jsonl") == records);
  const auto meta = nlohmann::ordered_json::parse(read_file(run / "run_meta.json"));
  CHECK(meta["solver_version"] == "10.0.2");
  CHECK(meta["config"]["time_limit"] == 30.0);
}

TEST_CASE("reruns are deterministic for the bundled solver")
{
  GenParams p;
  p.family = Family::IndependentSet;
  p.is_nodes = {60, 60};
  p.is_edge_prob = {0.08, 0.08};
  p.seed = 17;
  const fs::path dir = scratch_dir("determinism");
  write_mps_file(generate(p), dir / "is60.mps");
  SolverConfig c = scip_config();
  c.log_path = dir / "a.log";
  const auto a = run_solver(dir / "is60.mps", c);
  c.log_path = dir / "b.log";
  const auto b = run_solver(dir / "is60.mps", c);
  CHECK(a.status == SolveStatus::Optimal);
  CHECK(a.status == b.status);
  CHECK(a.nodes == b.nodes);
  CHECK(a.incumbent == b.incumbent);
}

TEST_CASE("solve record json round trip")
{
  SolveRecord r = rec(SolveStatus::FeasibleTimeLimit, 42, 3.25);
  r.instance = "x";
  r.incumbent = 10.0;
  r.bound = 12.5;
  r.sense = ObjectiveSense::Maximize;
  r.printed_gap = 25.0;
  r.status_text = "time limit";
  CHECK(solve_record_from_json(to_json(r)) == r);
  CHECK(to_json(r)["gap_rel"].get<double>() == doctest::Approx(0.25));
  r.incumbent.reset();
  CHECK(to_json(r)["gap_abs"].is_null());
  CHECK(solve_record_from_json(to_json(r)) == r);
}

TEST_CASE("feasibility ratio")
{
  std::vector<SolveRecord> v = {rec(SolveStatus::Optimal), rec(SolveStatus::Infeasible), rec(SolveStatus::Optimal)};
  CHECK(feasibility_ratio(v).ratio_percent == doctest::Approx(66.6666667));

  std::vector<SolveRecord> big;
  for (int i = 0; i < 934; ++i) big.push_back(rec(i % 3 ? SolveStatus::Optimal : SolveStatus::FeasibleTimeLimit));
  for (int i = 0; i < 30; ++i) big.push_back(rec(SolveStatus::Infeasible));
  for (int i = 0; i < 20; ++i) big.push_back(rec(SolveStatus::Unbounded));
  for (int i = 0; i < 16; ++i) big.push_back(rec(SolveStatus::TimeLimitNoIncumbent));
  const auto rep = feasibility_ratio(big);
  CHECK(std::round(rep.ratio_percent * 100.0) / 100.0 == doctest::Approx(93.40));
  CHECK(rep.time_limit_no_incumbent == 16);
  CHECK(rep.infeasible == 30);
  CHECK(rep.unbounded == 20);

  std::vector<SolveRecord> all(7, rec(SolveStatus::Optimal));
  CHECK(feasibility_ratio(all).ratio_percent == 100.0);
  CHECK_THROWS_AS(feasibility_ratio({}), Error);
}

TEST_CASE("branching node report")
{
  std::vector<SolveRecord> gen = {rec(SolveStatus::Optimal, 150), rec(SolveStatus::Optimal, 50)};
  std::vector<SolveRecord> base = {rec(SolveStatus::Optimal, 60), rec(SolveStatus::FeasibleTimeLimit, 40)};
  auto rep = branching_node_report(gen, base);
  CHECK(rep.node_relative_error_percent == doctest::Approx(100.0));
  CHECK(rep.baseline.time_limit_hits == 1);
  CHECK(rep.generated.nodes.max == 150);
  CHECK(branching_node_report(base, base).node_relative_error_percent == 0.0);

  // Error records are excluded and counted.
  gen.push_back(rec(SolveStatus::Error, 99999));
  rep = branching_node_report(gen, base);
  CHECK(rep.generated.excluded_errors == 1);
  CHECK(rep.node_relative_error_percent == doctest::Approx(100.0));

  std::vector<SolveRecord> zero = {rec(SolveStatus::Optimal, 0)};
  try {
    (void)branching_node_report(gen, zero);
    FAIL("expected ZeroBaselineNodes");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroBaselineNodes);
  }
  CHECK_THROWS_AS(branching_node_report({}, base), Error);
  std::vector<SolveRecord> errs = {rec(SolveStatus::Error, 3)};
  CHECK_THROWS_AS(branching_node_report(errs, base), Error);
}

TEST_CASE("node relative error against a brute-force sum")
{
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<SolveRecord> g, b;
    const auto ng = rng.uniform_int(1, 30), nb = rng.uniform_int(1, 30);
    for (int i = 0; i < ng; ++i) g.push_back(rec(SolveStatus::Optimal, rng.uniform_int(0, 100000)));
    for (int i = 0; i < nb; ++i) b.push_back(rec(SolveStatus::Optimal, rng.uniform_int(1, 100000)));
    long long sg = 0, sb = 0;
    for (const auto& r : g) sg += r.nodes;
    for (const auto& r : b) sb += r.nodes;
    const double expected = std::fabs(static_cast<double>(sg - sb)) / static_cast<double>(sb) * 100.0;
    const auto rep = branching_node_report(g, b);
    CHECK(rep.node_relative_error_percent == doctest::Approx(expected).epsilon(1e-12));
    CHECK(rep.node_relative_error_percent >= 0.0);
    // Permutation invariance.
    rng.shuffle(g);
    rng.shuffle(b);
    CHECK(branching_node_report(g, b) == rep);
  }
}

TEST_CASE("solving time gap")
{
  std::vector<SolveRecord> base = {rec(SolveStatus::Optimal, 1, 0.2644)};
  std::vector<SolveRecord> gen = {rec(SolveStatus::Optimal, 1, 0.3002)};
  CHECK(std::round(solving_time_gap(gen, base) * 100.0) / 100.0 == doctest::Approx(13.54));
  CHECK(solving_time_gap(base, base) == 0.0);
  std::vector<SolveRecord> twice = {rec(SolveStatus::Optimal, 1, 0.5288)};
  CHECK(solving_time_gap(twice, base) == doctest::Approx(100.0));
  // Zero baseline time uses the 1e-10 floor.
  std::vector<SolveRecord> zero = {rec(SolveStatus::Optimal, 1, 0.0)};
  CHECK(solving_time_gap(gen, zero) == doctest::Approx(0.3002 / 1e-10 * 100.0));
  CHECK_THROWS_AS(solving_time_gap({}, base), Error);

  // Wall time is the fallback when the solver printed no time.
  SolveRecord w = rec(SolveStatus::Optimal, 1, 0.0);
  w.solve_time.reset();
  w.wall_time = 0.2644;
  std::vector<SolveRecord> wall = {w};
  CHECK(solving_time_gap(wall, base) == 0.0);
}
