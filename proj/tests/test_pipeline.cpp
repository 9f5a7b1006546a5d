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
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "genbench/error.hpp"
#include "genbench/pipeline.hpp"
#include "genbench/random.hpp"
#include "test_util.hpp"

using namespace genbench;
using genbench::testing::fixture;
using genbench::testing::fresh_dir;
using genbench::testing::slurp;
namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

SolverInternalFeatures feat(const std::string& name, std::optional<double> gap, std::int64_t heur, CutVector cuts = {},
                            bool cut_stats = true)
{
  SolverInternalFeatures f;
  f.instance = name;
  f.root_gap_percent = gap;
  f.heuristic_success_count = heur;
  f.cut_vector = cuts;
  if (!cut_stats) f.diagnostics.missing_fields.push_back("cut_statistics");
  return f;
}

std::vector<SolverInternalFeatures> random_features(std::size_t n, std::uint64_t seed)
{
  Rng rng(seed);
  std::vector<SolverInternalFeatures> out;
  for (std::size_t i = 0; i < n; ++i) {
    CutVector c{};
    for (auto& v : c) v = rng.uniform_int(0, 20);
    out.push_back(feat("inst_" + std::to_string(i), rng.uniform_real(0.0, 30.0), rng.uniform_int(0, 9), c));
  }
  return out;
}

fs::path is_set(const std::string& name, std::size_t count, std::uint64_t seed)
{
  const fs::path dir = fresh_dir(name);
  GenParams p;
  p.family = Family::IndependentSet;
  p.is_nodes = {20, 30};
  p.is_edge_prob = {0.1, 0.2};
  generate_batch(p, count, seed, dir, 1);
  return dir;
}

SolverConfig fake_highs()
{
  SolverConfig c;
  c.solver = SolverId::Highs;
  c.executable = fixture("fake_solvers/fake_highs");
  c.time_limit = 10;
  return c;
}

BenchmarkConfig base_config(const fs::path& baseline, const fs::path& candidate, const fs::path& out)
{
  BenchmarkConfig c;
  c.baseline_dir = baseline;
  c.candidate_dir = candidate;
  c.output_dir = out;
  c.solver = fake_highs();
  c.seed = 5;
  c.jobs = 4;
  return c;
}

const StageStatus& stage(const ComparisonReport& r, const std::string& name)
{
  for (const auto& s : r.stages)
    if (s.stage == name) return s;
  FAIL("no stage " << name);
  return r.stages.front();
}

void check_code(ErrorCode code, auto&& fn)
{
  try {
    fn();
    FAIL("no error raised");
  } catch (const Error& e) {
    CHECK(e.code() == code);
  }
}

}  // namespace

TEST_CASE("split_half partition sizes and determinism")
{
  const auto f = random_features(1000, 3);
  const SplitHalfReport r = split_half(f, 42);
  CHECK(r.size_a == 500);
  CHECK(r.size_b == 500);
  CHECK(r.seed == 42);
  CHECK(split_half(f, 42) == r);
  CHECK_FALSE(split_half(f, 43) == r);
  CHECK(r.root_gap.w1 >= 0.0);
  CHECK(r.heuristics.w1 >= 0.0);
  REQUIRE(r.cuts.has_value());
  CHECK(r.cuts->w1.size() == 3);
  for (double w : r.cuts->w1) CHECK(w >= 0.0);

  // The partition depends on names and the seed, not on input order.
  auto shuffled = f;
  Rng rng(9);
  rng.shuffle(shuffled);
  CHECK(split_half(shuffled, 42) == r);

  for (std::size_t n : {4u, 5u, 7u, 10u}) {
    const SplitHalfReport s = split_half(random_features(n, n), 1);
    CHECK(s.size_a == (n + 1) / 2);
    CHECK(s.size_b == n / 2);
  }

  auto few = random_features(6, 1);
  for (std::size_t i = 0; i < 3; ++i) few[i].root_gap_percent.reset();
  check_code(ErrorCode::TooFewRecords, [&] { split_half(few, 1); });
}

TEST_CASE("identical halves give zero distances")
{
  const auto f = random_features(50, 8);
  std::vector<SolverInternalFeatures> doubled;
  for (const auto& x : f) {
    doubled.push_back(x);
    doubled.push_back(x);
  }
  std::vector<SolverInternalFeatures> even, odd;
  for (std::size_t i = 0; i < doubled.size(); ++i) (i % 2 ? odd : even).push_back(doubled[i]);
  const SplitHalfReport r = compare_halves(even, odd);
  CHECK(r.root_gap.w1 == 0.0);
  CHECK(r.heuristics.w1 == 0.0);
  REQUIRE(r.cuts.has_value());
  for (double w : r.cuts->w1) CHECK(w == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("internal feature comparison excludes only the missing field")
{
  std::vector<SolverInternalFeatures> a = {feat("a", 1.0, 2, {1, 0, 3}), feat("b", std::nullopt, 4, {0, 2}),
                                           feat("c", 3.0, 0, {}, false)};
  std::vector<SolverInternalFeatures> b = {feat("x", 2.0, 1, {5}), feat("y", 5.0, 3, {0, 0, 1})};
  a[0].diagnostics.unmapped_cuts["Lift"] = 2;
  b[1].diagnostics.unmapped_cuts["Lift"] = 3;
  const InternalFeatureBlock r = compare_internal_features(a, b);
  CHECK(r.root_gap.samples_a == std::vector<double>{1.0, 3.0});
  CHECK(r.root_gap.excluded_a == 1);
  CHECK(r.root_gap.excluded_b == 0);
  CHECK(r.root_gap.w1 == doctest::Approx(wasserstein1(std::vector<double>{1, 3}, std::vector<double>{2, 5})));
  CHECK(r.heuristics.samples_a.size() == 3);
  CHECK(r.heuristics.w1 == doctest::Approx(wasserstein1(std::vector<double>{2, 4, 0}, std::vector<double>{1, 3})));
  REQUIRE(r.cuts.has_value());
  CHECK(r.cuts->size_a == 2);
  CHECK(r.cuts->excluded_a == 1);
  CHECK(r.cuts->size_b == 2);
  CHECK(r.unmapped_cuts.at("Lift") == 5);

  const InternalFeatureBlock self = compare_internal_features(a, a);
  CHECK(self.root_gap.w1 == 0.0);
  CHECK(self.heuristics.w1 == 0.0);
  for (double w : self.cuts->w1) CHECK(w == doctest::Approx(0.0).epsilon(1e-12));

  std::vector<SolverInternalFeatures> no_gap = {feat("z", std::nullopt, 1)};
  check_code(ErrorCode::EmptySample, [&] { compare_internal_features(a, no_gap); });
  std::vector<SolverInternalFeatures> no_cuts = {feat("z", 1.0, 1, {}, false)};
  CHECK_FALSE(compare_internal_features(a, no_cuts).cuts.has_value());
}

TEST_CASE("report rendering")
{
  ComparisonReport r;
  r.baseline.role = r.baseline.label = "baseline";
  r.candidate.role = "candidate";
  r.candidate.label = "acm";
  r.candidate.problem = "IS";
  r.candidate.model = "ACM-MILP";
  r.candidate.eta = "0.05";
  r.stages.push_back({"ingest", "ok", ""});

  SUBCASE("minimal report round trips")
  {
    const std::string text = render_report(r, ReportFormat::Json);
    const ComparisonReport back = comparison_report_from_json(json::parse(text));
    CHECK(back == r);
    CHECK(render_report(back, ReportFormat::Json) == text);
  }

  SUBCASE("full report round trips and renders")
  {
    r.feasibility = FeasibilityBlock{};
    r.feasibility->baseline.total = 3;
    SimilarityReport s;
    s.per_feature = {{"coef_dens", 0.5}, {"modularity", 1.0}};
    s.overall = 0.75;
    r.structural = s;
    r.nodes = NodeBlock{};
    r.nodes->relative_error_percent = 12.5;
    r.time_gap = TimeGapBlock{1, 2, 0.2644, 0.3002, 13.54};
    r.internal_features = compare_internal_features(random_features(7, 1), random_features(5, 2));
    r.split_half_baseline = split_half(random_features(9, 3), 4);
    r.notes.push_back("a note, with a comma");
    r.settings["seed"] = 1;

    const std::string text = render_report(r, ReportFormat::Json);
    CHECK(comparison_report_from_json(json::parse(text)) == r);

    const std::string md = render_report(r, ReportFormat::Markdown);
    CHECK(md.find("PC1 W1") != std::string::npos);
    CHECK(md.find("PC2 W1") != std::string::npos);
    CHECK(md.find("PC3 W1") != std::string::npos);
    CHECK(md.find("| IS | ACM-MILP | 0.05 |") != std::string::npos);
    CHECK(md.find("13.54") != std::string::npos);

    const std::string csv = render_report(r, ReportFormat::Csv);
    const auto lines = std::count(csv.begin(), csv.end(), '\n');
    const auto& b = *r.internal_features;
    CHECK(static_cast<std::size_t>(lines - 1) == b.root_gap.samples_a.size() + b.root_gap.samples_b.size() +
                                                     b.heuristics.samples_a.size() + b.heuristics.samples_b.size());
    CHECK(csv.rfind("metric,set,value\n", 0) == 0);

    const SplitHalfReport& sh = *r.split_half_baseline;
    CHECK(split_half_report_from_json(json::parse(render_report(sh, ReportFormat::Json))) == sh);
    const std::string sh_csv = render_report(sh, ReportFormat::Csv);
    CHECK(static_cast<std::size_t>(std::count(sh_csv.begin(), sh_csv.end(), '\n') - 1) == 9 + 9);
    CHECK(render_report(sh, ReportFormat::Markdown).find("PC3 W1") != std::string::npos);
    CHECK(rerender_report_json(json::parse(render_report(sh, ReportFormat::Json)), ReportFormat::Csv) == sh_csv);
  }

  CHECK(report_format_from_string("json") == ReportFormat::Json);
  CHECK(report_format_from_string("md") == ReportFormat::Markdown);
  CHECK(report_format_from_string("csv") == ReportFormat::Csv);
  check_code(ErrorCode::UnknownFormat, [] { report_format_from_string("html"); });
}

TEST_CASE("benchmark config JSON and validation")
{
  const fs::path dir = is_set("pipe_cfg", 2, 1);
  BenchmarkConfig c = base_config(dir, dir, fresh_dir("pipe_cfg_out"));
  GeneratorSpec g;
  g.count = 3;
  g.params.family = Family::SetCover;
  g.params.sc_rows = {5, 9};
  c.candidate_generator = g;
  c.metrics.tuning = true;
  c.tuning.budget = 7;
  const BenchmarkConfig back = benchmark_config_from_json(to_json(c));
  CHECK(to_json(back) == to_json(c));
  CHECK(back.candidate_generator->params.sc_rows.hi == 9);
  CHECK_NOTHROW(validate(c));

  check_code(ErrorCode::InvalidConfig, [] { benchmark_config_from_json(json{{"bogus", 1}}); });
  check_code(ErrorCode::InvalidConfig, [] { benchmark_config_from_json(json{{"metrics", {{"speed", true}}}}); });

  BenchmarkConfig none = base_config(dir, dir, "out");
  none.metrics = MetricToggles{false, false, false, false, false, false, false};
  check_code(ErrorCode::InvalidConfig, [&] { validate(none); });
  BenchmarkConfig missing = base_config(dir, "/nonexistent/dir", "out");
  check_code(ErrorCode::InvalidConfig, [&] { validate(missing); });
  CHECK_NOTHROW(validate(missing, false));
  BenchmarkConfig nolimit = base_config(dir, dir, "out");
  nolimit.solver.time_limit = 0;
  check_code(ErrorCode::InvalidConfig, [&] { validate(nolimit); });
  nolimit.metrics = MetricToggles{false, true, false, false, false, false, false};
  CHECK_NOTHROW(validate(nolimit));
  check_code(ErrorCode::InvalidConfig, [&] { run_benchmark(missing); });
}

TEST_CASE("pipeline self-comparison with the bundled SCIP")
{
  const fs::path dir = is_set("pipe_self", 6, 11);
  const fs::path out = fresh_dir("pipe_self_out");
  BenchmarkConfig c = base_config(dir, dir, out);
  c.solver = SolverConfig{};
  c.solver.solver = SolverId::Scip;
  c.solver.time_limit = 20;
  c.metrics.split_half = true;

  RunStats first;
  const ComparisonReport r = run_benchmark(c, &first);
  CHECK_FALSE(r.any_failed());
  CHECK(first.solver_launches == 6);  // the candidate reuses the baseline records
  CHECK(first.solve_cache_hits == 1);
  REQUIRE(r.structural.has_value());
  CHECK(std::abs(r.structural->overall - 1.0) <= 1e-12);
  REQUIRE(r.nodes.has_value());
  CHECK(r.nodes->relative_error_percent == 0.0);
  REQUIRE(r.time_gap.has_value());
  CHECK(r.time_gap->gap_percent == 0.0);
  REQUIRE(r.internal_features.has_value());
  CHECK(r.internal_features->root_gap.w1 == 0.0);
  CHECK(r.internal_features->heuristics.w1 == 0.0);
  if (r.internal_features->cuts)
    for (double w : r.internal_features->cuts->w1) CHECK(w == doctest::Approx(0.0).epsilon(1e-12));
  REQUIRE(r.feasibility.has_value());
  CHECK(r.feasibility->candidate.ratio_percent == 100.0);
  CHECK(r.baseline.solver_version == r.candidate.solver_version);
  CHECK_FALSE(r.baseline.solver_version.empty());
  CHECK(r.split_half_baseline.has_value());
  CHECK(r.split_half_baseline == r.split_half_baseline);

  for (const char* f : {"report.json", "config.json", "baseline/records.jsonl", "baseline/features.jsonl",
                        "baseline/internal.jsonl", "candidate/records.jsonl"})
    CHECK_MESSAGE(fs::exists(out / f), f);

  // Rerun on the unchanged directory: no launches, same bytes.
  const std::string before = slurp(out / "report.json");
  RunStats second;
  const ComparisonReport again = run_benchmark(c, &second);
  CHECK(second.solver_launches == 0);
  CHECK(second.feature_cache_hits == 2);
  CHECK(again == r);
  CHECK(slurp(out / "report.json") == before);
}

TEST_CASE("pipeline determinism and stage isolation with a deterministic solver")
{
  const fs::path base = is_set("pipe_det_base", 5, 21);
  const fs::path cand = is_set("pipe_det_cand", 4, 22);
  BenchmarkConfig c = base_config(base, cand, fresh_dir("pipe_det_a"));
  c.metrics.split_half = true;
  const ComparisonReport a = run_benchmark(c);
  CHECK_FALSE(a.any_failed());
  CHECK(a.internal_features.has_value());
  CHECK(a.structural->overall < 1.0);

  c.output_dir = fresh_dir("pipe_det_b");
  const ComparisonReport b = run_benchmark(c);
  CHECK(render_report(a, ReportFormat::Json) == render_report(b, ReportFormat::Json));

  // Disabling one metric changes its block and the diagnostics only.
  for (const char* metric : {"nodes", "structural", "time_gap", "feasibility", "internal_features"}) {
    INFO(metric);
    BenchmarkConfig d = c;
    d.output_dir = fresh_dir(std::string("pipe_det_") + metric);
    json toggles = to_json(d)["metrics"];
    toggles[metric] = false;
    json cj = to_json(d);
    cj["metrics"] = toggles;
    d = benchmark_config_from_json(cj);
    json ja = to_json(a);
    json jd = to_json(run_benchmark(d));
    CHECK(jd[metric].is_null());
    for (json* j : {&ja, &jd}) {
      j->erase(metric);
      j->erase("diagnostics");
    }
    CHECK(ja == jd);
  }
}

TEST_CASE("pipeline without a solver keeps the structural block")
{
  const fs::path dir = is_set("pipe_nosolver", 3, 31);
  const fs::path other = is_set("pipe_nosolver_b", 3, 32);
  BenchmarkConfig c = base_config(dir, other, fresh_dir("pipe_nosolver_out"));
  c.solver.executable = "/nonexistent/solver/binary";
  const ComparisonReport r = run_benchmark(c);
  CHECK(r.structural.has_value());
  CHECK_FALSE(r.feasibility.has_value());
  CHECK_FALSE(r.nodes.has_value());
  CHECK_FALSE(r.internal_features.has_value());
  CHECK(stage(r, "structural").state == "ok");
  CHECK(stage(r, "solve").state == "skipped");
  for (const char* s : {"feasibility", "nodes", "time_gap", "internal_features"}) CHECK(stage(r, s).state == "skipped");
  CHECK_FALSE(r.any_failed());

  BenchmarkConfig only = c;
  only.output_dir = fresh_dir("pipe_structural_only");
  only.metrics = MetricToggles{false, true, false, false, false, false, false};
  only.solver.time_limit = 0;
  const ComparisonReport s = run_benchmark(only);
  CHECK(s.structural == r.structural);
  CHECK(stage(s, "solve").state == "skipped");
}

TEST_CASE("pipeline with a generated candidate, set metadata and tuning")
{
  const fs::path base = is_set("pipe_gen_base", 3, 41);
  {
    std::ofstream meta(base / "set_meta.json");
    meta << R"({"label": "original", "problem": "IS", "model": "Original", "eta": 0.1})";
  }
  BenchmarkConfig c = base_config(base, "", fresh_dir("pipe_gen_out"));
  GeneratorSpec g;
  g.count = 3;
  g.params.family = Family::IndependentSet;
  g.params.is_nodes = {20, 25};
  g.params.is_edge_prob = {0.1, 0.2};
  c.candidate_generator = g;
  c.metrics.tuning = true;
  c.tuning.budget = 4;
  c.tuning.space_file = fs::path(c.output_dir) / "space.txt";
  {
    std::ofstream sp(c.tuning.space_file);
    sp << "mip_heuristic_effort = [0.0, 1.0]\n";
  }
  RunStats stats;
  const ComparisonReport r = run_benchmark(c, &stats);
  CHECK_FALSE(r.any_failed());
  CHECK(r.baseline.label == "original");
  CHECK(r.baseline.eta == "0.1");
  CHECK(r.candidate.problem == "is");
  CHECK(r.candidate.instances == 3);
  REQUIRE(r.tuning.has_value());
  CHECK(r.tuning->history.size() == 4);
  CHECK(r.tuning->tuning_improvement_percent >= 0.0);
  CHECK(r.tuning->test_default.has_value());
  CHECK(fs::exists(c.output_dir / "tuning" / "tuning_result.json"));
  CHECK(render_report(r, ReportFormat::Markdown).find("## Tuning") != std::string::npos);

  RunStats again;
  CHECK(run_benchmark(c, &again) == r);
  CHECK(again.solver_launches == 0);
}
