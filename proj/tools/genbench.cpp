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

// genbench command line front end.
//
// Exit codes: 0 success, 1 a stage failed (or a run error), 2 invalid
// configuration or usage.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "genbench/error.hpp"
#include "genbench/generators.hpp"
#include "genbench/graph.hpp"
#include "genbench/instance.hpp"
#include "genbench/pipeline.hpp"
#include "genbench/random.hpp"
#include "genbench/solver.hpp"
#include "genbench/tuner.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace genbench;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInvalid = 2;

struct Globals {
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string out;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* jobs_opt = nullptr;
  CLI::Option* out_opt = nullptr;
};

struct SolverFlags {
  std::string solver = "scip";
  std::string executable;
  double time_limit = 0.0;
  int threads = 1;
  std::vector<std::string> set;
  CLI::Option* limit_opt = nullptr;
};

void add_solver_flags(CLI::App* sub, SolverFlags& f, double default_limit)
{
  f.time_limit = default_limit;
  sub->add_option("--solver", f.solver, "scip, highs or gurobi")->capture_default_str();
  sub->add_option("--executable", f.executable, "Solver binary (default: discovered)");
  f.limit_opt = sub->add_option("--time-limit", f.time_limit, "Seconds per solve")->capture_default_str();
  sub->add_option("--threads", f.threads, "Solver threads")->capture_default_str();
  sub->add_option("--set", f.set, "Parameter override NAME=VALUE (repeatable)");
}

SolverConfig solver_config(const SolverFlags& f, std::uint64_t seed)
{
  SolverConfig c;
  c.solver = solver_from_string(f.solver);
  c.executable = f.executable;
  c.time_limit = f.time_limit;
  c.threads = f.threads;
  c.seed = seed;
  for (const auto& kv : f.set) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw Error(ErrorCode::InvalidConfig, "override '" + kv + "' is not NAME=VALUE");
    c.parameters[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  validate(c);
  return c;
}

fs::path out_dir(const Globals& g, const char* fallback)
{
  return g.out.empty() ? fs::path(fallback) : fs::path(g.out);
}

std::string read_text(const fs::path& p)
{
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& p, const std::string& text)
{
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw Error(ErrorCode::Io, "cannot write " + p.string());
}

json parse_json_file(const fs::path& p)
{
  try {
    return json::parse(read_text(p));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, p.string() + ": " + e.what());
  }
}

std::vector<fs::path> instances_in(const fs::path& dir)
{
  if (!fs::is_directory(dir)) throw Error(ErrorCode::InvalidConfig, "not a directory: " + dir.string());
  auto files = list_instance_files(dir);
  if (files.empty()) throw Error(ErrorCode::EmptySet, "no instance files in " + dir.string());
  return files;
}

bool is_config_error(ErrorCode c)
{
  switch (c) {
    case ErrorCode::InvalidConfig:
    case ErrorCode::UnknownParameter:
    case ErrorCode::UnknownStrategy:
    case ErrorCode::UnknownFormat:
    case ErrorCode::InvalidBins:
    case ErrorCode::InvalidK: return true;
    default: return false;
  }
}

// ---------------------------------------------------------------------------

struct GenerateArgs {
  std::string problem;
  std::size_t count = 0;
  std::string params;
};

int cmd_generate(const Globals& g, const GenerateArgs& a)
{
  GenParams p;
  p.family = family_from_token(a.problem);
  if (!a.params.empty()) p = gen_params_from_json(parse_json_file(a.params), p);
  p.family = family_from_token(a.problem);
  validate(p);
  if (a.count == 0) throw Error(ErrorCode::InvalidConfig, "--count must be at least 1");
  const fs::path dir = out_dir(g, "instances");
  const BatchResult r = generate_batch(p, a.count, g.seed, dir, g.jobs);
  std::cout << "wrote " << r.files.size() << " instances and gen_meta.json to " << dir.string() << "\n";
  return kExitOk;
}

struct SolveArgs {
  std::string instances;
  SolverFlags solver;
};

int cmd_solve(const Globals& g, const SolveArgs& a)
{
  const SolverConfig c = solver_config(a.solver, g.seed);
  const auto files = instances_in(a.instances);
  const fs::path dir = out_dir(g, "run");
  BatchOptions opts;
  opts.jobs = g.jobs;
  const auto records = run_solver_batch(files, c, dir, opts);
  const FeasibilityReport f = feasibility_ratio(records);
  std::printf("%zu solved into %s: %zu optimal, %zu feasible at limit, %zu infeasible, %zu unbounded, "
              "%zu no incumbent, %zu error (feasible %.2f%%)\n",
              records.size(), dir.string().c_str(), f.optimal, f.feasible_time_limit, f.infeasible, f.unbounded,
              f.time_limit_no_incumbent, f.error, f.ratio_percent);
  return kExitOk;
}

struct FeaturesArgs {
  std::string instances;
  std::string run;
  std::string solver = "scip";
};

int cmd_features(const Globals& g, const FeaturesArgs& a)
{
  if (a.instances.empty() && a.run.empty())
    throw Error(ErrorCode::InvalidConfig, "give --instances (structural) and/or --run (solver internal)");
  const fs::path dir = out_dir(g, "features");
  int status = kExitOk;
  if (!a.instances.empty()) {
    std::vector<MilpInstance> instances;
    for (const auto& f : instances_in(a.instances)) {
      try {
        instances.push_back(parse_instance_file(f));
      } catch (const Error& e) {
        std::cerr << "skipped " << f.filename().string() << ": " << e.what() << "\n";
        status = kExitFailed;
      }
    }
    const auto features = extract_set_features(instances, derive_seed(g.seed, "structural"));
    std::string text;
    for (std::size_t i = 0; i < features.size(); ++i)
      text += structural_features_json(instances[i].name, features[i]).dump() + "\n";
    write_text(dir / "features.jsonl", text);
    std::cout << "structural features for " << features.size() << " instances in "
              << (dir / "features.jsonl").string() << "\n";
  }
  if (!a.run.empty()) {
    const auto records = read_records(fs::path(a.run) / "records.jsonl");
    std::size_t errors = 0;
    const auto features = features_from_records(solver_from_string(a.solver), records, a.run, &errors);
    std::string text;
    for (const auto& f : features) text += to_json(f).dump() + "\n";
    write_text(dir / "internal.jsonl", text);
    std::cout << "internal features for " << features.size() << " logs in " << (dir / "internal.jsonl").string()
              << " (" << errors << " unparsable)\n";
    if (errors > 0) status = kExitFailed;
  }
  return status;
}

struct CompareArgs {
  std::string config;
  std::string baseline;
  std::string candidate;
  std::vector<std::string> metrics;
  std::vector<std::string> skip;
  int bins = 0;
  int pca_k = 0;
  SolverFlags solver;
  CLI::Option* solver_opt = nullptr;
};

void set_metric(MetricToggles& m, const std::string& name, bool on)
{
  bool* slot = name == "feasibility"         ? &m.feasibility
               : name == "structural"        ? &m.structural
               : name == "nodes"             ? &m.nodes
               : name == "time_gap"          ? &m.time_gap
               : name == "internal_features" ? &m.internal_features
               : name == "split_half"        ? &m.split_half
               : name == "tuning"            ? &m.tuning
                                             : nullptr;
  if (slot == nullptr) throw Error(ErrorCode::InvalidConfig, "unknown metric '" + name + "'");
  *slot = on;
}

int cmd_compare(const Globals& g, const CompareArgs& a)
{
  BenchmarkConfig c;
  if (!a.config.empty()) {
    c = load_benchmark_config(a.config);
  } else {
    c.solver.time_limit = 60.0;
  }
  if (!a.baseline.empty()) c.baseline_dir = a.baseline;
  if (!a.candidate.empty()) {
    c.candidate_dir = a.candidate;
    c.candidate_generator.reset();
  }
  if (a.config.empty() || a.solver_opt->count() > 0 || a.solver.limit_opt->count() > 0 || !a.solver.set.empty() ||
      !a.solver.executable.empty()) {
    SolverFlags f = a.solver;
    if (!a.config.empty() && a.solver_opt->count() == 0) f.solver = std::string(to_string(c.solver.solver));
    if (!a.config.empty() && f.limit_opt->count() == 0) f.time_limit = c.solver.time_limit;
    const std::uint64_t seed = c.solver.seed;
    c.solver = SolverConfig{};
    c.solver.solver = solver_from_string(f.solver);
    c.solver.executable = f.executable;
    c.solver.time_limit = f.time_limit;
    c.solver.threads = f.threads;
    c.solver.seed = seed;
    for (const auto& kv : f.set) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0)
        throw Error(ErrorCode::InvalidConfig, "override '" + kv + "' is not NAME=VALUE");
      c.solver.parameters[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
  }
  if (!a.metrics.empty()) {
    c.metrics = MetricToggles{false, false, false, false, false, false, false};
    for (const auto& m : a.metrics) set_metric(c.metrics, m, true);
  }
  for (const auto& m : a.skip) set_metric(c.metrics, m, false);
  if (a.bins > 0) c.bins = a.bins;
  if (a.pca_k > 0) c.pca_k = a.pca_k;
  if (g.seed_opt->count() > 0 || a.config.empty()) c.seed = g.seed;
  if (g.jobs_opt->count() > 0 || a.config.empty()) c.jobs = g.jobs;
  if (g.out_opt->count() > 0 || c.output_dir.empty()) c.output_dir = out_dir(g, "out");

  RunStats stats;
  const ComparisonReport r = run_benchmark(c, &stats);
  write_text(c.output_dir / "report.md", render_report(r, ReportFormat::Markdown));
  write_text(c.output_dir / "report.csv", render_report(r, ReportFormat::Csv));
  std::cout << "report: " << (c.output_dir / "report.json").string() << " (" << stats.solver_launches
            << " solver launches, " << stats.solve_cache_hits << " cached solve sets)\n";
  for (const auto& s : r.stages)
    if (s.state == "failed") std::cerr << "stage " << s.stage << " failed: " << s.message << "\n";
  return r.any_failed() ? kExitFailed : kExitOk;
}

struct SplitHalfArgs {
  std::string run;
  std::string solver = "scip";
  int pca_k = kDefaultPcaComponents;
};

int cmd_split_half(const Globals& g, const SplitHalfArgs& a)
{
  const auto records = read_records(fs::path(a.run) / "records.jsonl");
  std::size_t errors = 0;
  const auto features = features_from_records(solver_from_string(a.solver), records, a.run, &errors);
  const SplitHalfReport r = split_half(features, g.seed, a.pca_k);
  const fs::path dir = out_dir(g, "split_half");
  write_text(dir / "split_half.json", render_report(r, ReportFormat::Json));
  write_text(dir / "split_half.md", render_report(r, ReportFormat::Markdown));
  std::printf("halves %zu/%zu: root gap W1 %.4f, heuristic W1 %.4f", r.size_a, r.size_b, r.root_gap.w1,
              r.heuristics.w1);
  if (r.cuts && !r.cuts->w1.empty()) std::printf(", PC1 W1 %.4f", r.cuts->w1.front());
  std::printf(" (%zu unparsable logs)\n", errors);
  return kExitOk;
}

struct TuneArgs {
  std::string space;
  std::string tuning;
  std::string test;
  std::size_t trials = 50;
  std::string strategy = "random";
  SolverFlags solver;
};

int cmd_tune(const Globals& g, const TuneArgs& a)
{
  const SolverConfig c = solver_config(a.solver, 0);
  const ParameterSpace space = a.space.empty() ? default_space(c.solver) : load_space(a.space);
  const auto tuning_set = instances_in(a.tuning);
  const fs::path dir = out_dir(g, "tuning");
  TuneOptions opts;
  opts.jobs = g.jobs;
  opts.work_dir = dir / "trials";
  TuningResult r = tune(space, tuning_set, c, a.trials, a.strategy, g.seed, opts);
  if (!a.test.empty()) {
    opts.work_dir = dir / "test";
    evaluate_on_test_set(r, instances_in(a.test), c, opts);
  }
  write_text(dir / "tuning_result.json", to_json(r).dump(2) + "\n");
  std::printf("best trial %zu: mean %.4f s vs default %.4f s (%.2f%%)", r.best_trial, r.best_mean, r.default_mean,
              r.tuning_improvement_percent);
  if (r.test_improvement_percent) std::printf(", test %.2f%%", *r.test_improvement_percent);
  std::printf("\n");
  return kExitOk;
}

struct ReportArgs {
  std::string input;
  std::string format = "markdown";
};

int cmd_report(const Globals& g, const ReportArgs& a)
{
  const ReportFormat f = report_format_from_string(a.format);
  json j;
  try {
    j = json::parse(read_text(a.input));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedFile, a.input + ": " + e.what());
  }
  const std::string text = rerender_report_json(j, f);
  if (g.out.empty()) {
    std::cout << text;
  } else {
    const char* ext = f == ReportFormat::Json ? "json" : f == ReportFormat::Csv ? "csv" : "md";
    const fs::path p = fs::path(g.out) / (fs::path(a.input).stem().string() + "." + ext);
    write_text(p, text);
    std::cout << p.string() << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Benchmarking toolkit for generated MILP instance sets"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  g.seed_opt = app.add_option("--seed", g.seed, "Root seed")->capture_default_str();
  g.jobs_opt = app.add_option("--jobs", g.jobs, "Parallel workers")->capture_default_str()->check(CLI::PositiveNumber);
  g.out_opt = app.add_option("--out", g.out, "Output directory");

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Generate an instance set");
  generate->add_option("--problem", gen.problem, "sc, ca, cfl or is")->required();
  generate->add_option("--count", gen.count, "Number of instances")->required();
  generate->add_option("--params", gen.params, "JSON file overriding generator parameters");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance directory into a run directory");
  solve_cmd->add_option("instances", solve.instances, "Instance directory")->required();
  add_solver_flags(solve_cmd, solve.solver, 60.0);

  FeaturesArgs feat;
  auto* features = app.add_subcommand("features", "Extract structural or solver-internal features");
  features->add_option("--instances", feat.instances, "Instance directory (structural features)");
  features->add_option("--run", feat.run, "Run directory from 'solve' (log features)");
  features->add_option("--solver", feat.solver, "Solver that wrote the logs")->capture_default_str();

  CompareArgs cmp;
  auto* compare = app.add_subcommand("compare", "Compare a candidate set against a baseline");
  compare->add_option("--config", cmp.config, "Benchmark config (JSON)");
  compare->add_option("--baseline", cmp.baseline, "Baseline instance directory");
  compare->add_option("--candidate", cmp.candidate, "Candidate instance directory");
  compare->add_option("--metrics", cmp.metrics, "Enable only these metrics")->delimiter(',');
  compare->add_option("--skip", cmp.skip, "Disable these metrics")->delimiter(',');
  compare->add_option("--bins", cmp.bins, "Histogram bins for structural similarity");
  compare->add_option("--pca-k", cmp.pca_k, "Principal components for cut vectors");
  add_solver_flags(compare, cmp.solver, 60.0);
  cmp.solver_opt = compare->get_option("--solver");

  SplitHalfArgs sh;
  auto* split = app.add_subcommand("split-half", "Split-half stability check of one solved set");
  split->add_option("run", sh.run, "Run directory from 'solve'")->required();
  split->add_option("--solver", sh.solver, "Solver that wrote the logs")->capture_default_str();
  split->add_option("--pca-k", sh.pca_k, "Principal components for cut vectors")->capture_default_str();

  TuneArgs tn;
  auto* tune_cmd = app.add_subcommand("tune", "Tune solver parameters on one set, evaluate on another");
  tune_cmd->add_option("--space", tn.space, "Parameter space file (default: bundled space)");
  tune_cmd->add_option("--tuning", tn.tuning, "Tuning instance directory")->required();
  tune_cmd->add_option("--test", tn.test, "Held-out test instance directory");
  tune_cmd->add_option("--trials", tn.trials, "Configuration budget")->capture_default_str();
  tune_cmd->add_option("--strategy", tn.strategy, "Search strategy")->capture_default_str();
  add_solver_flags(tune_cmd, tn.solver, 60.0);

  ReportArgs rep;
  auto* report = app.add_subcommand("report", "Re-render a report JSON");
  report->add_option("input", rep.input, "report.json or split_half.json")->required();
  report->add_option("--format", rep.format, "json, markdown or csv")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (generate->parsed()) return cmd_generate(g, gen);
    if (solve_cmd->parsed()) return cmd_solve(g, solve);
    if (features->parsed()) return cmd_features(g, feat);
    if (compare->parsed()) return cmd_compare(g, cmp);
    if (split->parsed()) return cmd_split_half(g, sh);
    if (tune_cmd->parsed()) return cmd_tune(g, tn);
    if (report->parsed()) return cmd_report(g, rep);
  } catch (const Error& e) {
    std::cerr << "genbench: " << e.what() << "\n";
    return is_config_error(e.code()) ? kExitInvalid : kExitFailed;
  } catch (const std::exception& e) {
    std::cerr << "genbench: " << e.what() << "\n";
    return kExitFailed;
  }
  return kExitInvalid;
}
