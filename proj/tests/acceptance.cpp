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

// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "genbench/error.hpp"
#include "genbench/generators.hpp"
#include "genbench/graph.hpp"
#include "genbench/log_parsers.hpp"
#include "genbench/pipeline.hpp"
#include "genbench/random.hpp"
#include "genbench/solver.hpp"
#include "genbench/stats.hpp"
#include "genbench/tuner.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace genbench;
using namespace genbench::testing;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what)
  {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + std::string("FAILED ") + what;
    }
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

std::string fmt(const char* f, double v)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

int jobs() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

SolveRecord timed(SolveStatus status, double t)
{
  SolveRecord r;
  r.status = status;
  r.solve_time = t;
  r.wall_time = t;
  return r;
}

double median(std::vector<double> v)
{
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

SolverConfig scip(double limit)
{
  SolverConfig c;
  c.solver = SolverId::Scip;
  c.time_limit = limit;
  c.threads = 1;
  return c;
}

GenParams is_params()
{
  GenParams p;
  p.family = Family::IndependentSet;
  p.is_nodes = {100, 150};
  p.is_edge_prob = {0.04, 0.06};
  return p;
}

GenParams sc_params()
{
  GenParams p;
  p.family = Family::SetCover;
  p.sc_rows = {100, 150};
  p.sc_cols = {200, 300};
  p.sc_density = {0.05, 0.1};
  return p;
}

GenParams desk_params(Family f)
{
  GenParams p;
  p.family = f;
  p.sc_rows = {100, 200};
  p.sc_cols = {200, 400};
  p.sc_density = {0.05, 0.1};
  p.ca_items = {50, 100};
  p.ca_bids = {100, 200};
  p.cfl_customers = {20, 40};
  p.is_nodes = {100, 150};
  p.is_edge_prob = {0.04, 0.06};
  return p;
}

constexpr Family kFamilies[] = {Family::SetCover, Family::CombinatorialAuction, Family::FacilityLocation,
                                Family::IndependentSet};

// ---------------------------------------------------------------------------

Outcome formulas()
{
  Outcome o;
  const std::vector<SolveRecord> base = {timed(SolveStatus::Optimal, 0.2644)};
  const std::vector<SolveRecord> gen = {timed(SolveStatus::Optimal, 0.3002)};
  const double gap = solving_time_gap(gen, base);
  o.note("time gap " + fmt("%.4f%%", gap));
  o.require(std::abs(gap - 13.54) <= 0.01, "time gap 13.54 +- 0.01");

  std::vector<SolveRecord> recs;
  for (int i = 0; i < 1000; ++i) recs.push_back(timed(i < 934 ? SolveStatus::Optimal : SolveStatus::Infeasible, 1));
  const FeasibilityReport f = feasibility_ratio(recs);
  o.note("feasibility " + fmt("%.2f%%", f.ratio_percent));
  o.require(fmt("%.2f", f.ratio_percent) == "93.40" && std::abs(f.ratio_percent - 93.4) <= 1e-12,
            "feasibility 93.40");

  const double imp = improvement_percent(0.339, 0.370);
  o.note("tuning improvement " + fmt("%.3f%%", imp));
  o.require(std::abs(imp - (-9.17)) <= 0.05, "improvement -9.17 +- 0.05");
  return o;
}

std::vector<double> sample(Rng& rng, std::size_t n)
{
  std::vector<double> s(n);
  for (auto& v : s) v = rng.bernoulli(0.3) ? static_cast<double>(rng.uniform_int(-3, 3)) : rng.uniform_real(-5, 5);
  return s;
}

Outcome w1_oracle()
{
  Outcome o;
  Rng rng(2024);
  double worst = 0.0, worst_cdf = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, 8));
    const auto a = sample(rng, n);
    const auto b = sample(rng, n);
    worst = std::max(worst, std::abs(wasserstein1(a, b) - w1_assignment(a, b)));
    const auto c = sample(rng, static_cast<std::size_t>(rng.uniform_int(1, 8)));
    worst_cdf = std::max(worst_cdf, std::abs(wasserstein1(a, c) - w1_cdf(a, c)));
  }
  o.note("max deviation vs optimal pairing " + fmt("%.3g", worst) + ", vs CDF integral (unequal sizes) " +
         fmt("%.3g", worst_cdf));
  o.require(worst <= 1e-9, "pairing oracle within 1e-9");
  o.require(worst_cdf <= 1e-9, "CDF oracle within 1e-9");
  return o;
}

std::vector<MilpInstance> desk_set(Family f, std::size_t count, std::uint64_t seed, GenParams p)
{
  p.family = f;
  std::vector<MilpInstance> out;
  for (std::size_t i = 0; i < count; ++i) {
    p.seed = derive_seed(seed, i);
    out.push_back(generate(p));
    out.back().name = batch_instance_name(f, i, count);
  }
  return out;
}

GenParams small_params()
{
  GenParams p;
  p.sc_rows = {20, 60};
  p.sc_cols = {40, 120};
  p.ca_items = {10, 30};
  p.ca_bids = {20, 60};
  p.cfl_customers = {4, 12};
  p.is_nodes = {20, 60};
  p.is_edge_prob = {0.05, 0.2};
  return p;
}

Outcome jsd_identities()
{
  Outcome o;
  double worst = 0.0;
  std::size_t sets = 0;
  for (Family f : kFamilies) {
    for (const GenParams& p : {small_params(), desk_params(f)}) {
      const auto feats = extract_set_features(desk_set(f, 30, 77, p), 5);
      const SimilarityReport r = structural_similarity(feats, feats, kDefaultBins);
      worst = std::max(worst, std::abs(r.overall - 1.0));
      for (const auto& [name, s] : r.per_feature) worst = std::max(worst, std::abs(s - 1.0));
      ++sets;
    }
  }
  o.note(std::to_string(sets) + " feature sets, max |self - 1| " + fmt("%.3g", worst));
  o.require(worst <= 1e-12, "self-similarity 1 +- 1e-12");

  const double disjoint = jsd_similarity(std::vector<double>(10, 0.0), std::vector<double>(10, 1.0));
  o.note("disjoint masses " + fmt("%.3g", disjoint));
  o.require(std::abs(disjoint) <= 1e-12, "disjoint point masses 0 +- 1e-12");

  std::vector<double> half(100, 0.0);
  std::fill(half.begin() + 50, half.end(), 1.0);
  const double hand = jsd_similarity(half, std::vector<double>(100, 0.0), 2);
  o.note("50/50 vs 100/0 " + fmt("%.6f", hand));
  o.require(std::abs(hand - 0.688722) <= 1e-6, "hand case 0.688722 +- 1e-6");
  return o;
}

MilpInstance permuted(const MilpInstance& inst, Rng& rng)
{
  std::vector<std::int32_t> cols(inst.num_cols()), rows(inst.num_rows());
  std::iota(cols.begin(), cols.end(), 0);
  std::iota(rows.begin(), rows.end(), 0);
  rng.shuffle(cols);
  rng.shuffle(rows);
  MilpInstance out = inst;
  for (std::size_t j = 0; j < inst.num_cols(); ++j) {
    out.objective[cols[j]] = inst.objective[j];
    out.lower_bounds[cols[j]] = inst.lower_bounds[j];
    out.upper_bounds[cols[j]] = inst.upper_bounds[j];
    out.var_types[cols[j]] = inst.var_types[j];
  }
  for (std::size_t i = 0; i < inst.num_rows(); ++i) {
    out.row_senses[rows[i]] = inst.row_senses[i];
    out.rhs[rows[i]] = inst.rhs[i];
  }
  for (auto& e : out.entries) {
    e.row = rows[e.row];
    e.col = cols[e.col];
  }
  if (!out.col_names.empty())
    for (std::size_t j = 0; j < inst.num_cols(); ++j) out.col_names[cols[j]] = inst.col_names[j];
  if (!out.row_names.empty())
    for (std::size_t i = 0; i < inst.num_rows(); ++i) out.row_names[rows[i]] = inst.row_names[i];
  return canonicalize(out);
}

Outcome structural_oracles()
{
  Outcome o;
  std::vector<MilpInstance> corpus;
  for (Family f : kFamilies) {
    for (auto& i : desk_set(f, 40, 91, small_params())) corpus.push_back(std::move(i));
    for (auto& i : desk_set(f, 10, 92, desk_params(f))) corpus.push_back(std::move(i));
  }
  Rng rng(4242);
  for (int t = 0; t < 60; ++t) corpus.push_back(random_instance(rng, 30, 50));

  std::size_t brute = 0, dens = 0, dens_bad = 0;
  double worst = 0.0;
  for (const auto& inst : corpus) {
    if (inst.num_cols() == 0 || inst.num_rows() == 0) continue;
    const BipartiteGraph g = to_bipartite(inst);
    if (inst.num_cols() <= 50) {
      worst = std::max(worst, std::abs(variable_projection_clustering(g) - brute_clustering(inst)));
      ++brute;
    }
    if (g.num_edges() == 0) continue;
    const auto f = extract_features(g, 1);
    const double m = static_cast<double>(inst.num_rows()), n = static_cast<double>(inst.num_cols());
    if (std::llround(f.coef_dens * m * n) != static_cast<long long>(inst.entries.size())) ++dens_bad;
    ++dens;
  }
  o.note(std::to_string(brute) + " instances vs O(n^3) clustering, max deviation " + fmt("%.3g", worst));
  o.require(worst <= 1e-12, "clustering within 1e-12");
  o.note("coef_dens*m*n == nnz on " + std::to_string(dens - dens_bad) + "/" + std::to_string(dens));
  o.require(dens_bad == 0, "coef_dens*m*n == nnz");

  double perm_worst = 0.0;
  std::size_t checked = 0;
  for (std::size_t k = 0; k < corpus.size(); k += 25) {
    const auto& base = corpus[k];
    if (base.num_cols() == 0 || base.num_rows() == 0 || to_bipartite(base).num_edges() == 0) continue;
    const auto ref = extract_features(to_bipartite(base), 9).values();
    for (int t = 0; t < 20; ++t) {
      const auto got = extract_features(to_bipartite(permuted(base, rng)), 9).values();
      for (std::size_t i = 0; i < ref.size(); ++i)
        perm_worst = std::max(perm_worst, std::abs(ref[i] - got[i]) / std::max(1.0, std::abs(ref[i])));
    }
    ++checked;
  }
  o.note(std::to_string(checked) + " instances x 20 row/column permutations, max relative change " +
         fmt("%.3g", perm_worst));
  o.require(perm_worst <= 1e-12, "permutation invariance");
  return o;
}

// ---------------------------------------------------------------------------
// Criteria 5 and 6 share one solved corpus.

struct SolvedSet {
  fs::path run_dir;
  std::vector<SolveRecord> records;
  std::vector<SolverInternalFeatures> features;
  std::size_t parse_errors = 0;
};

SolvedSet solve_set(const fs::path& work, const std::string& name, const GenParams& p, std::uint64_t seed)
{
  SolvedSet s;
  const fs::path inst = work / (name + "_instances");
  generate_batch(p, 400, seed, inst, jobs());
  s.run_dir = work / (name + "_run");
  BatchOptions opts;
  opts.jobs = jobs();
  opts.copy_instances = false;
  s.records = run_solver_batch(list_instance_files(inst), scip(10), s.run_dir, opts);
  s.features = features_from_records(SolverId::Scip, s.records, s.run_dir, &s.parse_errors);
  return s;
}

struct HalfStats {
  double root_gap, heuristics, pc1;
};

HalfStats split_medians(const std::vector<SolverInternalFeatures>& f)
{
  std::vector<double> g, h, c;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const SplitHalfReport r = split_half(f, seed);
    g.push_back(r.root_gap.w1);
    h.push_back(r.heuristics.w1);
    c.push_back(r.cuts ? r.cuts->w1.at(0) : NAN);
  }
  return {median(g), median(h), median(c)};
}

struct Corpus {
  SolvedSet is, sc;
  HalfStats within_is{}, within_sc{};
  bool ready = false;
  std::string error;
};

Corpus& corpus(const fs::path& work)
{
  static Corpus c;
  static bool built = false;
  if (!built) {
    built = true;
    try {
      c.is = solve_set(work, "is", is_params(), 501);
      c.sc = solve_set(work, "sc", sc_params(), 502);
      c.ready = true;
    } catch (const std::exception& e) {
      c.error = e.what();
    }
  }
  return c;
}

std::string half_text(const HalfStats& h)
{
  return "root gap " + fmt("%.4f", h.root_gap) + ", heuristics " + fmt("%.4f", h.heuristics) + ", PC1 " +
         fmt("%.4f", h.pc1);
}

Outcome split_half_stability(const fs::path& work)
{
  Outcome o;
  Corpus& c = corpus(work);
  if (!c.ready) {
    o.require(false, "solve corpus: " + c.error);
    return o;
  }
  const FeasibilityReport fis = feasibility_ratio(c.is.records), fsc = feasibility_ratio(c.sc.records);
  o.note("IS " + std::to_string(fis.optimal) + " optimal of " + std::to_string(fis.total) + ", SC " +
         std::to_string(fsc.optimal) + " of " + std::to_string(fsc.total));
  o.require(c.is.parse_errors == 0 && c.sc.parse_errors == 0, "all logs parse");
  c.within_is = split_medians(c.is.features);
  c.within_sc = split_medians(c.sc.features);
  const InternalFeatureBlock cross = compare_internal_features(c.is.features, c.sc.features);
  const HalfStats x{cross.root_gap.w1, cross.heuristics.w1, cross.cuts ? cross.cuts->w1.at(0) : NAN};
  o.note("within IS median W1: " + half_text(c.within_is));
  o.note("within SC (info): " + half_text(c.within_sc));
  o.note("cross IS/SC W1: " + half_text(x));
  o.require(c.within_is.root_gap <= 0.2 * x.root_gap, "root gap within <= 0.2 x cross");
  o.require(c.within_is.heuristics <= 0.2 * x.heuristics, "heuristics within <= 0.2 x cross");
  o.require(std::isfinite(x.pc1) && c.within_is.pc1 <= 0.2 * x.pc1, "PC1 within <= 0.2 x cross");
  return o;
}

Outcome truncation(const fs::path& work)
{
  Outcome o;
  Corpus& c = corpus(work);
  if (!c.ready) {
    o.require(false, "solve corpus: " + c.error);
    return o;
  }
  std::size_t errors = 0, increases = 0, logs = 0;
  std::vector<SolverInternalFeatures> truncated_is;
  for (SolvedSet* s : {&c.is, &c.sc}) {
    std::map<std::string, const SolverInternalFeatures*> full;
    for (const auto& f : s->features) full[f.instance] = &f;
    for (const auto& r : s->records) {
      const std::string text = slurp(s->run_dir / "logs" / (r.instance + ".log"));
      std::vector<std::string> lines;
      std::istringstream in(text);
      for (std::string line; std::getline(in, line);) lines.push_back(line);
      std::string head;
      for (std::size_t i = 0; i < lines.size() / 2; ++i) head += lines[i] + "\n";
      ++logs;
      try {
        SolverInternalFeatures t = parse_log(SolverId::Scip, head);
        t.instance = r.instance;
        const auto it = full.find(r.instance);
        if (it != full.end() && t.heuristic_success_count > it->second->heuristic_success_count) ++increases;
        if (s == &c.is) truncated_is.push_back(std::move(t));
      } catch (const Error&) {
        ++errors;
      }
    }
  }
  o.note(std::to_string(logs) + " logs cut to their first half: " + std::to_string(errors) + " parser errors, " +
         std::to_string(increases) + " heuristic count increases");
  o.require(errors == 0, "zero parser errors");
  o.require(increases == 0, "heuristic counts non-increasing");
  HalfStats t{};
  try {
    t = split_medians(truncated_is);
  } catch (const Error& e) {
    o.require(false, std::string("split-half on truncated logs: ") + e.what());
    return o;
  }
  o.note("truncated within IS median W1: " + half_text(t));
  auto close = [](double full, double trunc) { return std::abs(trunc - full) <= 0.5 * std::abs(full); };
  o.require(close(c.within_is.root_gap, t.root_gap), "root gap W1 within 50%");
  o.require(close(c.within_is.heuristics, t.heuristics), "heuristic W1 within 50%");
  o.require(close(c.within_is.pc1, t.pc1), "PC1 W1 within 50%");
  return o;
}

// ---------------------------------------------------------------------------

bool same_tree(const fs::path& a, const fs::path& b)
{
  std::vector<fs::path> fa, fb;
  for (const auto& e : fs::directory_iterator(a)) fa.push_back(e.path().filename());
  for (const auto& e : fs::directory_iterator(b)) fb.push_back(e.path().filename());
  std::sort(fa.begin(), fa.end());
  std::sort(fb.begin(), fb.end());
  if (fa != fb) return false;
  for (const auto& f : fa)
    if (slurp(a / f) != slurp(b / f)) return false;
  return true;
}

Outcome generator_feasibility(const fs::path& work)
{
  Outcome o;
  for (Family f : kFamilies) {
    const GenParams p = desk_params(f);
    const fs::path a = work / "gen_a", b = work / "gen_b";
    fs::remove_all(a);
    fs::remove_all(b);
    const BatchResult ra = generate_batch(p, 1000, 700, a, jobs());
    generate_batch(p, 1000, 700, b, jobs());
    const bool same = same_tree(a, b);
    std::size_t ok = 0;
    for (const auto& file : ra.files) {
      const MilpInstance inst = parse_instance_file(file);
      if (all_bounded(inst) && is_feasible_point(inst, certificate(inst, f))) ++ok;
    }
    // A few real solves as a cross-check of the certificates.
    std::vector<fs::path> pick(ra.files.begin(), ra.files.begin() + 5);
    BatchOptions opts;
    opts.jobs = jobs();
    opts.copy_instances = false;
    const auto recs = run_solver_batch(pick, scip(60), work / "gen_solve", opts);
    const FeasibilityReport fr = feasibility_ratio(recs);
    o.note(std::string(family_token(f)) + " " + std::to_string(ok) + "/1000 certified, " +
           std::to_string(fr.optimal + fr.feasible_time_limit) + "/5 solver-feasible" +
           (same ? ", byte-exact" : ", NOT byte-exact"));
    o.require(ok == 1000, std::string(family_token(f)) + " feasible and bounded");
    o.require(fr.optimal + fr.feasible_time_limit == 5, std::string(family_token(f)) + " solver check");
    o.require(same, std::string(family_token(f)) + " determinism");
    fs::remove_all(a);
    fs::remove_all(b);
    fs::remove_all(work / "gen_solve");
  }
  return o;
}

Outcome tuner_protocol(const fs::path& work)
{
  Outcome o;
  GenParams p;
  p.family = Family::SetCover;
  p.sc_rows = {60, 100};
  p.sc_cols = {120, 200};
  p.sc_density = {0.05, 0.1};
  const auto files = generate_batch(p, 20, 800, work / "tune_sc", jobs()).files;
  TuneOptions opts;
  opts.jobs = jobs();
  const SolverConfig cfg = scip(10);
  const ParameterSpace& space = default_space(SolverId::Scip);
  opts.work_dir = work / "tune_a";
  const TuningResult a = tune(space, files, cfg, 20, "random", 13, opts);
  opts.work_dir = work / "tune_b";
  const TuningResult b = tune(space, files, cfg, 20, "random", 13, opts);
  o.note("default " + fmt("%.4f s", a.default_mean) + ", best " + fmt("%.4f s", a.best_mean) + " (trial " +
         std::to_string(a.best_trial) + "), improvement " + fmt("%.2f%%", a.tuning_improvement_percent));
  o.require(a.history.size() == 20, "20 trials");
  o.require(!a.history.empty() && a.history.front().config.empty(), "trial 1 is the default");
  o.require(a.tuning_improvement_percent >= 0.0, "improvement >= 0");
  bool same = a.history.size() == b.history.size();
  for (std::size_t i = 0; same && i < a.history.size(); ++i)
    same = a.history[i].config == b.history[i].config && a.history[i].cached == b.history[i].cached &&
           a.history[i].index == b.history[i].index;
  o.note(same ? "trial history identical across two seeded runs" : "trial histories differ");
  o.require(same, "history reproducible");
  return o;
}

Outcome pipeline_identity(const fs::path& work)
{
  Outcome o;
  GenParams p;
  p.family = Family::IndependentSet;
  p.is_nodes = {60, 80};
  p.is_edge_prob = {0.05, 0.08};
  const fs::path set = work / "self_set";
  generate_batch(p, 16, 900, set, jobs());

  BenchmarkConfig c;
  c.baseline_dir = c.candidate_dir = set;
  c.output_dir = work / "self_out";
  c.solver = scip(10);
  c.jobs = jobs();
  c.seed = 3;
  RunStats first;
  const ComparisonReport r = run_benchmark(c, &first);
  o.require(!r.any_failed(), "no failed stage");
  o.require(r.structural && std::abs(r.structural->overall - 1.0) <= 1e-12, "similarity 1");
  o.require(r.nodes && r.nodes->relative_error_percent == 0.0, "RE 0");
  o.require(r.time_gap && r.time_gap->gap_percent == 0.0, "time gap 0");
  bool zero = r.internal_features && r.internal_features->root_gap.w1 == 0.0 &&
              r.internal_features->heuristics.w1 == 0.0;
  if (zero && r.internal_features->cuts)
    for (double w : r.internal_features->cuts->w1) zero = zero && std::abs(w) <= 1e-12;
  o.require(zero, "internal W1 0");
  if (r.structural && r.nodes && r.time_gap)
    o.note("similarity " + fmt("%.15f", r.structural->overall) + ", RE " +
           fmt("%.2f%%", r.nodes->relative_error_percent) + ", time gap " + fmt("%.2f%%", r.time_gap->gap_percent) +
           ", " + std::to_string(first.solver_launches) + " launches");

  const std::string before = slurp(c.output_dir / "report.json");
  RunStats second;
  run_benchmark(c, &second);
  const bool rerun_same = slurp(c.output_dir / "report.json") == before && second.solver_launches == 0;
  o.note(rerun_same ? "rerun: identical report, 0 launches" : "rerun report differs");
  o.require(rerun_same, "rerun byte-identical");

  // Fresh directories need a deterministic solver: real solve times vary.
  BenchmarkConfig d = c;
  d.solver = SolverConfig{};
  d.solver.solver = SolverId::Highs;
  d.solver.executable = fixture("fake_solvers/fake_highs");
  d.solver.time_limit = 10;
  d.metrics.split_half = true;
  d.output_dir = work / "fresh_a";
  run_benchmark(d);
  d.output_dir = work / "fresh_b";
  run_benchmark(d);
  const bool fresh_same = slurp(work / "fresh_a" / "report.json") == slurp(work / "fresh_b" / "report.json");
  o.note(fresh_same ? "two fresh runs (deterministic solver): identical JSON" : "fresh runs differ");
  o.require(fresh_same, "fresh runs byte-identical");
  return o;
}

Outcome parser_fixtures()
{
  Outcome o;
  std::size_t exact = 0, rejected = 0, cross = 0;
  const auto& all = expected_fixtures();
  for (const auto& e : all) {
    const std::string text = slurp(fixture(std::string("logs/") + e.file));
    const auto f = parse_log(e.solver, text);
    const bool gap_ok = f.root_gap_percent.has_value() == e.root_gap.has_value() &&
                        (!e.root_gap || *f.root_gap_percent == *e.root_gap);
    if (gap_ok && f.heuristic_success_count == e.heuristics && f.cut_vector == e.cut_vector && f.solver == e.solver)
      ++exact;
    else
      o.require(false, std::string(e.file) + " fields");
    for (auto other : {SolverId::Gurobi, SolverId::Scip, SolverId::Highs}) {
      if (other == e.solver) continue;
      ++cross;
      try {
        (void)parse_log(other, text);
      } catch (const Error& err) {
        if (err.code() == ErrorCode::UnrecognizedLog) ++rejected;
      }
    }
  }
  o.note(std::to_string(exact) + "/" + std::to_string(all.size()) + " fixtures exact, " + std::to_string(rejected) +
         "/" + std::to_string(cross) + " cross-solver parses rejected");
  o.require(rejected == cross, "cross-solver UnrecognizedLog");
  return o;
}

}  // namespace

int main()
{
  const fs::path work = fs::temp_directory_path() / "genbench_acceptance";
  fs::remove_all(work);
  fs::create_directories(work);

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"formula reproduction", formulas},
      {"W1 oracle equivalence", w1_oracle},
      {"JSD identities", jsd_identities},
      {"structural feature oracles", structural_oracles},
      {"split-half stability", [&] { return split_half_stability(work); }},
      {"truncation robustness", [&] { return truncation(work); }},
      {"generator feasibility", [&] { return generator_feasibility(work); }},
      {"tuner protocol", [&] { return tuner_protocol(work); }},
      {"pipeline identity", [&] { return pipeline_identity(work); }},
      {"parser fixtures", parser_fixtures},
  };
  int passed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s [%zu] %s (%.1f s): %s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first, secs,
                o.detail.c_str());
    std::fflush(stdout);
    passed += o.ok;
  }
  std::printf("acceptance: %d/%zu criteria passed\n", passed, criteria.size());
  fs::remove_all(work);
  return passed == static_cast<int>(criteria.size()) ? 0 : 1;
}
