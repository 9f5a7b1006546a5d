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
#include <cstdio>
#include <fstream>
#include <sstream>

#include "genbench/error.hpp"
#include "genbench/graph.hpp"
#include "genbench/instance.hpp"
#include "genbench/pipeline.hpp"
#include "genbench/random.hpp"

namespace genbench {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

const std::vector<std::string> kStages = {"ingest",   "parse",       "features", "structural",
                                          "solve",    "feasibility", "nodes",    "time_gap",
                                          "internal_features",       "split_half", "tuning"};

std::string read_file(const fs::path& p)
{
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& text)
{
  fs::create_directories(p.parent_path());
  const fs::path tmp = p.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
  }
  fs::rename(tmp, p);
}

std::string hex(std::uint64_t v)
{
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// Names and content hashes of every file, in name order.
std::string set_fingerprint(const std::vector<fs::path>& files)
{
  std::vector<std::pair<std::string, std::string>> entries;
  for (const auto& f : files) entries.emplace_back(f.stem().string(), hex(stable_hash(read_file(f))));
  std::sort(entries.begin(), entries.end());
  std::string text;
  for (const auto& [name, h] : entries) text += name + " " + h + "\n";
  return text;
}

std::string cache_key(std::string_view kind, const std::string& material)
{
  const std::string text = std::string(kind) + "\n" + std::string(kToolkitVersion) + "\n" + material;
  // Two independent 64-bit hashes; 128 bits keeps accidental collisions out
  // of the picture for any realistic run directory.
  return hex(stable_hash(text)) + hex(derive_seed(stable_hash(text), "cache"));
}

class Stages {
 public:
  explicit Stages(std::vector<StageStatus>& out) : out_(out)
  {
    for (const auto& s : kStages) out_.push_back({s, "pending", ""});
  }
  void ok(const std::string& s, const std::string& msg = "") { set(s, "ok", msg); }
  void skip(const std::string& s, const std::string& msg) { set(s, "skipped", msg); }
  void fail(const std::string& s, const std::string& msg) { set(s, "failed", msg); }
  bool done(const std::string& s) const { return state(s) == "ok"; }
  std::string state(const std::string& s) const
  {
    for (const auto& st : out_)
      if (st.stage == s) return st.state;
    return "";
  }
  /// Anything still pending is skipped with `msg`.
  void skip_pending(const std::string& msg)
  {
    for (auto& st : out_)
      if (st.state == "pending") {
        st.state = "skipped";
        st.message = msg;
      }
  }

 private:
  void set(const std::string& s, const char* state, const std::string& msg)
  {
    for (auto& st : out_)
      if (st.stage == s) {
        st.state = state;
        st.message = msg;
      }
  }
  std::vector<StageStatus>& out_;
};

std::string err_text(const std::exception& e)
{
  if (const auto* g = dynamic_cast<const Error*>(&e)) return std::string(to_string(g->code())) + ": " + e.what();
  return e.what();
}

SetInfo set_info(const std::string& role, const std::string& source, const fs::path& dir)
{
  SetInfo s;
  s.role = role;
  s.source = source;
  s.label = role;
  const fs::path meta = dir / "set_meta.json";
  if (!fs::is_regular_file(meta)) return s;
  json j;
  try {
    j = json::parse(read_file(meta));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedFile, meta.string() + ": " + e.what());
  }
  auto text = [&](const char* key) -> std::string {
    if (!j.contains(key) || j.at(key).is_null()) return "";
    return j.at(key).is_string() ? j.at(key).get<std::string>() : j.at(key).dump();
  };
  if (const auto l = text("label"); !l.empty()) s.label = l;
  s.problem = text("problem");
  s.model = text("model");
  s.eta = text("eta");
  return s;
}

std::vector<StructuralFeatureVector> read_features(const fs::path& p)
{
  std::vector<StructuralFeatureVector> out;
  std::istringstream in(read_file(p));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    std::array<double, StructuralFeatureVector::kSize> v{};
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = j.at(std::string(StructuralFeatureVector::kNames[i])).get<double>();
    out.push_back(StructuralFeatureVector::from_values(v));
  }
  return out;
}

struct SetState {
  std::string role;
  std::vector<fs::path> files;
  std::string fingerprint;
  std::vector<MilpInstance> instances;
  std::vector<StructuralFeatureVector> features;
  std::vector<SolveRecord> records;
  fs::path run_dir;
  std::vector<SolverInternalFeatures> internal;
  std::size_t log_parse_errors = 0;
};

class Runner {
 public:
  Runner(const BenchmarkConfig& c, RunStats& stats, ComparisonReport& rep)
      : c_(c), stats_(stats), rep_(rep), st_(rep.stages), out_(c.output_dir)
  {
    base_.role = "baseline";
    cand_.role = "candidate";
  }

  void run()
  {
    fs::create_directories(out_);
    write_file(out_ / "config.json", to_json(c_).dump(2) + "\n");
    fill_settings();
    if (!ingest()) {
      st_.skip_pending("dependency 'ingest' failed");
      return;
    }
    structural_stages();
    solver_stages();
    tuning_stage();
    st_.skip_pending("not run");
  }

 private:
  std::uint64_t seed_for(std::string_view label) const { return derive_seed(c_.seed, label); }

  void fill_settings()
  {
    json s;
    s["seed"] = c_.seed;
    s["derived_seeds"] = {{"structural", seed_for("structural")},
                          {"candidate_generation", seed_for("candidate")},
                          {"split_half_baseline", seed_for("split-half/baseline")},
                          {"split_half_candidate", seed_for("split-half/candidate")},
                          {"tuning", seed_for("tuning")}};
    s["bins"] = c_.bins;
    s["pca_k"] = c_.pca_k;
    s["clustering_algorithm"] = std::string(kClusteringAlgorithm);
    s["modularity_algorithm"] = std::string(kModularityAlgorithm);
    json solver = to_json(c_.solver);
    solver.erase("log_path");
    s["solver"] = solver;
    s["watchdog_grace_seconds"] = kWatchdogGraceSeconds;
    s["time_scoring"] = "solver-reported solve time, wall time when absent";
    s["tuning"] = {{"budget", c_.tuning.budget},
                   {"strategy", c_.tuning.strategy},
                   {"space_file", c_.tuning.space_file.string()},
                   {"timeout_scoring", "PAR-1"},
                   {"tuning_set", "candidate"},
                   {"test_set", "baseline"}};
    if (c_.candidate_generator)
      s["candidate_generator"] = {{"count", c_.candidate_generator->count},
                                  {"params", to_json(c_.candidate_generator->params)}};
    else
      s["candidate_generator"] = nullptr;
    rep_.settings = s;
  }

  bool ingest()
  {
    try {
      base_.files = list_instance_files(c_.baseline_dir);
      if (base_.files.empty()) throw Error(ErrorCode::EmptySet, "baseline directory has no instances");
      rep_.baseline = set_info("baseline", c_.baseline_dir.string(), c_.baseline_dir);
      if (c_.candidate_generator) {
        const fs::path dir = out_ / "candidate" / "instances";
        fs::remove_all(dir);
        const auto& g = *c_.candidate_generator;
        cand_.files = generate_batch(g.params, g.count, seed_for("candidate"), dir, c_.jobs).files;
        rep_.candidate = set_info("candidate", "generated:" + std::string(family_token(g.params.family)), dir);
        if (rep_.candidate.problem.empty()) rep_.candidate.problem = std::string(family_token(g.params.family));
      } else {
        cand_.files = list_instance_files(c_.candidate_dir);
        if (cand_.files.empty()) throw Error(ErrorCode::EmptySet, "candidate directory has no instances");
        rep_.candidate = set_info("candidate", c_.candidate_dir.string(), c_.candidate_dir);
      }
      rep_.baseline.instances = base_.files.size();
      rep_.candidate.instances = cand_.files.size();
      base_.fingerprint = set_fingerprint(base_.files);
      cand_.fingerprint = set_fingerprint(cand_.files);
      st_.ok("ingest");
      return true;
    } catch (const std::exception& e) {
      st_.fail("ingest", err_text(e));
      return false;
    }
  }

  // -------------------------------------------------------------------------

  void structural_stages()
  {
    if (!c_.metrics.structural) {
      for (const char* s : {"parse", "features", "structural"}) st_.skip(s, "disabled");
      return;
    }
    try {
      for (SetState* s : {&base_, &cand_}) parse_set(*s, s == &base_ ? rep_.baseline : rep_.candidate);
      st_.ok("parse");
    } catch (const std::exception& e) {
      st_.fail("parse", err_text(e));
      st_.skip("features", "dependency 'parse' failed");
      st_.skip("structural", "dependency 'parse' failed");
      return;
    }
    try {
      for (SetState* s : {&base_, &cand_}) feature_set(*s);
      st_.ok("features");
    } catch (const std::exception& e) {
      st_.fail("features", err_text(e));
      st_.skip("structural", "dependency 'features' failed");
      return;
    }
    try {
      rep_.structural = structural_similarity(base_.features, cand_.features, c_.bins);
      st_.ok("structural");
    } catch (const std::exception& e) {
      st_.fail("structural", err_text(e));
    }
  }

  void parse_set(SetState& s, SetInfo& info)
  {
    for (const auto& f : s.files) {
      try {
        s.instances.push_back(parse_instance_file(f));
      } catch (const Error& e) {
        ++info.parse_failures;
        rep_.notes.push_back(s.role + ": skipped " + f.filename().string() + " (" + err_text(e) + ")");
      }
    }
    if (s.instances.empty()) throw Error(ErrorCode::EmptySet, s.role + ": no instance could be parsed");
  }

  void feature_set(SetState& s)
  {
    const std::string key = cache_key("features", s.fingerprint + "seed " + std::to_string(seed_for("structural")) +
                                                      "\n" + std::string(kClusteringAlgorithm) + "\n" +
                                                      std::string(kModularityAlgorithm));
    const fs::path cached = out_ / "cache" / "features" / (key + ".jsonl");
    if (fs::is_regular_file(cached)) {
      s.features = read_features(cached);
      ++stats_.feature_cache_hits;
    } else {
      s.features = extract_set_features(s.instances, seed_for("structural"));
      std::string text;
      for (std::size_t i = 0; i < s.features.size(); ++i) text += structural_features_json(s.instances[i].name, s.features[i]).dump() + "\n";
      write_file(cached, text);
    }
    fs::create_directories(out_ / s.role);
    fs::copy_file(cached, out_ / s.role / "features.jsonl", fs::copy_options::overwrite_existing);
  }

  // -------------------------------------------------------------------------

  bool resolve_solver(const std::string& stage)
  {
    if (!exe_.empty()) return true;
    try {
      exe_ = discover_solver(c_.solver.solver, c_.solver.executable);
      return true;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SolverNotFound) throw;
      st_.skip(stage, std::string("solver not found: ") + e.what());
      return false;
    }
  }

  std::string solver_material() const
  {
    json cfg = to_json(c_.solver);
    cfg.erase("executable");
    cfg.erase("log_path");
    return cfg.dump() + "\nexecutable " + exe_.string() + " " + hex(stable_hash(read_file(exe_))) + "\ngrace " +
           std::to_string(kWatchdogGraceSeconds) + "\n";
  }

  void solve_set(SetState& s)
  {
    const std::string key = cache_key("solve", s.fingerprint + solver_material());
    s.run_dir = out_ / "cache" / "solve" / key;
    const fs::path marker = s.run_dir / "cache_key";
    if (fs::is_regular_file(marker) && read_file(marker) == key && fs::is_regular_file(s.run_dir / "records.jsonl")) {
      s.records = read_records(s.run_dir / "records.jsonl");
      ++stats_.solve_cache_hits;
    } else {
      fs::remove_all(s.run_dir);
      SolverConfig cfg = c_.solver;
      cfg.executable = exe_;
      BatchOptions opts;
      opts.jobs = c_.jobs;
      opts.copy_instances = false;
      s.records = run_solver_batch(s.files, cfg, s.run_dir, opts);
      stats_.solver_launches += s.files.size();
      write_file(marker, key);
    }
    fs::create_directories(out_ / s.role);
    fs::copy_file(s.run_dir / "records.jsonl", out_ / s.role / "records.jsonl", fs::copy_options::overwrite_existing);
    SetInfo& info = &s == &base_ ? rep_.baseline : rep_.candidate;
    for (const auto& r : s.records)
      if (!r.solver_version.empty()) {
        info.solver_version = r.solver_version;
        break;
      }
  }

  void solver_stages()
  {
    const MetricToggles& m = c_.metrics;
    const std::vector<std::pair<std::string, bool>> dependents = {{"feasibility", m.feasibility},
                                                                  {"nodes", m.nodes},
                                                                  {"time_gap", m.time_gap},
                                                                  {"internal_features", m.internal_features},
                                                                  {"split_half", m.split_half}};
    for (const auto& [name, on] : dependents)
      if (!on) st_.skip(name, "disabled");
    if (!m.needs_solve()) {
      st_.skip("solve", "disabled");
      return;
    }
    if (!resolve_solver("solve")) {
      for (const auto& [name, on] : dependents)
        if (on) st_.skip(name, "dependency 'solve' skipped");
      return;
    }
    try {
      solve_set(base_);
      solve_set(cand_);
      st_.ok("solve");
    } catch (const std::exception& e) {
      st_.fail("solve", err_text(e));
      for (const auto& [name, on] : dependents)
        if (on) st_.skip(name, "dependency 'solve' failed");
      return;
    }

    stage("feasibility", m.feasibility, [&] {
      rep_.feasibility = FeasibilityBlock{feasibility_ratio(base_.records), feasibility_ratio(cand_.records)};
    });
    stage("nodes", m.nodes, [&] {
      const HardnessReport h = branching_node_report(cand_.records, base_.records);
      rep_.nodes = NodeBlock{h.baseline, h.generated, h.node_relative_error_percent};
    });
    stage("time_gap", m.time_gap, [&] {
      TimeGapBlock t;
      t.gap_percent = solving_time_gap(cand_.records, base_.records);
      t.baseline_mean = mean_solve_time(base_.records);
      t.candidate_mean = mean_solve_time(cand_.records);
      auto usable = [](const std::vector<SolveRecord>& rs) {
        return static_cast<std::size_t>(
            std::count_if(rs.begin(), rs.end(), [](const SolveRecord& r) { return r.status != SolveStatus::Error; }));
      };
      t.baseline_records = usable(base_.records);
      t.candidate_records = usable(cand_.records);
      rep_.time_gap = t;
    });

    if (m.internal_features || m.split_half) {
      try {
        for (SetState* s : {&base_, &cand_}) {
          s->internal = features_from_records(c_.solver.solver, s->records, s->run_dir, &s->log_parse_errors);
          std::string text;
          for (const auto& f : s->internal) text += to_json(f).dump() + "\n";
          write_file(out_ / s->role / "internal.jsonl", text);
        }
      } catch (const std::exception& e) {
        if (m.internal_features) st_.fail("internal_features", err_text(e));
        if (m.split_half) st_.skip("split_half", "log parsing failed");
        return;
      }
    }
    stage("internal_features", m.internal_features, [&] {
      InternalFeatureBlock b = compare_internal_features(base_.internal, cand_.internal, c_.pca_k);
      b.parse_errors_a = base_.log_parse_errors;
      b.parse_errors_b = cand_.log_parse_errors;
      rep_.internal_features = std::move(b);
    });
    if (m.split_half) {
      std::string errors;
      for (SetState* s : {&base_, &cand_}) {
        try {
          auto r = split_half(s->internal, seed_for("split-half/" + s->role), c_.pca_k);
          (s == &base_ ? rep_.split_half_baseline : rep_.split_half_candidate) = std::move(r);
        } catch (const std::exception& e) {
          errors += (errors.empty() ? "" : "; ") + s->role + ": " + err_text(e);
        }
      }
      if (errors.empty())
        st_.ok("split_half");
      else
        st_.fail("split_half", errors);
    }
  }

  template <class F>
  void stage(const std::string& name, bool enabled, F&& body)
  {
    if (!enabled) return;
    try {
      body();
      st_.ok(name);
    } catch (const std::exception& e) {
      st_.fail(name, err_text(e));
    }
  }

  // -------------------------------------------------------------------------

  void tuning_stage()
  {
    if (!c_.metrics.tuning) {
      st_.skip("tuning", "disabled");
      return;
    }
    if (!resolve_solver("tuning")) return;
    try {
      const ParameterSpace space =
          c_.tuning.space_file.empty() ? default_space(c_.solver.solver) : load_space(c_.tuning.space_file);
      const std::string key =
          cache_key("tuning", "tune\n" + cand_.fingerprint + "test\n" + base_.fingerprint + write_space(space) +
                                  "budget " + std::to_string(c_.tuning.budget) + "\nstrategy " + c_.tuning.strategy +
                                  "\nseed " + std::to_string(seed_for("tuning")) + "\n" + solver_material());
      const fs::path cached = out_ / "cache" / "tuning" / (key + ".json");
      TuningResult result;
      if (fs::is_regular_file(cached)) {
        result = tuning_result_from_json(json::parse(read_file(cached)));
        ++stats_.solve_cache_hits;
      } else {
        SolverConfig cfg = c_.solver;
        cfg.executable = exe_;
        TuneOptions opts;
        opts.jobs = c_.jobs;
        opts.work_dir = out_ / "tuning" / "trials";
        fs::remove_all(opts.work_dir);
        result = tune(space, cand_.files, cfg, c_.tuning.budget, c_.tuning.strategy, seed_for("tuning"), opts);
        opts.work_dir = out_ / "tuning" / "test";
        fs::remove_all(opts.work_dir);
        evaluate_on_test_set(result, base_.files, cfg, opts);
        for (const auto& t : result.history)
          if (!t.cached) stats_.solver_launches += cand_.files.size();
        stats_.solver_launches += base_.files.size() * (result.best_config.empty() ? 1 : 2);
        write_file(cached, to_json(result).dump(2) + "\n");
      }
      write_file(out_ / "tuning" / "tuning_result.json", to_json(result).dump(2) + "\n");
      rep_.tuning = std::move(result);
      st_.ok("tuning");
    } catch (const std::exception& e) {
      st_.fail("tuning", err_text(e));
    }
  }

  const BenchmarkConfig& c_;
  RunStats& stats_;
  ComparisonReport& rep_;
  Stages st_;
  fs::path out_;
  fs::path exe_;
  SetState base_;
  SetState cand_;
};

}  // namespace

json structural_features_json(const std::string& name, const StructuralFeatureVector& f)
{
  json j;
  j["instance"] = name;
  const auto v = f.values();
  for (std::size_t i = 0; i < StructuralFeatureVector::kSize; ++i) j[std::string(StructuralFeatureVector::kNames[i])] = v[i];
  return j;
}

ComparisonReport run_benchmark(const BenchmarkConfig& config, RunStats* stats)
{
  validate(config, true);
  RunStats local;
  ComparisonReport report;
  Runner runner(config, stats ? *stats : local, report);
  runner.run();
  write_file(config.output_dir / "report.json", render_report(report, ReportFormat::Json));
  return report;
}

}  // namespace genbench
