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

#include "genbench/solver.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "genbench/error.hpp"
#include "genbench/log_parsers.hpp"
#include "process.hpp"
#include "text_util.hpp"

namespace genbench {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

// Kill slightly before the grace runs out so that the measured wall time
// stays within limit + grace.
constexpr double kKillMargin = 0.25;

const std::vector<std::string> kEmphasis = {"default", "aggressive", "fast", "off"};

std::string read_text(const fs::path& p)
{
  std::ifstream in(p, std::ios::binary);
  if (!in) return {};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_number(double v)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::uint64_t solver_seed(std::uint64_t seed)
{
  // All three solvers take a nonnegative 32-bit integer seed.
  return seed % 2147483648ULL;
}

const AdapterParameter* find_parameter(SolverId solver, std::string_view name)
{
  for (const auto& p : adapter_parameters(solver))
    if (p.name == name) return &p;
  return nullptr;
}

void check_parameters(const SolverConfig& config)
{
  for (const auto& [name, value] : config.parameters) {
    const auto* p = find_parameter(config.solver, name);
    if (!p)
      throw Error(ErrorCode::UnknownParameter,
                  "'" + name + "' is not a " + std::string(to_string(config.solver)) + " adapter parameter");
    if (p->choices.empty()) {
      if (!detail::parse_number(value))
        throw Error(ErrorCode::InvalidConfig, "parameter '" + name + "' needs a number, got '" + value + "'");
    } else if (std::find(p->choices.begin(), p->choices.end(), value) == p->choices.end()) {
      throw Error(ErrorCode::InvalidConfig, "parameter '" + name + "' does not accept '" + value + "'");
    }
  }
}

std::optional<double> opt_number(const json& j, const char* key)
{
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<double>();
}

}  // namespace

void validate(const SolverConfig& config)
{
  if (!(config.time_limit > 0.0) || !std::isfinite(config.time_limit))
    throw Error(ErrorCode::InvalidConfig, "time limit must be a positive number of seconds");
  if (config.threads < 1) throw Error(ErrorCode::InvalidConfig, "thread count must be at least 1");
  check_parameters(config);
}

std::optional<double> SolveRecord::gap_abs() const
{
  if (!incumbent || !bound) return std::nullopt;
  return std::fabs(*incumbent - *bound);
}

std::optional<double> SolveRecord::gap_rel() const
{
  if (!incumbent || !bound) return std::nullopt;
  return relative_gap(*incumbent, *bound);
}

double record_time(const SolveRecord& record)
{
  return record.solve_time ? *record.solve_time : record.wall_time;
}

bool hit_time_limit(const SolveRecord& record)
{
  return record.status == SolveStatus::FeasibleTimeLimit || record.status == SolveStatus::TimeLimitNoIncumbent;
}

// ---------------------------------------------------------------------------
// JSON

json to_json(const SolveRecord& r)
{
  json j;
  j["instance"] = r.instance;
  j["status"] = std::string(to_string(r.status));
  j["sense"] = std::string(to_string(r.sense));
  j["wall_time"] = r.wall_time;
  j["solve_time"] = r.solve_time ? json(*r.solve_time) : json(nullptr);
  j["nodes"] = r.nodes;
  j["nodes_known"] = r.nodes_known;
  j["incumbent"] = r.incumbent ? json(*r.incumbent) : json(nullptr);
  j["bound"] = r.bound ? json(*r.bound) : json(nullptr);
  j["printed_gap"] = r.printed_gap ? json(*r.printed_gap) : json(nullptr);
  const auto ga = r.gap_abs();
  const auto gr = r.gap_rel();
  j["gap_abs"] = ga ? json(*ga) : json(nullptr);
  j["gap_rel"] = gr ? json(*gr) : json(nullptr);
  j["status_text"] = r.status_text;
  j["solver_version"] = r.solver_version;
  j["log"] = r.log_path;
  j["exit_code"] = r.exit_code;
  j["killed"] = r.killed;
  return j;
}

SolveRecord solve_record_from_json(const json& j)
{
  try {
    SolveRecord r;
    r.instance = j.at("instance").get<std::string>();
    r.status = status_from_string(j.at("status").get<std::string>());
    r.sense = j.value("sense", std::string("minimize")) == "maximize" ? ObjectiveSense::Maximize
                                                                      : ObjectiveSense::Minimize;
    r.wall_time = j.at("wall_time").get<double>();
    r.solve_time = opt_number(j, "solve_time");
    r.nodes = j.at("nodes").get<std::int64_t>();
    r.nodes_known = j.value("nodes_known", true);
    r.incumbent = opt_number(j, "incumbent");
    r.bound = opt_number(j, "bound");
    r.printed_gap = opt_number(j, "printed_gap");
    r.status_text = j.value("status_text", std::string());
    r.solver_version = j.value("solver_version", std::string());
    r.log_path = j.value("log", std::string());
    r.exit_code = j.value("exit_code", 0);
    r.killed = j.value("killed", false);
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedFile, std::string("solve record: ") + e.what());
  }
}

json to_json(const SolverConfig& c)
{
  json j;
  j["solver"] = std::string(to_string(c.solver));
  j["executable"] = c.executable.string();
  j["time_limit"] = c.time_limit;
  j["threads"] = c.threads;
  j["seed"] = c.seed;
  json params = json::object();
  for (const auto& [k, v] : c.parameters) params[k] = v;
  j["parameters"] = params;
  return j;
}

SolverConfig solver_config_from_json(const json& j)
{
  try {
    SolverConfig c;
    c.solver = solver_from_string(j.at("solver").get<std::string>());
    c.executable = j.value("executable", std::string());
    c.time_limit = j.at("time_limit").get<double>();
    c.threads = j.value("threads", 1);
    c.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("parameters")) {
      for (const auto& [k, v] : j["parameters"].items())
        c.parameters[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, std::string("solver config: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Adapters

const std::vector<AdapterParameter>& adapter_parameters(SolverId solver)
{
  using C = ParameterChannel;
  static const std::vector<AdapterParameter> scip = {
      {"heuristics/emphasis", C::Command, kEmphasis},
      {"separating/emphasis", C::Command, kEmphasis},
      {"presolving/emphasis", C::Command, kEmphasis},
      {"limits/gap", C::SettingsFile, {}},
      {"limits/nodes", C::SettingsFile, {}},
      {"presolving/maxrounds", C::SettingsFile, {}},
      {"separating/maxrounds", C::SettingsFile, {}},
      {"separating/maxroundsroot", C::SettingsFile, {}},
      {"separating/maxcuts", C::SettingsFile, {}},
      {"separating/maxcutsroot", C::SettingsFile, {}},
      {"conflict/enable", C::SettingsFile, {"TRUE", "FALSE"}},
      {"lp/initalgorithm", C::SettingsFile, {"s", "p", "d", "b", "c"}},
      {"branching/preferbinary", C::SettingsFile, {"TRUE", "FALSE"}},
      {"parallel/maxnthreads", C::SettingsFile, {}},
  };
  static const std::vector<AdapterParameter> highs = {
      {"mip_heuristic_effort", C::SettingsFile, {}},
      {"presolve", C::SettingsFile, {"off", "choose", "on"}},
      {"mip_pool_soft_limit", C::SettingsFile, {}},
      {"mip_rel_gap", C::SettingsFile, {}},
      {"mip_abs_gap", C::SettingsFile, {}},
      {"mip_max_nodes", C::SettingsFile, {}},
      {"mip_max_leaves", C::SettingsFile, {}},
      {"mip_detect_symmetry", C::SettingsFile, {"true", "false"}},
      {"mip_lp_age_limit", C::SettingsFile, {}},
      {"mip_pscost_minreliable", C::SettingsFile, {}},
      {"threads", C::Flag, {}},
  };
  static const std::vector<AdapterParameter> gurobi = {
      {"Heuristics", C::Flag, {}},
      {"MIPFocus", C::Flag, {}},
      {"VarBranch", C::Flag, {}},
      {"BranchDir", C::Flag, {}},
      {"Presolve", C::Flag, {}},
      {"PrePasses", C::Flag, {}},
      {"Cuts", C::Flag, {}},
      {"Method", C::Flag, {}},
      {"MIPGap", C::Flag, {}},
      {"NodeLimit", C::Flag, {}},
      {"Symmetry", C::Flag, {}},
      {"NodeMethod", C::Flag, {}},
  };
  switch (solver) {
    case SolverId::Scip: return scip;
    case SolverId::Highs: return highs;
    case SolverId::Gurobi: return gurobi;
  }
  return scip;
}

std::string default_executable_name(SolverId solver)
{
  switch (solver) {
    case SolverId::Scip: return "scip";
    case SolverId::Highs: return "highs";
    case SolverId::Gurobi: return "gurobi_cl";
  }
  return {};
}

namespace {

bool is_executable(const fs::path& p)
{
  std::error_code ec;
  return fs::is_regular_file(p, ec) && ::access(p.c_str(), X_OK) == 0;
}

}  // namespace

fs::path discover_solver(SolverId solver, const fs::path& explicit_path)
{
  if (!explicit_path.empty()) {
    if (is_executable(explicit_path)) return fs::absolute(explicit_path);
    throw Error(ErrorCode::SolverNotFound, "solver executable " + explicit_path.string() + " is not executable");
  }
  const std::string env_name = "GENBENCH_SOLVER_" + detail::upper(to_string(solver));
  if (const char* env = std::getenv(env_name.c_str()); env && *env) {
    if (is_executable(env)) return fs::absolute(env);
    throw Error(ErrorCode::SolverNotFound, env_name + "=" + env + " is not executable");
  }
  const std::string name = default_executable_name(solver);
  if (const char* path = std::getenv("PATH")) {
    std::string_view rest = path;
    while (!rest.empty()) {
      const auto colon = rest.find(':');
      const auto dir = rest.substr(0, colon);
      if (!dir.empty()) {
        fs::path candidate = fs::path(std::string(dir)) / name;
        if (is_executable(candidate)) return candidate;
      }
      if (colon == std::string_view::npos) break;
      rest.remove_prefix(colon + 1);
    }
  }
#ifdef GENBENCH_SOLVER_DIR
  {
    fs::path bundled = fs::path(GENBENCH_SOLVER_DIR) / name;
    if (is_executable(bundled)) return bundled;
  }
#endif
  throw Error(ErrorCode::SolverNotFound,
              "no " + std::string(to_string(solver)) + " executable found (set " + env_name + ")");
}

SolverInvocation build_invocation(const SolverConfig& config,
                                  const fs::path& executable,
                                  const fs::path& instance,
                                  const fs::path& log_path)
{
  validate(config);
  SolverInvocation inv;
  inv.argv.push_back(executable.string());
  const std::string limit = format_number(config.time_limit);
  const std::string seed = std::to_string(solver_seed(config.seed));
  const std::string threads = std::to_string(config.threads);

  switch (config.solver) {
    case SolverId::Scip: {
      std::string settings = "limits/time = " + limit + "\n";
      settings += "randomization/randomseedshift = " + seed + "\n";
      settings += "lp/threads = " + threads + "\n";
      std::string commands = "read " + instance.string();
      bool threads_overridden = false;
      for (const auto& [name, value] : config.parameters) {
        const auto* p = find_parameter(config.solver, name);
        if (p->channel == ParameterChannel::Command) {
          const std::string group = name.substr(0, name.find('/'));
          commands += " set " + group + " emphasis " + value;
        } else {
          if (name == "parallel/maxnthreads") threads_overridden = true;
          settings += name + " = " + value + "\n";
        }
      }
      if (!threads_overridden) settings += "parallel/maxnthreads = " + threads + "\n";
      commands += " optimize display statistics quit";
      fs::path set_file = log_path;
      set_file += ".set";
      inv.files.emplace_back(set_file, settings);
      inv.argv.insert(inv.argv.end(), {"-s", set_file.string(), "-c", commands});
      break;
    }
    case SolverId::Highs: {
      std::string effective_threads = threads;
      std::string options;
      for (const auto& [name, value] : config.parameters) {
        if (name == "threads") {
          effective_threads = value;
          continue;
        }
        options += name + " = " + value + "\n";
      }
      inv.argv.insert(inv.argv.end(), {"--model_file", instance.string(), "--time_limit", limit, "--threads",
                                       effective_threads, "--random_seed", seed});
      if (!options.empty()) {
        fs::path opt_file = log_path;
        opt_file += ".opt";
        inv.files.emplace_back(opt_file, options);
        inv.argv.insert(inv.argv.end(), {"--options_file", opt_file.string()});
      }
      break;
    }
    case SolverId::Gurobi: {
      inv.argv.push_back("TimeLimit=" + limit);
      inv.argv.push_back("Threads=" + threads);
      inv.argv.push_back("Seed=" + seed);
      for (const auto& [name, value] : config.parameters) inv.argv.push_back(name + "=" + value);
      inv.argv.push_back(instance.string());
      break;
    }
  }
  return inv;
}

// ---------------------------------------------------------------------------
// Classification

SolveRecord classify_run(SolverId solver, std::string_view log_text, const ProcessOutcome& outcome)
{
  SolveRecord r;
  r.exit_code = outcome.exit_code;
  r.killed = outcome.killed;
  if (!outcome.launched) {
    r.status = SolveStatus::Error;
    r.status_text = "solver could not be launched (exit code " + std::to_string(outcome.exit_code) + ")";
    return r;
  }
  const SolveSummary s = parse_solve_summary(solver, log_text);
  r.solver_version = s.solver_version;
  r.solve_time = s.solve_time;
  r.nodes_known = s.nodes.has_value();
  r.nodes = s.nodes ? std::max<std::int64_t>(0, *s.nodes) : 0;
  r.incumbent = s.has_incumbent ? s.primal_bound : std::nullopt;
  r.bound = s.dual_bound;
  r.printed_gap = s.gap_percent;
  r.status_text = s.status_text;

  switch (s.terminal) {
    case LogTerminal::Optimal:
      if (!r.incumbent) {
        r.status = SolveStatus::Error;
        r.status_text += " (optimal without a parsed objective value)";
      } else {
        r.status = SolveStatus::Optimal;
        if (!r.bound) r.bound = r.incumbent;
      }
      break;
    case LogTerminal::Infeasible:
    case LogTerminal::InfeasibleOrUnbounded:
      r.status = SolveStatus::Infeasible;
      break;
    case LogTerminal::Unbounded:
      r.status = SolveStatus::Unbounded;
      break;
    case LogTerminal::TimeLimit:
    case LogTerminal::OtherLimit:
      r.status = r.incumbent ? SolveStatus::FeasibleTimeLimit : SolveStatus::TimeLimitNoIncumbent;
      break;
    case LogTerminal::Unknown:
      if (outcome.killed) {
        // The watchdog fired before the solver printed its report.
        std::optional<double> inc;
        try {
          inc = parse_log(solver, log_text).root_incumbent;
        } catch (const Error&) {
        }
        r.incumbent = inc;
        r.bound.reset();
        r.status = inc ? SolveStatus::FeasibleTimeLimit : SolveStatus::TimeLimitNoIncumbent;
        r.status_text = "killed by watchdog";
      } else {
        r.status = SolveStatus::Error;
        r.status_text = "no recognizable terminal status (exit code " + std::to_string(outcome.exit_code) + ")";
      }
      break;
  }
  if (r.status == SolveStatus::Infeasible || r.status == SolveStatus::Unbounded) {
    r.incumbent.reset();
    r.bound.reset();
  }
  return r;
}

// ---------------------------------------------------------------------------
// Running

SolveRecord run_solver(const fs::path& instance_path, const SolverConfig& config)
{
  validate(config);
  const fs::path exe = discover_solver(config.solver, config.executable);
  const MilpInstance inst = parse_instance_file(instance_path);

  fs::path log_path = config.log_path;
  if (log_path.empty()) {
    log_path = fs::temp_directory_path() /
               ("genbench-" + std::to_string(::getpid()) + "-" + instance_path.stem().string() + ".log");
  }
  if (log_path.has_parent_path()) fs::create_directories(log_path.parent_path());

  const SolverInvocation inv = build_invocation(config, exe, fs::absolute(instance_path), log_path);
  for (const auto& [path, content] : inv.files) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    out << content;
  }

  const auto proc =
      detail::run_process(inv.argv, log_path, config.time_limit + kWatchdogGraceSeconds - kKillMargin);
  const std::string log_text = read_text(log_path);
  SolveRecord r = classify_run(config.solver, log_text, {proc.exit_code, proc.killed, proc.launched});
  r.instance = instance_path.stem().string();
  r.sense = inst.sense;
  r.wall_time = proc.wall_seconds;
  r.log_path = log_path.string();
  return r;
}

void write_records(const std::vector<SolveRecord>& records, const fs::path& records_jsonl)
{
  std::ofstream out(records_jsonl, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + records_jsonl.string());
  for (const auto& r : records) out << to_json(r).dump() << '\n';
}

std::vector<SolveRecord> read_records(const fs::path& records_jsonl)
{
  std::ifstream in(records_jsonl, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + records_jsonl.string());
  std::vector<SolveRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(ErrorCode::MalformedFile, records_jsonl.string() + ": " + e.what(), line_no, 1);
    }
    out.push_back(solve_record_from_json(j));
  }
  return out;
}

std::vector<SolveRecord> run_solver_batch(const std::vector<fs::path>& instances,
                                          const SolverConfig& config,
                                          const fs::path& run_dir,
                                          const BatchOptions& options)
{
  validate(config);
  const fs::path exe = discover_solver(config.solver, config.executable);
  fs::create_directories(run_dir / "logs");

  std::vector<fs::path> sorted = instances;
  std::sort(sorted.begin(), sorted.end(),
            [](const fs::path& a, const fs::path& b) { return a.stem().string() < b.stem().string(); });
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i].stem() == sorted[i - 1].stem())
      throw Error(ErrorCode::InvalidConfig, "duplicate instance name '" + sorted[i].stem().string() + "'");

  if (options.copy_instances) {
    fs::create_directories(run_dir / "instances");
    for (const auto& p : sorted) {
      const fs::path dest = run_dir / "instances" / p.filename();
      std::error_code ec;
      if (fs::equivalent(p, dest, ec)) continue;
      fs::copy_file(p, dest, fs::copy_options::overwrite_existing);
    }
  }

  std::vector<SolveRecord> records(sorted.size());
  std::vector<std::exception_ptr> errors(sorted.size());
  std::atomic<std::size_t> next{0};
  const int workers = std::max(1, std::min<int>(options.jobs, static_cast<int>(sorted.size())));
  auto work = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= sorted.size()) return;
      SolverConfig c = config;
      c.executable = exe;
      c.log_path = run_dir / "logs" / (sorted[i].stem().string() + ".log");
      try {
        records[i] = run_solver(sorted[i], c);
        records[i].log_path = (fs::path("logs") / c.log_path.filename()).string();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  write_records(records, run_dir / "records.jsonl");

  json meta;
  meta["config"] = to_json(config);
  meta["config"]["executable"] = exe.string();
  std::string version;
  for (const auto& r : records)
    if (!r.solver_version.empty()) {
      version = r.solver_version;
      break;
    }
  meta["solver_version"] = version;
  meta["instances"] = sorted.size();
  meta["watchdog_grace_seconds"] = kWatchdogGraceSeconds;
  std::ofstream out(run_dir / "run_meta.json", std::ios::binary | std::ios::trunc);
  out << meta.dump(2) << '\n';
  return records;
}

// ---------------------------------------------------------------------------
// Metrics

FeasibilityReport feasibility_ratio(std::span<const SolveRecord> records)
{
  if (records.empty()) throw Error(ErrorCode::EmptySet, "feasibility ratio of an empty record list");
  FeasibilityReport rep;
  rep.total = records.size();
  for (const auto& r : records) {
    switch (r.status) {
      case SolveStatus::Optimal: ++rep.optimal; break;
      case SolveStatus::FeasibleTimeLimit: ++rep.feasible_time_limit; break;
      case SolveStatus::Infeasible: ++rep.infeasible; break;
      case SolveStatus::Unbounded: ++rep.unbounded; break;
      case SolveStatus::TimeLimitNoIncumbent: ++rep.time_limit_no_incumbent; break;
      case SolveStatus::Error: ++rep.error; break;
    }
  }
  rep.ratio_percent =
      100.0 * static_cast<double>(rep.optimal + rep.feasible_time_limit) / static_cast<double>(rep.total);
  return rep;
}

namespace {

double sorted_mean(std::vector<double> v)
{
  // Summing in sorted order makes the result independent of record order.
  std::sort(v.begin(), v.end());
  long double sum = 0.0L;
  for (double x : v) sum += x;
  return static_cast<double>(sum / static_cast<long double>(v.size()));
}

NodeSetStats node_stats(std::span<const SolveRecord> records, const char* label)
{
  NodeSetStats s;
  std::vector<double> nodes;
  std::vector<double> times;
  for (const auto& r : records) {
    if (r.status == SolveStatus::Error) {
      ++s.excluded_errors;
      continue;
    }
    nodes.push_back(static_cast<double>(r.nodes));
    times.push_back(record_time(r));
    if (hit_time_limit(r)) ++s.time_limit_hits;
  }
  if (nodes.empty()) throw Error(ErrorCode::EmptySet, std::string("no usable solve records in the ") + label + " set");
  s.records = nodes.size();
  std::sort(nodes.begin(), nodes.end());
  long double sum = 0.0L;
  for (double v : nodes) sum += v;
  s.node_sum = static_cast<double>(sum);
  s.nodes = summarize(nodes);
  s.mean_time = sorted_mean(std::move(times));
  return s;
}

double mean_time(std::span<const SolveRecord> records, const char* label)
{
  std::vector<double> t;
  for (const auto& r : records)
    if (r.status != SolveStatus::Error) t.push_back(record_time(r));
  if (t.empty()) throw Error(ErrorCode::EmptySet, std::string("no usable solve records in the ") + label + " set");
  return sorted_mean(std::move(t));
}

}  // namespace

double solving_time_gap(std::span<const SolveRecord> generated, std::span<const SolveRecord> baseline)
{
  if (generated.empty() || baseline.empty()) throw Error(ErrorCode::EmptySet, "solving time gap needs two nonempty sets");
  const double g = mean_time(generated, "generated");
  const double b = mean_time(baseline, "baseline");
  return std::fabs(g - b) / std::max(b, 1e-10) * 100.0;
}

double mean_solve_time(std::span<const SolveRecord> records) { return mean_time(records, "record"); }

HardnessReport branching_node_report(std::span<const SolveRecord> generated, std::span<const SolveRecord> baseline)
{
  if (generated.empty() || baseline.empty()) throw Error(ErrorCode::EmptySet, "node report needs two nonempty sets");
  HardnessReport rep;
  rep.generated = node_stats(generated, "generated");
  rep.baseline = node_stats(baseline, "baseline");
  if (!(rep.baseline.node_sum > 0.0))
    throw Error(ErrorCode::ZeroBaselineNodes, "baseline set explored no branch-and-bound nodes");
  rep.node_relative_error_percent =
      std::fabs(rep.generated.node_sum - rep.baseline.node_sum) / rep.baseline.node_sum * 100.0;
  rep.solving_time_gap_percent = solving_time_gap(generated, baseline);
  return rep;
}

}  // namespace genbench
