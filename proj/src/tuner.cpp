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

#include "genbench/tuner.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "genbench/error.hpp"
#include "text_util.hpp"

namespace genbench {

namespace detail {
std::string_view embedded_space_text(SolverId solver);
std::string_view embedded_gurobi_presets_text();
}  // namespace detail

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Space

Dimension Dimension::continuous(std::string name, double lo, double hi)
{
  Dimension d;
  d.name = std::move(name);
  d.kind = Kind::Continuous;
  d.lo = lo;
  d.hi = hi;
  return d;
}

Dimension Dimension::categorical(std::string name, std::vector<std::string> values)
{
  Dimension d;
  d.name = std::move(name);
  d.kind = Kind::Categorical;
  d.values = std::move(values);
  return d;
}

bool Dimension::contains(std::string_view value) const
{
  if (kind == Kind::Categorical) return std::find(values.begin(), values.end(), value) != values.end();
  const auto v = detail::parse_number(value);
  return v && std::isfinite(*v) && *v >= lo && *v <= hi;
}

const Dimension* ParameterSpace::find(std::string_view name) const
{
  for (const auto& d : dimensions)
    if (d.name == name) return &d;
  return nullptr;
}

bool ParameterSpace::contains(const Configuration& config) const
{
  for (const auto& [name, value] : config) {
    const Dimension* d = find(name);
    if (d == nullptr || !d->contains(value)) return false;
  }
  return true;
}

std::optional<std::uint64_t> ParameterSpace::cardinality() const
{
  std::uint64_t n = 1;
  for (const auto& d : dimensions) {
    if (d.kind == Dimension::Kind::Continuous) return std::nullopt;
    n *= d.values.size();
  }
  return n;
}

void validate(const ParameterSpace& space)
{
  std::set<std::string, std::less<>> seen;
  for (const auto& d : space.dimensions) {
    if (d.name.empty()) throw Error(ErrorCode::InvalidConfig, "parameter space: empty dimension name");
    if (!seen.insert(d.name).second)
      throw Error(ErrorCode::InvalidConfig, "parameter space: duplicate dimension '" + d.name + "'");
    if (d.kind == Dimension::Kind::Continuous) {
      if (!(std::isfinite(d.lo) && std::isfinite(d.hi) && d.lo < d.hi))
        throw Error(ErrorCode::InvalidConfig, "parameter space: '" + d.name + "' needs finite lo < hi");
    } else {
      if (d.values.empty())
        throw Error(ErrorCode::InvalidConfig, "parameter space: '" + d.name + "' has no values");
      std::set<std::string_view> distinct(d.values.begin(), d.values.end());
      if (distinct.size() != d.values.size())
        throw Error(ErrorCode::InvalidConfig, "parameter space: '" + d.name + "' repeats a value");
    }
  }
}

std::string format_real(double value)
{
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

namespace {

std::optional<std::int64_t> parse_int64(std::string_view s)
{
  std::int64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::vector<std::string_view> split_commas(std::string_view s)
{
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(',', start);
    out.push_back(detail::trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view strip_comment(std::string_view line)
{
  const std::size_t hash = line.find('#');
  return detail::trim(hash == std::string_view::npos ? line : line.substr(0, hash));
}

}  // namespace

ParameterSpace parse_space(std::string_view text)
{
  ParameterSpace space;
  std::size_t line_no = 0;
  for (std::string_view raw : detail::split_lines(text)) {
    ++line_no;
    const std::string_view line = strip_comment(raw);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ParseError(ErrorCode::MalformedFile, "space: expected 'name = ...'", line_no, 1);
    const std::string name(detail::trim(line.substr(0, eq)));
    const std::string_view body = detail::trim(line.substr(eq + 1));
    const std::size_t col = static_cast<std::size_t>(body.data() - raw.data()) + 1;
    if (name.empty()) throw ParseError(ErrorCode::MalformedFile, "space: missing dimension name", line_no, 1);
    if (body.size() < 2) throw ParseError(ErrorCode::MalformedFile, "space: missing domain", line_no, col);

    const std::string_view inner = body.substr(1, body.size() - 2);
    if (body.front() == '[' && body.back() == ']') {
      const auto parts = split_commas(inner);
      const auto lo = parts.size() == 2 ? detail::parse_number(parts[0]) : std::nullopt;
      const auto hi = parts.size() == 2 ? detail::parse_number(parts[1]) : std::nullopt;
      if (!lo || !hi) throw ParseError(ErrorCode::MalformedFile, "space: expected [lo, hi]", line_no, col);
      space.dimensions.push_back(Dimension::continuous(name, *lo, *hi));
    } else if (body.front() == '{' && body.back() == '}') {
      std::vector<std::string> values;
      for (std::string_view item : split_commas(inner)) {
        if (item.empty()) throw ParseError(ErrorCode::MalformedFile, "space: empty value", line_no, col);
        const std::size_t dots = item.find("..");
        if (dots != std::string_view::npos) {
          const auto a = parse_int64(detail::trim(item.substr(0, dots)));
          const auto b = parse_int64(detail::trim(item.substr(dots + 2)));
          if (!a || !b || *a > *b)
            throw ParseError(ErrorCode::MalformedFile, "space: bad integer run '" + std::string(item) + "'", line_no,
                             col);
          for (std::int64_t v = *a; v <= *b; ++v) values.push_back(std::to_string(v));
        } else {
          values.emplace_back(item);
        }
      }
      space.dimensions.push_back(Dimension::categorical(name, std::move(values)));
    } else {
      throw ParseError(ErrorCode::MalformedFile, "space: domain must be [lo, hi] or {values}", line_no, col);
    }
  }
  validate(space);
  return space;
}

ParameterSpace load_space(const fs::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_space(ss.str());
}

std::string write_space(const ParameterSpace& space)
{
  std::string out;
  for (const auto& d : space.dimensions) {
    out += d.name + " = ";
    if (d.kind == Dimension::Kind::Continuous) {
      out += "[" + format_real(d.lo) + ", " + format_real(d.hi) + "]";
    } else {
      out += "{";
      for (std::size_t i = 0; i < d.values.size(); ++i) out += (i ? ", " : "") + d.values[i];
      out += "}";
    }
    out += '\n';
  }
  return out;
}

const ParameterSpace& default_space(SolverId solver)
{
  static const ParameterSpace scip = parse_space(detail::embedded_space_text(SolverId::Scip));
  static const ParameterSpace gurobi = parse_space(detail::embedded_space_text(SolverId::Gurobi));
  static const ParameterSpace highs = parse_space(detail::embedded_space_text(SolverId::Highs));
  switch (solver) {
    case SolverId::Scip: return scip;
    case SolverId::Gurobi: return gurobi;
    case SolverId::Highs: return highs;
  }
  return scip;
}

std::map<std::string, Configuration> parse_presets(std::string_view text)
{
  std::map<std::string, Configuration> out;
  Configuration* current = nullptr;
  std::size_t line_no = 0;
  for (std::string_view raw : detail::split_lines(text)) {
    ++line_no;
    const std::string_view line = strip_comment(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3)
        throw ParseError(ErrorCode::MalformedFile, "presets: bad section header", line_no, 1);
      const std::string name(detail::trim(line.substr(1, line.size() - 2)));
      if (out.contains(name)) throw ParseError(ErrorCode::MalformedFile, "presets: duplicate '" + name + "'", line_no, 1);
      current = &out[name];
      continue;
    }
    const std::size_t eq = line.find('=');
    if (current == nullptr || eq == std::string_view::npos)
      throw ParseError(ErrorCode::MalformedFile, "presets: expected 'key = value' inside a section", line_no, 1);
    (*current)[std::string(detail::trim(line.substr(0, eq)))] = std::string(detail::trim(line.substr(eq + 1)));
  }
  return out;
}

const std::map<std::string, Configuration>& gurobi_presets()
{
  static const auto presets = parse_presets(detail::embedded_gurobi_presets_text());
  return presets;
}

// ---------------------------------------------------------------------------
// Strategies

Configuration sample_configuration(const ParameterSpace& space, Rng& rng)
{
  Configuration c;
  for (const auto& d : space.dimensions) {
    if (d.kind == Dimension::Kind::Continuous) {
      c[d.name] = format_real(rng.uniform_real(d.lo, d.hi));
    } else {
      const auto i = rng.uniform_int(0, static_cast<std::int64_t>(d.values.size()) - 1);
      c[d.name] = d.values[static_cast<std::size_t>(i)];
    }
  }
  return c;
}

namespace {

class RandomSearch final : public SearchStrategy {
 public:
  explicit RandomSearch(std::uint64_t seed) : rng_(derive_seed(seed, "tuner/random")) {}

  std::string_view id() const override { return "random"; }

  Configuration propose(const ParameterSpace& space, const std::vector<Trial>&) override
  {
    return sample_configuration(space, rng_);
  }

 private:
  Rng rng_;
};

}  // namespace

std::unique_ptr<SearchStrategy> make_strategy(std::string_view id, std::uint64_t seed)
{
  if (id == "random" || id == "default") return std::make_unique<RandomSearch>(seed);
  throw Error(ErrorCode::UnknownStrategy, "unknown search strategy '" + std::string(id) + "'");
}

// ---------------------------------------------------------------------------
// Evaluation

double improvement_percent(double default_mean, double best_mean)
{
  if (default_mean == 0.0) return 0.0;
  return (default_mean - best_mean) / default_mean * 100.0;
}

namespace {

fs::path make_temp_dir(std::string_view tag)
{
  static std::atomic<unsigned> counter{0};
  for (;;) {
    const fs::path p = fs::temp_directory_path() /
                       ("genbench-" + std::string(tag) + "-" + std::to_string(::getpid()) + "-" +
                        std::to_string(counter.fetch_add(1)));
    if (fs::create_directories(p)) return p;
  }
}

struct ScratchDir {
  fs::path path;
  bool owned = false;

  ScratchDir(const fs::path& requested, std::string_view tag)
  {
    if (requested.empty()) {
      path = make_temp_dir(tag);
      owned = true;
    } else {
      path = requested;
      fs::create_directories(path);
    }
  }
  ~ScratchDir()
  {
    if (owned) {
      std::error_code ec;
      fs::remove_all(path, ec);
    }
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;
};

SolverConfig with_overrides(const SolverConfig& base, const Configuration& overrides)
{
  SolverConfig c = base;
  for (const auto& [k, v] : overrides) c.parameters[k] = v;
  return c;
}

double mean_of(const std::vector<double>& times)
{
  // Instance-name order, so the sum is the same in every run.
  double s = 0.0;
  for (double t : times) s += t;
  return s / static_cast<double>(times.size());
}

Evaluation score_records(const std::vector<SolveRecord>& records, double limit)
{
  Evaluation ev;
  for (const auto& r : records) {
    ev.instances.push_back(r.instance);
    if (r.status == SolveStatus::Error) ev.crashed = true;
  }
  for (const auto& r : records) {
    double t = std::min(record_time(r), limit);
    if (ev.crashed || hit_time_limit(r)) {
      t = limit;
      ++ev.timeouts;
    }
    ev.times.push_back(t);
  }
  ev.mean_time = mean_of(ev.times);
  return ev;
}

Evaluation crashed_evaluation(const std::vector<fs::path>& set, double limit)
{
  Evaluation ev;
  for (const auto& p : set) ev.instances.push_back(p.stem().string());
  std::sort(ev.instances.begin(), ev.instances.end());
  ev.times.assign(ev.instances.size(), limit);
  ev.timeouts = ev.instances.size();
  ev.crashed = true;
  ev.mean_time = limit;
  return ev;
}

Evaluation run_evaluation(const Configuration& overrides, const std::vector<fs::path>& set,
                          const SolverConfig& config, const fs::path& dir, int jobs)
{
  const SolverConfig c = with_overrides(config, overrides);
  BatchOptions opts;
  opts.jobs = jobs;
  opts.copy_instances = false;
  try {
    return score_records(run_solver_batch(set, c, dir, opts), c.time_limit);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SolverCrash) throw;
    return crashed_evaluation(set, c.time_limit);
  }
}

std::string trial_dir_name(std::size_t index)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "trial_%03zu", index);
  return buf;
}

// Checks every value of every dimension against the adapter before anything
// is launched.
void check_space_against_adapter(const ParameterSpace& space, const SolverConfig& config)
{
  for (const auto& d : space.dimensions) {
    std::vector<std::string> probes = d.values;
    if (d.kind == Dimension::Kind::Continuous) probes = {format_real(d.lo), format_real(d.hi)};
    for (const auto& v : probes) validate(with_overrides(config, {{d.name, v}}));
  }
}

}  // namespace

Evaluation evaluate_config(const Configuration& overrides, const std::vector<fs::path>& test_set,
                           const SolverConfig& config, const TuneOptions& options)
{
  if (test_set.empty()) throw Error(ErrorCode::EmptyTestSet, "evaluate_config needs at least one instance");
  validate(with_overrides(config, overrides));
  ScratchDir dir(options.work_dir, "eval");
  return run_evaluation(overrides, test_set, config, dir.path, options.jobs);
}

TuningResult tune(const ParameterSpace& space, const std::vector<fs::path>& tuning_set, const SolverConfig& config,
                  std::size_t budget, std::string_view strategy_id, std::uint64_t seed, const TuneOptions& options)
{
  if (tuning_set.empty()) throw Error(ErrorCode::EmptyTuningSet, "tuning set is empty");
  if (budget < 1) throw Error(ErrorCode::InvalidConfig, "tuning budget must be at least 1");
  validate(space);
  auto strategy = make_strategy(strategy_id, seed);
  validate(config);
  check_space_against_adapter(space, config);

  TuningResult result;
  result.solver = config.solver;
  result.strategy = std::string(strategy->id());
  result.seed = seed;
  result.budget = budget;
  result.time_limit = config.time_limit;
  result.threads = config.threads;
  result.space = space;

  ScratchDir work(options.work_dir, "tune");
  std::map<Configuration, std::size_t> seen;  // config -> history index
  for (std::size_t t = 1; t <= budget; ++t) {
    Trial trial;
    trial.index = t;
    if (t > 1) {
      trial.config = strategy->propose(space, result.history);
      if (!space.contains(trial.config))
        throw Error(ErrorCode::InvalidConfig, "strategy proposed a configuration outside the space");
    }
    // A space with no dimensions has the default as its only point.
    if (const auto it = seen.find(trial.config); it != seen.end()) {
      trial.evaluation = result.history[it->second].evaluation;
      trial.cached = true;
    } else {
      trial.evaluation =
          run_evaluation(trial.config, tuning_set, config, work.path / trial_dir_name(t), options.jobs);
      seen.emplace(trial.config, result.history.size());
    }
    result.history.push_back(std::move(trial));
  }

  // Strict improvement is required to move off an earlier trial, so ties go
  // to the default.
  std::size_t best = 0;
  for (std::size_t i = 1; i < result.history.size(); ++i)
    if (result.history[i].evaluation.mean_time < result.history[best].evaluation.mean_time) best = i;
  result.best_trial = best + 1;
  result.best_config = result.history[best].config;
  result.default_mean = result.history.front().evaluation.mean_time;
  result.best_mean = result.history[best].evaluation.mean_time;
  result.tuning_improvement_percent = improvement_percent(result.default_mean, result.best_mean);
  return result;
}

void evaluate_on_test_set(TuningResult& result, const std::vector<fs::path>& test_set, const SolverConfig& config,
                          const TuneOptions& options)
{
  if (test_set.empty()) throw Error(ErrorCode::EmptyTestSet, "test set is empty");
  ScratchDir dir(options.work_dir, "test");
  TuneOptions sub = options;
  sub.work_dir = dir.path / "default";
  result.test_default = evaluate_config({}, test_set, config, sub);
  if (result.best_config.empty()) {
    result.test_best = result.test_default;
  } else {
    sub.work_dir = dir.path / "best";
    result.test_best = evaluate_config(result.best_config, test_set, config, sub);
  }
  result.test_improvement_percent = improvement_percent(result.test_default->mean_time, result.test_best->mean_time);
}

// ---------------------------------------------------------------------------
// JSON

namespace {

json to_json(const Configuration& c)
{
  json j = json::object();
  for (const auto& [k, v] : c) j[k] = v;
  return j;
}

Configuration config_from_json(const json& j)
{
  Configuration c;
  for (const auto& [k, v] : j.items()) c[k] = v.get<std::string>();
  return c;
}

json to_json(const Evaluation& e)
{
  json j;
  j["mean_time"] = e.mean_time;
  j["timeouts"] = e.timeouts;
  j["crashed"] = e.crashed;
  j["instances"] = e.instances;
  j["times"] = e.times;
  return j;
}

Evaluation evaluation_from_json(const json& j)
{
  Evaluation e;
  e.mean_time = j.at("mean_time").get<double>();
  e.timeouts = j.at("timeouts").get<std::size_t>();
  e.crashed = j.at("crashed").get<bool>();
  e.instances = j.at("instances").get<std::vector<std::string>>();
  e.times = j.at("times").get<std::vector<double>>();
  return e;
}

json to_json(const ParameterSpace& s)
{
  json arr = json::array();
  for (const auto& d : s.dimensions) {
    json j;
    j["name"] = d.name;
    if (d.kind == Dimension::Kind::Continuous) {
      j["kind"] = "continuous";
      j["lo"] = d.lo;
      j["hi"] = d.hi;
    } else {
      j["kind"] = "categorical";
      j["values"] = d.values;
    }
    arr.push_back(std::move(j));
  }
  return arr;
}

ParameterSpace space_from_json(const json& arr)
{
  ParameterSpace s;
  for (const auto& j : arr) {
    if (j.at("kind").get<std::string>() == "continuous")
      s.dimensions.push_back(
          Dimension::continuous(j.at("name").get<std::string>(), j.at("lo").get<double>(), j.at("hi").get<double>()));
    else
      s.dimensions.push_back(Dimension::categorical(j.at("name").get<std::string>(),
                                                    j.at("values").get<std::vector<std::string>>()));
  }
  return s;
}

}  // namespace

json to_json(const TuningResult& r)
{
  json j;
  j["solver"] = std::string(to_string(r.solver));
  j["strategy"] = r.strategy;
  j["seed"] = r.seed;
  j["budget"] = r.budget;
  j["time_limit"] = r.time_limit;
  j["threads"] = r.threads;
  j["scoring"] = r.scoring;
  j["space"] = to_json(r.space);
  j["best_trial"] = r.best_trial;
  j["best_config"] = to_json(r.best_config);
  j["default_mean"] = r.default_mean;
  j["best_mean"] = r.best_mean;
  j["tuning_improvement_percent"] = r.tuning_improvement_percent;
  if (r.test_default) {
    j["test_default"] = to_json(*r.test_default);
    j["test_best"] = to_json(*r.test_best);
    j["test_improvement_percent"] = *r.test_improvement_percent;
  }
  json hist = json::array();
  for (const auto& t : r.history) {
    json h;
    h["index"] = t.index;
    h["config"] = to_json(t.config);
    h["cached"] = t.cached;
    h["evaluation"] = to_json(t.evaluation);
    hist.push_back(std::move(h));
  }
  j["history"] = std::move(hist);
  return j;
}

TuningResult tuning_result_from_json(const json& j)
{
  try {
    TuningResult r;
    r.solver = solver_from_string(j.at("solver").get<std::string>());
    r.strategy = j.at("strategy").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.budget = j.at("budget").get<std::size_t>();
    r.time_limit = j.at("time_limit").get<double>();
    r.threads = j.at("threads").get<int>();
    r.scoring = j.at("scoring").get<std::string>();
    r.space = space_from_json(j.at("space"));
    r.best_trial = j.at("best_trial").get<std::size_t>();
    r.best_config = config_from_json(j.at("best_config"));
    r.default_mean = j.at("default_mean").get<double>();
    r.best_mean = j.at("best_mean").get<double>();
    r.tuning_improvement_percent = j.at("tuning_improvement_percent").get<double>();
    if (j.contains("test_default")) {
      r.test_default = evaluation_from_json(j.at("test_default"));
      r.test_best = evaluation_from_json(j.at("test_best"));
      r.test_improvement_percent = j.at("test_improvement_percent").get<double>();
    }
    for (const auto& h : j.at("history")) {
      Trial t;
      t.index = h.at("index").get<std::size_t>();
      t.config = config_from_json(h.at("config"));
      t.cached = h.at("cached").get<bool>();
      t.evaluation = evaluation_from_json(h.at("evaluation"));
      r.history.push_back(std::move(t));
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedFile, std::string("tuning result: ") + e.what());
  }
}

}  // namespace genbench
