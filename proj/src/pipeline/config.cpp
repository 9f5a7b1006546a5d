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

#include <fstream>
#include <sstream>

#include "genbench/error.hpp"
#include "genbench/pipeline.hpp"

namespace genbench {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

bool MetricToggles::any() const
{
  return feasibility || structural || nodes || time_gap || internal_features || split_half || tuning;
}

bool MetricToggles::needs_solve() const
{
  return feasibility || nodes || time_gap || internal_features || split_half;
}

bool ComparisonReport::any_failed() const
{
  for (const auto& s : stages)
    if (s.state == "failed") return true;
  return false;
}

void validate(const BenchmarkConfig& c, bool check_paths)
{
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::InvalidConfig, msg); };
  if (!c.metrics.any()) fail("no metric is enabled");
  if (c.bins < 1) fail("bins must be at least 1");
  if (c.pca_k < 1 || c.pca_k > static_cast<int>(kNumCutSlots)) fail("pca_k must be between 1 and 12");
  if (c.jobs < 1) fail("jobs must be at least 1");
  if (c.output_dir.empty()) fail("output directory is required");
  if (c.baseline_dir.empty()) fail("baseline directory is required");
  if (c.candidate_generator) {
    if (c.candidate_generator->count < 1) fail("candidate generator count must be at least 1");
    validate(c.candidate_generator->params);
  } else if (c.candidate_dir.empty()) {
    fail("a candidate directory or generator is required");
  }
  if (c.metrics.needs_solve() || c.metrics.tuning) validate(c.solver);
  if (c.metrics.tuning && c.tuning.budget < 1) fail("tuning budget must be at least 1");
  if (!check_paths) return;
  if (!fs::is_directory(c.baseline_dir)) fail("baseline directory does not exist: " + c.baseline_dir.string());
  if (!c.candidate_generator && !fs::is_directory(c.candidate_dir))
    fail("candidate directory does not exist: " + c.candidate_dir.string());
  if (c.metrics.tuning && !c.tuning.space_file.empty() && !fs::is_regular_file(c.tuning.space_file))
    fail("space file does not exist: " + c.tuning.space_file.string());
}

json to_json(const BenchmarkConfig& c)
{
  json j;
  j["baseline_dir"] = c.baseline_dir.string();
  j["candidate_dir"] = c.candidate_dir.string();
  if (c.candidate_generator)
    j["candidate_generator"] = {{"count", c.candidate_generator->count},
                                {"params", to_json(c.candidate_generator->params)}};
  else
    j["candidate_generator"] = nullptr;
  j["solver"] = to_json(c.solver);
  j["metrics"] = {{"feasibility", c.metrics.feasibility},
                  {"structural", c.metrics.structural},
                  {"nodes", c.metrics.nodes},
                  {"time_gap", c.metrics.time_gap},
                  {"internal_features", c.metrics.internal_features},
                  {"split_half", c.metrics.split_half},
                  {"tuning", c.metrics.tuning}};
  j["bins"] = c.bins;
  j["pca_k"] = c.pca_k;
  j["seed"] = c.seed;
  j["output_dir"] = c.output_dir.string();
  j["jobs"] = c.jobs;
  j["tuning"] = {{"budget", c.tuning.budget},
                 {"strategy", c.tuning.strategy},
                 {"space_file", c.tuning.space_file.string()}};
  return j;
}

BenchmarkConfig benchmark_config_from_json(const json& j)
{
  static const std::vector<std::string> known = {"baseline_dir", "candidate_dir", "candidate_generator",
                                                 "solver",       "metrics",       "bins",
                                                 "pca_k",        "seed",          "output_dir",
                                                 "jobs",         "tuning"};
  if (!j.is_object()) throw Error(ErrorCode::InvalidConfig, "benchmark config must be a JSON object");
  for (const auto& [k, v] : j.items())
    if (std::find(known.begin(), known.end(), k) == known.end())
      throw Error(ErrorCode::InvalidConfig, "unknown benchmark config key '" + k + "'");
  try {
    BenchmarkConfig c;
    c.baseline_dir = j.value("baseline_dir", std::string());
    c.candidate_dir = j.value("candidate_dir", std::string());
    if (j.contains("candidate_generator") && !j.at("candidate_generator").is_null()) {
      const json& g = j.at("candidate_generator");
      GeneratorSpec spec;
      spec.count = g.at("count").get<std::size_t>();
      spec.params = gen_params_from_json(g.at("params"));
      c.candidate_generator = spec;
    }
    if (j.contains("solver")) c.solver = solver_config_from_json(j.at("solver"));
    if (j.contains("metrics")) {
      const json& m = j.at("metrics");
      for (const auto& [k, v] : m.items()) {
        bool* slot = k == "feasibility"         ? &c.metrics.feasibility
                     : k == "structural"        ? &c.metrics.structural
                     : k == "nodes"             ? &c.metrics.nodes
                     : k == "time_gap"          ? &c.metrics.time_gap
                     : k == "internal_features" ? &c.metrics.internal_features
                     : k == "split_half"        ? &c.metrics.split_half
                     : k == "tuning"            ? &c.metrics.tuning
                                                : nullptr;
        if (slot == nullptr) throw Error(ErrorCode::InvalidConfig, "unknown metric '" + k + "'");
        *slot = v.get<bool>();
      }
    }
    c.bins = j.value("bins", c.bins);
    c.pca_k = j.value("pca_k", c.pca_k);
    c.seed = j.value("seed", c.seed);
    c.output_dir = j.value("output_dir", std::string());
    c.jobs = j.value("jobs", c.jobs);
    if (j.contains("tuning")) {
      const json& t = j.at("tuning");
      c.tuning.budget = t.value("budget", c.tuning.budget);
      c.tuning.strategy = t.value("strategy", c.tuning.strategy);
      c.tuning.space_file = t.value("space_file", std::string());
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, std::string("benchmark config: ") + e.what());
  }
}

BenchmarkConfig load_benchmark_config(const fs::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidConfig, "cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  json j;
  try {
    j = json::parse(ss.str());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, path.string() + ": " + e.what());
  }
  return benchmark_config_from_json(j);
}

}  // namespace genbench
