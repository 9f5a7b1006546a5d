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

#include "genbench/error.hpp"
#include "genbench/pipeline.hpp"
#include "report_json.hpp"

namespace genbench {

using json = nlohmann::ordered_json;

namespace detail {

json to_json(const Summary& s)
{
  return {{"count", s.count}, {"mean", s.mean}, {"std", s.std}, {"median", s.median}, {"min", s.min}, {"max", s.max}};
}

Summary summary_from_json(const json& j)
{
  Summary s;
  s.count = j.at("count").get<std::size_t>();
  s.mean = j.at("mean").get<double>();
  s.std = j.at("std").get<double>();
  s.median = j.at("median").get<double>();
  s.min = j.at("min").get<double>();
  s.max = j.at("max").get<double>();
  return s;
}

json to_json(const FeasibilityReport& r)
{
  return {{"total", r.total},
          {"optimal", r.optimal},
          {"feasible_time_limit", r.feasible_time_limit},
          {"infeasible", r.infeasible},
          {"unbounded", r.unbounded},
          {"time_limit_no_incumbent", r.time_limit_no_incumbent},
          {"error", r.error},
          {"ratio_percent", r.ratio_percent}};
}

FeasibilityReport feasibility_from_json(const json& j)
{
  FeasibilityReport r;
  r.total = j.at("total").get<std::size_t>();
  r.optimal = j.at("optimal").get<std::size_t>();
  r.feasible_time_limit = j.at("feasible_time_limit").get<std::size_t>();
  r.infeasible = j.at("infeasible").get<std::size_t>();
  r.unbounded = j.at("unbounded").get<std::size_t>();
  r.time_limit_no_incumbent = j.at("time_limit_no_incumbent").get<std::size_t>();
  r.error = j.at("error").get<std::size_t>();
  r.ratio_percent = j.at("ratio_percent").get<double>();
  return r;
}

json to_json(const NodeSetStats& s)
{
  return {{"records", s.records},
          {"excluded_errors", s.excluded_errors},
          {"nodes", to_json(s.nodes)},
          {"node_sum", s.node_sum},
          {"time_limit_hits", s.time_limit_hits},
          {"mean_time", s.mean_time}};
}

NodeSetStats node_stats_from_json(const json& j)
{
  NodeSetStats s;
  s.records = j.at("records").get<std::size_t>();
  s.excluded_errors = j.at("excluded_errors").get<std::size_t>();
  s.nodes = summary_from_json(j.at("nodes"));
  s.node_sum = j.at("node_sum").get<double>();
  s.time_limit_hits = j.at("time_limit_hits").get<std::size_t>();
  s.mean_time = j.at("mean_time").get<double>();
  return s;
}

json to_json(const SimilarityReport& r)
{
  json per = json::object();
  for (const auto& [name, score] : r.per_feature) per[name] = score;
  return {{"overall", r.overall},
          {"bin_count", r.bin_count},
          {"size_baseline", r.size_a},
          {"size_candidate", r.size_b},
          {"per_feature", per}};
}

SimilarityReport similarity_from_json(const json& j)
{
  SimilarityReport r;
  r.overall = j.at("overall").get<double>();
  r.bin_count = j.at("bin_count").get<int>();
  r.size_a = j.at("size_baseline").get<std::size_t>();
  r.size_b = j.at("size_candidate").get<std::size_t>();
  for (const auto& [k, v] : j.at("per_feature").items()) r.per_feature.emplace_back(k, v.get<double>());
  return r;
}

json to_json(const ScalarComparison& c, std::string_view a, std::string_view b)
{
  json j;
  j["w1"] = c.w1;
  j[std::string(a)] = {{"summary", to_json(c.a)}, {"excluded", c.excluded_a}, {"samples", c.samples_a}};
  j[std::string(b)] = {{"summary", to_json(c.b)}, {"excluded", c.excluded_b}, {"samples", c.samples_b}};
  return j;
}

ScalarComparison scalar_from_json(const json& j, std::string_view a, std::string_view b)
{
  ScalarComparison c;
  c.w1 = j.at("w1").get<double>();
  const json& ja = j.at(std::string(a));
  const json& jb = j.at(std::string(b));
  c.a = summary_from_json(ja.at("summary"));
  c.b = summary_from_json(jb.at("summary"));
  c.excluded_a = ja.at("excluded").get<std::size_t>();
  c.excluded_b = jb.at("excluded").get<std::size_t>();
  c.samples_a = ja.at("samples").get<std::vector<double>>();
  c.samples_b = jb.at("samples").get<std::vector<double>>();
  return c;
}

json to_json(const CutBlock& c, std::string_view a, std::string_view b)
{
  json j;
  json w = json::object();
  for (std::size_t i = 0; i < c.w1.size(); ++i) w["PC" + std::to_string(i + 1)] = c.w1[i];
  j["w1"] = w;
  j["explained_ratio"] = c.explained_ratio;
  j[std::string(a)] = {{"size", c.size_a}, {"zero_vectors", c.zero_vectors_a}, {"excluded", c.excluded_a}};
  j[std::string(b)] = {{"size", c.size_b}, {"zero_vectors", c.zero_vectors_b}, {"excluded", c.excluded_b}};
  return j;
}

CutBlock cut_block_from_json(const json& j, std::string_view a, std::string_view b)
{
  CutBlock c;
  const json& w = j.at("w1");
  for (std::size_t i = 0; i < w.size(); ++i) c.w1.push_back(w.at("PC" + std::to_string(i + 1)).get<double>());
  c.explained_ratio = j.at("explained_ratio").get<std::vector<double>>();
  const json& ja = j.at(std::string(a));
  const json& jb = j.at(std::string(b));
  c.size_a = ja.at("size").get<std::size_t>();
  c.zero_vectors_a = ja.at("zero_vectors").get<std::size_t>();
  c.excluded_a = ja.at("excluded").get<std::size_t>();
  c.size_b = jb.at("size").get<std::size_t>();
  c.zero_vectors_b = jb.at("zero_vectors").get<std::size_t>();
  c.excluded_b = jb.at("excluded").get<std::size_t>();
  return c;
}

}  // namespace detail

using namespace detail;

namespace {

json to_json(const SetInfo& s)
{
  return {{"role", s.role},
          {"source", s.source},
          {"label", s.label},
          {"problem", s.problem},
          {"model", s.model},
          {"eta", s.eta},
          {"instances", s.instances},
          {"parse_failures", s.parse_failures},
          {"solver_version", s.solver_version}};
}

SetInfo set_info_from_json(const json& j)
{
  SetInfo s;
  s.role = j.at("role").get<std::string>();
  s.source = j.at("source").get<std::string>();
  s.label = j.at("label").get<std::string>();
  s.problem = j.at("problem").get<std::string>();
  s.model = j.at("model").get<std::string>();
  s.eta = j.at("eta").get<std::string>();
  s.instances = j.at("instances").get<std::size_t>();
  s.parse_failures = j.at("parse_failures").get<std::size_t>();
  s.solver_version = j.at("solver_version").get<std::string>();
  return s;
}

json to_json(const InternalFeatureBlock& b)
{
  json j;
  j["root_gap"] = detail::to_json(b.root_gap, "baseline", "candidate");
  j["heuristic_success"] = detail::to_json(b.heuristics, "baseline", "candidate");
  if (b.cuts)
    j["cut_planes"] = detail::to_json(*b.cuts, "baseline", "candidate");
  else
    j["cut_planes"] = nullptr;
  j["parse_errors"] = {{"baseline", b.parse_errors_a}, {"candidate", b.parse_errors_b}};
  json unmapped = json::object();
  for (const auto& [k, v] : b.unmapped_cuts) unmapped[k] = v;
  j["unmapped_cuts"] = unmapped;
  return j;
}

InternalFeatureBlock internal_block_from_json(const json& j)
{
  InternalFeatureBlock b;
  b.root_gap = scalar_from_json(j.at("root_gap"), "baseline", "candidate");
  b.heuristics = scalar_from_json(j.at("heuristic_success"), "baseline", "candidate");
  if (!j.at("cut_planes").is_null()) b.cuts = cut_block_from_json(j.at("cut_planes"), "baseline", "candidate");
  b.parse_errors_a = j.at("parse_errors").at("baseline").get<std::size_t>();
  b.parse_errors_b = j.at("parse_errors").at("candidate").get<std::size_t>();
  for (const auto& [k, v] : j.at("unmapped_cuts").items()) b.unmapped_cuts[k] = v.get<std::int64_t>();
  return b;
}

template <class T, class F>
void put_optional(json& j, const char* key, const std::optional<T>& v, F&& f)
{
  if (v)
    j[key] = f(*v);
  else
    j[key] = nullptr;
}

template <class T, class F>
void get_optional(const json& j, const char* key, std::optional<T>& v, F&& f)
{
  if (j.contains(key) && !j.at(key).is_null()) v = f(j.at(key));
}

}  // namespace

json to_json(const SplitHalfReport& r)
{
  json j;
  j["kind"] = "split_half";
  j["seed"] = r.seed;
  j["half_sizes"] = {r.size_a, r.size_b};
  j["root_gap"] = detail::to_json(r.root_gap, "half_a", "half_b");
  j["heuristic_success"] = detail::to_json(r.heuristics, "half_a", "half_b");
  if (r.cuts)
    j["cut_planes"] = detail::to_json(*r.cuts, "half_a", "half_b");
  else
    j["cut_planes"] = nullptr;
  return j;
}

SplitHalfReport split_half_report_from_json(const json& j)
{
  try {
    SplitHalfReport r;
    r.seed = j.at("seed").get<std::uint64_t>();
    r.size_a = j.at("half_sizes").at(0).get<std::size_t>();
    r.size_b = j.at("half_sizes").at(1).get<std::size_t>();
    r.root_gap = scalar_from_json(j.at("root_gap"), "half_a", "half_b");
    r.heuristics = scalar_from_json(j.at("heuristic_success"), "half_a", "half_b");
    if (!j.at("cut_planes").is_null()) r.cuts = cut_block_from_json(j.at("cut_planes"), "half_a", "half_b");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedFile, std::string("split-half report: ") + e.what());
  }
}

json to_json(const ComparisonReport& r)
{
  json j;
  j["kind"] = "comparison";
  j["toolkit_version"] = r.toolkit_version;
  j["settings"] = r.settings;
  j["sets"] = {{"baseline", to_json(r.baseline)}, {"candidate", to_json(r.candidate)}};
  put_optional(j, "feasibility", r.feasibility, [](const FeasibilityBlock& b) {
    return json{{"baseline", detail::to_json(b.baseline)}, {"candidate", detail::to_json(b.candidate)}};
  });
  put_optional(j, "structural", r.structural, [](const SimilarityReport& s) { return detail::to_json(s); });
  put_optional(j, "nodes", r.nodes, [](const NodeBlock& b) {
    return json{{"relative_error_percent", b.relative_error_percent},
                {"baseline", detail::to_json(b.baseline)},
                {"candidate", detail::to_json(b.candidate)}};
  });
  put_optional(j, "time_gap", r.time_gap, [](const TimeGapBlock& b) {
    return json{{"gap_percent", b.gap_percent},
                {"baseline", {{"records", b.baseline_records}, {"mean_time", b.baseline_mean}}},
                {"candidate", {{"records", b.candidate_records}, {"mean_time", b.candidate_mean}}}};
  });
  put_optional(j, "internal_features", r.internal_features, [](const InternalFeatureBlock& b) { return to_json(b); });
  json split;
  put_optional(split, "baseline", r.split_half_baseline, [](const SplitHalfReport& s) { return to_json(s); });
  put_optional(split, "candidate", r.split_half_candidate, [](const SplitHalfReport& s) { return to_json(s); });
  j["split_half"] = split;
  put_optional(j, "tuning", r.tuning, [](const TuningResult& t) { return genbench::to_json(t); });
  json stages = json::array();
  for (const auto& s : r.stages) stages.push_back({{"stage", s.stage}, {"state", s.state}, {"message", s.message}});
  j["diagnostics"] = {{"stages", stages}, {"notes", r.notes}};
  return j;
}

ComparisonReport comparison_report_from_json(const json& j)
{
  try {
    ComparisonReport r;
    r.toolkit_version = j.at("toolkit_version").get<std::string>();
    r.settings = j.at("settings");
    r.baseline = set_info_from_json(j.at("sets").at("baseline"));
    r.candidate = set_info_from_json(j.at("sets").at("candidate"));
    get_optional(j, "feasibility", r.feasibility, [](const json& b) {
      return FeasibilityBlock{feasibility_from_json(b.at("baseline")), feasibility_from_json(b.at("candidate"))};
    });
    get_optional(j, "structural", r.structural, [](const json& b) { return similarity_from_json(b); });
    get_optional(j, "nodes", r.nodes, [](const json& b) {
      return NodeBlock{node_stats_from_json(b.at("baseline")), node_stats_from_json(b.at("candidate")),
                       b.at("relative_error_percent").get<double>()};
    });
    get_optional(j, "time_gap", r.time_gap, [](const json& b) {
      TimeGapBlock t;
      t.gap_percent = b.at("gap_percent").get<double>();
      t.baseline_records = b.at("baseline").at("records").get<std::size_t>();
      t.baseline_mean = b.at("baseline").at("mean_time").get<double>();
      t.candidate_records = b.at("candidate").at("records").get<std::size_t>();
      t.candidate_mean = b.at("candidate").at("mean_time").get<double>();
      return t;
    });
    get_optional(j, "internal_features", r.internal_features,
                 [](const json& b) { return internal_block_from_json(b); });
    const json& split = j.at("split_half");
    get_optional(split, "baseline", r.split_half_baseline, [](const json& b) { return split_half_report_from_json(b); });
    get_optional(split, "candidate", r.split_half_candidate,
                 [](const json& b) { return split_half_report_from_json(b); });
    get_optional(j, "tuning", r.tuning, [](const json& b) { return tuning_result_from_json(b); });
    for (const auto& s : j.at("diagnostics").at("stages"))
      r.stages.push_back(
          {s.at("stage").get<std::string>(), s.at("state").get<std::string>(), s.at("message").get<std::string>()});
    r.notes = j.at("diagnostics").at("notes").get<std::vector<std::string>>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedFile, std::string("comparison report: ") + e.what());
  }
}

// ---------------------------------------------------------------------------

json to_json(const SolverInternalFeatures& f)
{
  json j;
  j["instance"] = f.instance;
  j["solver"] = std::string(to_string(f.solver));
  j["solver_version"] = f.solver_version;
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  j["root_gap_percent"] = opt(f.root_gap_percent);
  j["root_incumbent"] = opt(f.root_incumbent);
  j["root_bound"] = opt(f.root_bound);
  j["root_gap_rel"] = opt(f.root_gap_rel);
  j["heuristic_success_count"] = f.heuristic_success_count;
  json cuts = json::object();
  for (std::size_t i = 0; i < kNumCutSlots; ++i) cuts[std::string(kCutSlotNames[i])] = f.cut_vector[i];
  j["cut_vector"] = cuts;
  json unmapped = json::object();
  for (const auto& [k, v] : f.diagnostics.unmapped_cuts) unmapped[k] = v;
  j["diagnostics"] = {{"lines_matched", f.diagnostics.lines_matched},
                      {"unrecognized_lines", f.diagnostics.unrecognized_lines},
                      {"missing_fields", f.diagnostics.missing_fields},
                      {"notes", f.diagnostics.notes},
                      {"unmapped_cuts", unmapped}};
  return j;
}

SolverInternalFeatures internal_features_from_json(const json& j)
{
  try {
    SolverInternalFeatures f;
    f.instance = j.at("instance").get<std::string>();
    f.solver = solver_from_string(j.at("solver").get<std::string>());
    f.solver_version = j.at("solver_version").get<std::string>();
    auto opt = [&](const char* key) {
      const json& v = j.at(key);
      return v.is_null() ? std::optional<double>{} : std::optional<double>{v.get<double>()};
    };
    f.root_gap_percent = opt("root_gap_percent");
    f.root_incumbent = opt("root_incumbent");
    f.root_bound = opt("root_bound");
    f.root_gap_rel = opt("root_gap_rel");
    f.heuristic_success_count = j.at("heuristic_success_count").get<std::int64_t>();
    for (std::size_t i = 0; i < kNumCutSlots; ++i)
      f.cut_vector[i] = j.at("cut_vector").at(std::string(kCutSlotNames[i])).get<std::int64_t>();
    const json& d = j.at("diagnostics");
    f.diagnostics.lines_matched = d.at("lines_matched").get<std::size_t>();
    f.diagnostics.unrecognized_lines = d.at("unrecognized_lines").get<std::size_t>();
    f.diagnostics.missing_fields = d.at("missing_fields").get<std::vector<std::string>>();
    f.diagnostics.notes = d.at("notes").get<std::vector<std::string>>();
    for (const auto& [k, v] : d.at("unmapped_cuts").items()) f.diagnostics.unmapped_cuts[k] = v.get<std::int64_t>();
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedFile, std::string("internal features: ") + e.what());
  }
}

}  // namespace genbench
