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

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "genbench/generators.hpp"
#include "genbench/log_parsers.hpp"
#include "genbench/solver.hpp"
#include "genbench/stats.hpp"
#include "genbench/tuner.hpp"

namespace genbench {

inline constexpr std::string_view kToolkitVersion = "0.1.0";

struct MetricToggles {
  bool feasibility = true;
  bool structural = true;
  bool nodes = true;
  bool time_gap = true;
  bool internal_features = true;
  bool split_half = false;
  bool tuning = false;

  bool any() const;
  bool needs_solve() const;

  bool operator==(const MetricToggles&) const = default;
};

struct GeneratorSpec {
  GenParams params;
  std::size_t count = 0;
};

struct TuningStageConfig {
  std::size_t budget = 50;
  std::string strategy = "random";
  /// Empty: the adapter's shipped space.
  std::filesystem::path space_file;
};

/// The candidate set is tuned on and the baseline set is the held-out test
/// set for the tuning stage.
struct BenchmarkConfig {
  std::filesystem::path baseline_dir;
  /// Ignored when candidate_generator is set.
  std::filesystem::path candidate_dir;
  std::optional<GeneratorSpec> candidate_generator;
  SolverConfig solver;
  MetricToggles metrics;
  int bins = kDefaultBins;
  int pca_k = kDefaultPcaComponents;
  std::uint64_t seed = 0;
  std::filesystem::path output_dir;
  int jobs = 1;
  TuningStageConfig tuning;
};

/// Throws InvalidConfig. With `check_paths`, directories must exist.
void validate(const BenchmarkConfig& config, bool check_paths = true);

nlohmann::ordered_json to_json(const BenchmarkConfig& config);
/// Keys absent from `j` keep their defaults. Throws InvalidConfig.
BenchmarkConfig benchmark_config_from_json(const nlohmann::ordered_json& j);
BenchmarkConfig load_benchmark_config(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Reports

/// Labels for one instance set; problem/model/eta come from an optional
/// set_meta.json in the instance directory.
struct SetInfo {
  std::string role;  // baseline | candidate
  std::string source;
  std::string label;
  std::string problem;
  std::string model;
  std::string eta;
  std::size_t instances = 0;
  std::size_t parse_failures = 0;
  std::string solver_version;

  bool operator==(const SetInfo&) const = default;
};

struct FeasibilityBlock {
  FeasibilityReport baseline;
  FeasibilityReport candidate;

  bool operator==(const FeasibilityBlock&) const = default;
};

struct NodeBlock {
  NodeSetStats baseline;
  NodeSetStats candidate;
  double relative_error_percent = 0.0;

  bool operator==(const NodeBlock&) const = default;
};

struct TimeGapBlock {
  std::size_t baseline_records = 0;
  std::size_t candidate_records = 0;
  double baseline_mean = 0.0;
  double candidate_mean = 0.0;
  double gap_percent = 0.0;

  bool operator==(const TimeGapBlock&) const = default;
};

/// W1 between two scalar samples plus what it was computed from.
struct ScalarComparison {
  double w1 = 0.0;
  Summary a;
  Summary b;
  std::size_t excluded_a = 0;
  std::size_t excluded_b = 0;
  std::vector<double> samples_a;
  std::vector<double> samples_b;

  bool operator==(const ScalarComparison&) const = default;
};

struct CutBlock {
  std::vector<double> w1;  // PC1..PCk
  std::vector<double> explained_ratio;
  std::size_t size_a = 0;
  std::size_t size_b = 0;
  std::size_t zero_vectors_a = 0;
  std::size_t zero_vectors_b = 0;
  std::size_t excluded_a = 0;  // no cut statistics in the log
  std::size_t excluded_b = 0;

  bool operator==(const CutBlock&) const = default;
};

/// a = baseline, b = candidate.
struct InternalFeatureBlock {
  ScalarComparison root_gap;
  ScalarComparison heuristics;
  std::optional<CutBlock> cuts;
  std::size_t parse_errors_a = 0;
  std::size_t parse_errors_b = 0;
  std::map<std::string, std::int64_t> unmapped_cuts;

  bool operator==(const InternalFeatureBlock&) const = default;
};

struct SplitHalfReport {
  std::uint64_t seed = 0;
  std::size_t size_a = 0;
  std::size_t size_b = 0;
  ScalarComparison root_gap;
  ScalarComparison heuristics;
  std::optional<CutBlock> cuts;

  bool operator==(const SplitHalfReport&) const = default;
};

struct StageStatus {
  std::string stage;
  std::string state;  // ok | skipped | failed
  std::string message;

  bool operator==(const StageStatus&) const = default;
};

struct ComparisonReport {
  std::string toolkit_version{kToolkitVersion};
  /// Seeds, knobs and the solver configuration the report was computed with.
  nlohmann::ordered_json settings = nlohmann::ordered_json::object();
  SetInfo baseline;
  SetInfo candidate;

  std::optional<FeasibilityBlock> feasibility;
  std::optional<SimilarityReport> structural;
  std::optional<NodeBlock> nodes;
  std::optional<TimeGapBlock> time_gap;
  std::optional<InternalFeatureBlock> internal_features;
  std::optional<SplitHalfReport> split_half_baseline;
  std::optional<SplitHalfReport> split_half_candidate;
  std::optional<TuningResult> tuning;

  std::vector<StageStatus> stages;
  std::vector<std::string> notes;

  bool any_failed() const;

  bool operator==(const ComparisonReport&) const = default;
};

/// Bookkeeping that is deliberately kept out of the report so reruns and
/// fresh runs render the same JSON.
struct RunStats {
  std::size_t solver_launches = 0;
  std::size_t solve_cache_hits = 0;
  std::size_t feature_cache_hits = 0;
};

ComparisonReport run_benchmark(const BenchmarkConfig& config, RunStats* stats = nullptr);

// ---------------------------------------------------------------------------
// Solver-internal feature comparisons

/// Root gaps, heuristic counts and cut vectors of `a` against `b`. Records
/// missing a field are excluded from that field only. Throws EmptySample
/// when a side has no usable root gap.
InternalFeatureBlock compare_internal_features(const std::vector<SolverInternalFeatures>& a,
                                               const std::vector<SolverInternalFeatures>& b,
                                               int pca_k = kDefaultPcaComponents);

/// Compares two given halves without shuffling.
SplitHalfReport compare_halves(const std::vector<SolverInternalFeatures>& a,
                               const std::vector<SolverInternalFeatures>& b, int pca_k = kDefaultPcaComponents);

/// Seeded shuffle (after ordering by instance name), halves of ceil(n/2) and
/// floor(n/2). Throws TooFewRecords below 4 usable root gaps.
SplitHalfReport split_half(const std::vector<SolverInternalFeatures>& features, std::uint64_t seed,
                           int pca_k = kDefaultPcaComponents);

/// Parses the log of every record; unrecognized logs are counted, not thrown.
std::vector<SolverInternalFeatures> features_from_records(SolverId solver, const std::vector<SolveRecord>& records,
                                                          const std::filesystem::path& run_dir,
                                                          std::size_t* parse_errors = nullptr);

nlohmann::ordered_json to_json(const SolverInternalFeatures& features);
SolverInternalFeatures internal_features_from_json(const nlohmann::ordered_json& j);

/// One features.jsonl line: {"instance": name, <feature>: value, ...}.
nlohmann::ordered_json structural_features_json(const std::string& instance, const StructuralFeatureVector& features);

// ---------------------------------------------------------------------------
// Rendering

enum class ReportFormat { Json, Markdown, Csv };

/// Throws UnknownFormat.
ReportFormat report_format_from_string(std::string_view name);

std::string render_report(const ComparisonReport& report, ReportFormat format);
std::string render_report(const SplitHalfReport& report, ReportFormat format);

nlohmann::ordered_json to_json(const ComparisonReport& report);
ComparisonReport comparison_report_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json to_json(const SplitHalfReport& report);
SplitHalfReport split_half_report_from_json(const nlohmann::ordered_json& j);

/// Whichever report kind the JSON holds, rendered again in `format`.
std::string rerender_report_json(const nlohmann::ordered_json& j, ReportFormat format);

}  // namespace genbench
