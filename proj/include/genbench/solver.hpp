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
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "genbench/instance.hpp"
#include "genbench/solver_types.hpp"
#include "genbench/stats.hpp"

namespace genbench {

/// The watchdog kills a solver that is still running this long after its limit.
inline constexpr double kWatchdogGraceSeconds = 5.0;

struct SolverConfig {
  SolverId solver = SolverId::Scip;
  /// Empty: discovered (GENBENCH_SOLVER_<ID>, then PATH, then bundled shims).
  std::filesystem::path executable;
  double time_limit = 0.0;  // seconds, required
  int threads = 1;
  std::uint64_t seed = 0;
  /// Overrides by adapter parameter name; see adapter_parameters().
  std::map<std::string, std::string> parameters;
  /// Empty: a file in the system temp directory.
  std::filesystem::path log_path;
};

/// Throws InvalidConfig on a bad limit or thread count and UnknownParameter
/// on an override the adapter does not know.
void validate(const SolverConfig& config);

struct SolveRecord {
  std::string instance;
  SolveStatus status = SolveStatus::Error;
  ObjectiveSense sense = ObjectiveSense::Minimize;
  double wall_time = 0.0;
  /// Solver-reported solving time, when the log has one.
  std::optional<double> solve_time;
  std::int64_t nodes = 0;
  bool nodes_known = false;
  std::optional<double> incumbent;
  std::optional<double> bound;
  /// Final gap as printed by the solver (percent).
  std::optional<double> printed_gap;
  std::string status_text;
  std::string solver_version;
  std::string log_path;
  int exit_code = 0;
  bool killed = false;

  /// |inc - bound| and |inc - bound| / max(1, |inc|) when both are known.
  std::optional<double> gap_abs() const;
  std::optional<double> gap_rel() const;

  bool operator==(const SolveRecord&) const = default;
};

/// Time used by the metrics: the solver's own solving time when reported,
/// wall time otherwise.
double record_time(const SolveRecord& record);

bool hit_time_limit(const SolveRecord& record);

nlohmann::ordered_json to_json(const SolveRecord& record);
SolveRecord solve_record_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json to_json(const SolverConfig& config);
SolverConfig solver_config_from_json(const nlohmann::ordered_json& j);

// ---------------------------------------------------------------------------
// Adapters

enum class ParameterChannel { SettingsFile, Command, Flag };

struct AdapterParameter {
  std::string name;
  ParameterChannel channel;
  /// Allowed values for enumerated parameters; empty means numeric.
  std::vector<std::string> choices;
};

const std::vector<AdapterParameter>& adapter_parameters(SolverId solver);

std::string default_executable_name(SolverId solver);

/// Resolution order: explicit path, GENBENCH_SOLVER_<ID>, PATH, bundled
/// shim directory. Throws SolverNotFound.
std::filesystem::path discover_solver(SolverId solver, const std::filesystem::path& explicit_path = {});

struct SolverInvocation {
  std::vector<std::string> argv;
  /// Side files (settings, options) to write before launch.
  std::vector<std::pair<std::filesystem::path, std::string>> files;
};

SolverInvocation build_invocation(const SolverConfig& config,
                                  const std::filesystem::path& executable,
                                  const std::filesystem::path& instance,
                                  const std::filesystem::path& log_path);

/// Maps a parsed solver summary to a terminal status. Total over all inputs.
struct ProcessOutcome {
  int exit_code = 0;
  bool killed = false;
  bool launched = true;
};
SolveRecord classify_run(SolverId solver, std::string_view log_text, const ProcessOutcome& outcome);

// ---------------------------------------------------------------------------
// Running

SolveRecord run_solver(const std::filesystem::path& instance_path, const SolverConfig& config);

struct BatchOptions {
  int jobs = 1;
  /// Copy instance files into <run_dir>/instances.
  bool copy_instances = true;
};

/// Solves every instance into a run directory: logs/<instance>.log,
/// records.jsonl (instance-name order) and run_meta.json.
std::vector<SolveRecord> run_solver_batch(const std::vector<std::filesystem::path>& instances,
                                          const SolverConfig& config,
                                          const std::filesystem::path& run_dir,
                                          const BatchOptions& options = {});

std::vector<SolveRecord> read_records(const std::filesystem::path& records_jsonl);
void write_records(const std::vector<SolveRecord>& records, const std::filesystem::path& records_jsonl);

// ---------------------------------------------------------------------------
// Outcome metrics

struct FeasibilityReport {
  std::size_t total = 0;
  std::size_t optimal = 0;
  std::size_t feasible_time_limit = 0;
  std::size_t infeasible = 0;
  std::size_t unbounded = 0;
  std::size_t time_limit_no_incumbent = 0;
  std::size_t error = 0;
  double ratio_percent = 0.0;

  bool operator==(const FeasibilityReport&) const = default;
};

FeasibilityReport feasibility_ratio(std::span<const SolveRecord> records);

struct NodeSetStats {
  std::size_t records = 0;
  std::size_t excluded_errors = 0;
  Summary nodes;
  double node_sum = 0.0;
  std::size_t time_limit_hits = 0;
  double mean_time = 0.0;

  bool operator==(const NodeSetStats&) const = default;
};

struct HardnessReport {
  NodeSetStats generated;
  NodeSetStats baseline;
  double node_relative_error_percent = 0.0;
  double solving_time_gap_percent = 0.0;

  bool operator==(const HardnessReport&) const = default;
};

/// Throws EmptySet when either list has no usable records and
/// ZeroBaselineNodes when the baseline explored no nodes at all.
HardnessReport branching_node_report(std::span<const SolveRecord> generated,
                                     std::span<const SolveRecord> baseline);

double solving_time_gap(std::span<const SolveRecord> generated, std::span<const SolveRecord> baseline);

/// Mean record_time over the non-error records. Throws EmptySet.
double mean_solve_time(std::span<const SolveRecord> records);

}  // namespace genbench
