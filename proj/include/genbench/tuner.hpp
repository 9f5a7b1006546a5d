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
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "genbench/random.hpp"
#include "genbench/solver.hpp"

namespace genbench {

/// Parameter name -> value as passed to the solver adapter. An empty
/// configuration means the solver's own defaults.
using Configuration = std::map<std::string, std::string>;

struct Dimension {
  enum class Kind { Continuous, Categorical };

  std::string name;
  Kind kind = Kind::Categorical;
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::string> values;

  static Dimension continuous(std::string name, double lo, double hi);
  static Dimension categorical(std::string name, std::vector<std::string> values);

  bool contains(std::string_view value) const;

  bool operator==(const Dimension&) const = default;
};

struct ParameterSpace {
  std::vector<Dimension> dimensions;

  const Dimension* find(std::string_view name) const;
  /// Every key is a dimension and every value lies inside it.
  bool contains(const Configuration& config) const;
  /// Number of points when every dimension is categorical, nullopt otherwise.
  std::optional<std::uint64_t> cardinality() const;

  bool operator==(const ParameterSpace&) const = default;
};

/// Throws InvalidConfig on duplicate names, lo >= hi or an empty value list.
void validate(const ParameterSpace& space);

/// One dimension per line: `name = [lo, hi]` or `name = {a, b, c}`, where an
/// integer run may be written `{-1..20}`. '#' starts a comment.
ParameterSpace parse_space(std::string_view text);
ParameterSpace load_space(const std::filesystem::path& path);
std::string write_space(const ParameterSpace& space);

/// The space shipped for each adapter (data/spaces/<solver>.space).
const ParameterSpace& default_space(SolverId solver);

/// Named configurations, `[name]` sections of `key = value` lines.
std::map<std::string, Configuration> parse_presets(std::string_view text);
/// Best-found Gurobi configurations shipped with the adapter, plus "default".
const std::map<std::string, Configuration>& gurobi_presets();

std::string format_real(double value);

// ---------------------------------------------------------------------------

struct Evaluation {
  std::vector<std::string> instances;  // name order
  std::vector<double> times;           // PAR-1 scored
  double mean_time = 0.0;
  std::size_t timeouts = 0;
  /// A solve ended in Error; every instance is then scored at the limit.
  bool crashed = false;

  bool operator==(const Evaluation&) const = default;
};

struct Trial {
  std::size_t index = 0;  // 1-based
  Configuration config;
  Evaluation evaluation;
  /// Same configuration as an earlier trial; its evaluation was reused.
  bool cached = false;

  bool operator==(const Trial&) const = default;
};

/// Search strategies see the full history and propose the next trial. They
/// are called sequentially.
class SearchStrategy {
 public:
  virtual ~SearchStrategy() = default;
  virtual std::string_view id() const = 0;
  virtual Configuration propose(const ParameterSpace& space, const std::vector<Trial>& history) = 0;
};

/// "random" (alias "default"): uniform over the space. Throws UnknownStrategy.
std::unique_ptr<SearchStrategy> make_strategy(std::string_view id, std::uint64_t seed);

/// Uniform draw of one point of the space.
Configuration sample_configuration(const ParameterSpace& space, Rng& rng);

struct TuneOptions {
  int jobs = 1;
  /// Per-trial run directories go here; empty means a fresh temp directory
  /// that is removed afterwards.
  std::filesystem::path work_dir;
};

struct TuningResult {
  SolverId solver = SolverId::Scip;
  std::string strategy;
  std::uint64_t seed = 0;
  std::size_t budget = 0;
  double time_limit = 0.0;
  int threads = 1;
  std::string scoring = "PAR-1";
  ParameterSpace space;

  std::vector<Trial> history;
  std::size_t best_trial = 1;
  Configuration best_config;
  double default_mean = 0.0;  // tuning set
  double best_mean = 0.0;
  double tuning_improvement_percent = 0.0;

  std::optional<Evaluation> test_default;
  std::optional<Evaluation> test_best;
  std::optional<double> test_improvement_percent;

  bool operator==(const TuningResult&) const = default;
};

/// (default - best) / default * 100; 0 when the default mean is 0.
double improvement_percent(double default_mean, double best_mean);

/// Solves every instance under `overrides` and scores timeouts at the limit.
/// Throws EmptyTestSet.
Evaluation evaluate_config(const Configuration& overrides, const std::vector<std::filesystem::path>& test_set,
                           const SolverConfig& config, const TuneOptions& options = {});

/// Trial 1 is the solver default; the rest come from the strategy. Throws
/// EmptyTuningSet, UnknownStrategy, InvalidConfig (budget 0) and
/// UnknownParameter when the space names a parameter the adapter lacks.
TuningResult tune(const ParameterSpace& space, const std::vector<std::filesystem::path>& tuning_set,
                  const SolverConfig& config, std::size_t budget, std::string_view strategy, std::uint64_t seed,
                  const TuneOptions& options = {});

/// Evaluates the default and best configurations on a held-out set and
/// fills the test fields of `result`.
void evaluate_on_test_set(TuningResult& result, const std::vector<std::filesystem::path>& test_set,
                          const SolverConfig& config, const TuneOptions& options = {});

nlohmann::ordered_json to_json(const TuningResult& result);
TuningResult tuning_result_from_json(const nlohmann::ordered_json& j);

}  // namespace genbench
