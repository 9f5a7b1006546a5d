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
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "genbench/instance.hpp"

namespace genbench {

enum class Family { SetCover, CombinatorialAuction, FacilityLocation, IndependentSet };

/// Short token used in file names and the CLI: sc, ca, cfl, is.
std::string_view family_token(Family family);
Family family_from_token(std::string_view token);  // throws InvalidConfig

struct IntRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

struct RealRange {
  double lo = 0.0;
  double hi = 0.0;
};

struct GenParams {
  Family family = Family::SetCover;
  std::uint64_t seed = 0;

  IntRange sc_rows{200, 800};
  IntRange sc_cols{400, 1600};
  RealRange sc_density{0.05, 0.2};
  IntRange sc_cost{1, 100};

  IntRange ca_items{50, 200};
  IntRange ca_bids{80, 600};
  RealRange ca_density{0.02, 0.1};
  IntRange ca_value{1, 100};

  IntRange cfl_customers{50, 150};
  double cfl_ratio = 0.5;
  // Accepted for completeness; the formulation fixes the variable count and
  // density from the customer count.
  IntRange cfl_variables{500, 5000};
  RealRange cfl_density{0.01, 0.3};
  IntRange cfl_demand{5, 35};
  IntRange cfl_transport{1, 100};
  IntRange cfl_fixed{100, 1000};
  double cfl_capacity_factor = 1.2;

  IntRange is_nodes{480, 520};
  RealRange is_edge_prob{0.01, 0.015};
};

/// Throws InvalidConfig on inverted ranges or out-of-range probabilities.
void validate(const GenParams& params);

/// All fields, keyed by name; ranges as [lo, hi] pairs.
nlohmann::ordered_json to_json(const GenParams& params);
/// Keys absent from `j` keep the value in `base`. Throws InvalidConfig on
/// unknown keys or badly typed values.
GenParams gen_params_from_json(const nlohmann::ordered_json& j, GenParams base = {});

/// Sampled sizes and the fixed formulation choices, per instance.
using GenMeta = nlohmann::ordered_json;

MilpInstance generate_set_cover(const GenParams& params, GenMeta* meta = nullptr);
MilpInstance generate_independent_set(const GenParams& params, GenMeta* meta = nullptr);
MilpInstance generate_combinatorial_auction(const GenParams& params, GenMeta* meta = nullptr);
MilpInstance generate_cfl(const GenParams& params, GenMeta* meta = nullptr);

/// Dispatches on params.family.
MilpInstance generate(const GenParams& params, GenMeta* meta = nullptr);

/// Instance name for batch index i, e.g. "sc_0007".
std::string batch_instance_name(Family family, std::size_t index, std::size_t count);

struct BatchResult {
  std::vector<std::filesystem::path> files;
  GenMeta meta;  // contents of gen_meta.json
};

/// Generates `count` instances into out_dir as <family>_<index>.mps plus
/// gen_meta.json. Instance i uses seed derive_seed(root_seed, i).
BatchResult generate_batch(GenParams params, std::size_t count, std::uint64_t root_seed,
                           const std::filesystem::path& out_dir, int jobs = 0);

}  // namespace genbench
