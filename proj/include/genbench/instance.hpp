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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace genbench {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Magnitudes at or above this threshold are read as infinite bounds.
inline constexpr double kInfiniteBoundThreshold = 1e30;

enum class ObjectiveSense { Minimize, Maximize };
enum class RowSense { LessEqual, GreaterEqual, Equal };
enum class VarType { Continuous, Integer, Binary };

std::string_view to_string(ObjectiveSense sense);
std::string_view to_string(RowSense sense);
std::string_view to_string(VarType type);

struct MatrixEntry {
  std::int32_t row = 0;
  std::int32_t col = 0;
  double value = 0.0;

  friend bool operator==(const MatrixEntry&, const MatrixEntry&) = default;
};

/// Sparse MILP in coordinate form.
///
/// A canonical instance has its entries sorted by (row, col) with duplicates
/// summed and zeros dropped, and integer variables bounded by exactly [0, 1]
/// promoted to binary. Comparison ignores names and entry order of
/// non-canonical values; use canonicalize() before comparing raw inputs.
struct MilpInstance {
  std::string name;
  ObjectiveSense sense = ObjectiveSense::Minimize;
  std::vector<double> objective;
  double objective_offset = 0.0;
  std::vector<MatrixEntry> entries;
  std::vector<RowSense> row_senses;
  std::vector<double> rhs;
  std::vector<double> lower_bounds;
  std::vector<double> upper_bounds;
  std::vector<VarType> var_types;
  // Preserved for output only; excluded from equality.
  std::vector<std::string> row_names;
  std::vector<std::string> col_names;

  std::size_t num_rows() const noexcept { return row_senses.size(); }
  std::size_t num_cols() const noexcept { return objective.size(); }
  std::size_t nnz() const noexcept { return entries.size(); }

  /// Appends a variable with the default bounds for its type.
  std::int32_t add_variable(VarType type, double cost, std::string var_name = {});
  std::int32_t add_row(RowSense sense, double rhs_value, std::string row_name = {});
  void add_entry(std::int32_t row, std::int32_t col, double value);
};

/// Field equality on the mathematical content (names excluded, entries
/// compared as sorted multisets).
bool operator==(const MilpInstance& a, const MilpInstance& b);

struct InstanceStats {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t nnz = 0;
  std::size_t continuous = 0;
  std::size_t integer = 0;
  std::size_t binary = 0;
  std::size_t less_equal = 0;
  std::size_t greater_equal = 0;
  std::size_t equal = 0;

  friend bool operator==(const InstanceStats&, const InstanceStats&) = default;
};

/// Throws Error(InvalidInstance) when an invariant is violated.
void validate(const MilpInstance& instance);

MilpInstance canonicalize(MilpInstance instance);

InstanceStats instance_stats(const MilpInstance& instance);

enum class InstanceFormat { Auto, FreeMps, Lp };

/// Parses instance text. `Auto` sniffs the content.
MilpInstance parse_instance_text(std::string_view text,
                                 InstanceFormat format = InstanceFormat::Auto,
                                 std::string_view source_name = {});

/// Reads a file; `Auto` dispatches on extension, then content.
MilpInstance parse_instance_file(const std::filesystem::path& path,
                                 InstanceFormat format = InstanceFormat::Auto);

/// Free-format MPS, deterministic, 17 significant digits.
std::string write_mps(const MilpInstance& instance);

void write_mps_file(const MilpInstance& instance, const std::filesystem::path& path);

/// Instance files (*.mps, *.lp) in a directory, sorted by file name.
std::vector<std::filesystem::path> list_instance_files(const std::filesystem::path& dir);

/// Checks a candidate solution against bounds, integrality and rows within
/// `tolerance`. Used by tests as an independent feasibility certificate.
bool is_feasible_point(const MilpInstance& instance,
                       const std::vector<double>& x,
                       double tolerance = 1e-9);

}  // namespace genbench
