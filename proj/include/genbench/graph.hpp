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

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "genbench/instance.hpp"

namespace genbench {

/// Variable node features, in this order.
enum VariableFeature : std::size_t {
  kVarObjective = 0,
  kVarIsBinary,
  kVarIsInteger,
  kVarIsContinuous,
  kVarHasLower,
  kVarLower,
  kVarHasUpper,
  kVarUpper,
  kVarNormalizedDegree,
  kNumVariableFeatures
};

/// Variable-constraint graph. Edges carry the matrix coefficient; adjacency
/// is kept in CSR form for both sides.
struct BipartiteGraph {
  std::vector<double> constraint_features;  // b_i
  std::vector<std::array<double, kNumVariableFeatures>> variable_features;
  std::vector<MatrixEntry> edges;  // sorted by (row, col)

  std::vector<std::size_t> row_offsets;  // size m+1, into row_cols
  std::vector<std::int32_t> row_cols;
  std::vector<double> row_values;
  std::vector<std::size_t> col_offsets;  // size n+1, into col_rows
  std::vector<std::int32_t> col_rows;
  std::vector<double> col_values;

  std::size_t num_constraints() const noexcept { return constraint_features.size(); }
  std::size_t num_variables() const noexcept { return variable_features.size(); }
  std::size_t num_edges() const noexcept { return edges.size(); }
  std::size_t row_degree(std::size_t i) const { return row_offsets[i + 1] - row_offsets[i]; }
  std::size_t col_degree(std::size_t j) const { return col_offsets[j + 1] - col_offsets[j]; }
};

BipartiteGraph to_bipartite(const MilpInstance& instance);

struct StructuralFeatureVector {
  static constexpr std::size_t kSize = 11;
  static constexpr std::array<std::string_view, kSize> kNames = {
      "coef_dens", "var_degree_mean", "var_degree_std", "cons_degree_mean", "cons_degree_std", "lhs_mean",
      "lhs_std",   "rhs_mean",        "rhs_std",        "clustering",       "modularity"};

  double coef_dens = 0.0;
  double var_degree_mean = 0.0;
  double var_degree_std = 0.0;
  double cons_degree_mean = 0.0;
  double cons_degree_std = 0.0;
  double lhs_mean = 0.0;
  double lhs_std = 0.0;
  double rhs_mean = 0.0;
  double rhs_std = 0.0;
  double clustering = 0.0;
  double modularity = 0.0;

  std::array<double, kSize> values() const;
  static StructuralFeatureVector from_values(const std::array<double, kSize>& v);

  friend bool operator==(const StructuralFeatureVector&, const StructuralFeatureVector&) = default;
};

inline constexpr std::string_view kClusteringAlgorithm = "variable-projection-average-local";
inline constexpr std::string_view kModularityAlgorithm = "louvain-r1.0-canonical-order";

enum class Execution { Serial, Parallel };

struct ClusteringOptions {
  std::uint64_t seed = 0;
  /// Rows with more variables than this contribute sampled pairs only.
  std::size_t dense_row_threshold = 1000;
  std::size_t sampled_pairs = 2000;
  /// Above this many variables the projection uses sorted adjacency lists
  /// instead of a dense bitset.
  std::size_t bitset_max_vars = 16384;
  Execution execution = Execution::Parallel;
};

/// Average local clustering coefficient of the variable projection.
double variable_projection_clustering(const BipartiteGraph& graph, const ClusteringOptions& options = {});

/// Per-variable triangle counts in the variable projection. Exposed so the
/// serial and parallel kernels can be compared directly.
std::vector<std::uint64_t> projection_triangle_counts(const BipartiteGraph& graph, const ClusteringOptions& options);

/// Modularity of the partition found by Louvain on the m+n node graph
/// (constraints first, then variables). Throws NoEdges.
double graph_modularity(const BipartiteGraph& graph, std::uint64_t seed);

/// Community label per node (constraints first) as found by graph_modularity.
std::vector<std::int32_t> louvain_partition(const BipartiteGraph& graph, std::uint64_t seed);

/// Newman modularity of an explicit partition over the m+n nodes.
double modularity_of_partition(const BipartiteGraph& graph, const std::vector<std::int32_t>& community);

/// Throws EmptyGraph when m == 0 or n == 0. A graph with no edges has
/// modularity reported as 0.
StructuralFeatureVector extract_features(const BipartiteGraph& graph, std::uint64_t seed,
                                         Execution execution = Execution::Parallel);

/// Features for a whole set; instance i uses derive_seed(root_seed, name_i),
/// so the result does not depend on the execution mode.
std::vector<StructuralFeatureVector> extract_set_features(const std::vector<MilpInstance>& instances,
                                                          std::uint64_t root_seed,
                                                          Execution execution = Execution::Parallel);

}  // namespace genbench
