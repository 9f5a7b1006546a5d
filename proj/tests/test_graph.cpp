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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "doctest.h"
#include "genbench/error.hpp"
#include "genbench/graph.hpp"
#include "genbench/random.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace genbench;
using namespace genbench::testing;

namespace {

MilpInstance random_sparse(Rng& rng, int m, int n, double p)
{
  MilpInstance inst;
  for (int j = 0; j < n; ++j) inst.add_variable(rng.bernoulli(0.5) ? VarType::Binary : VarType::Continuous,
                                                static_cast<double>(rng.uniform_int(-5, 5)));
  for (int i = 0; i < m; ++i) {
    inst.add_row(RowSense::LessEqual, static_cast<double>(rng.uniform_int(0, 9)));
    for (int j = 0; j < n; ++j)
      if (rng.bernoulli(p)) inst.add_entry(i, j, static_cast<double>(rng.uniform_int(1, 4)));
  }
  return canonicalize(inst);
}

MilpInstance permute_columns(const MilpInstance& inst, const std::vector<std::int32_t>& perm)
{
  MilpInstance out = inst;
  for (std::size_t j = 0; j < inst.num_cols(); ++j) {
    out.objective[perm[j]] = inst.objective[j];
    out.lower_bounds[perm[j]] = inst.lower_bounds[j];
    out.upper_bounds[perm[j]] = inst.upper_bounds[j];
    out.var_types[perm[j]] = inst.var_types[j];
  }
  for (auto& e : out.entries) e.col = perm[e.col];
  return canonicalize(out);
}

MilpInstance single_row(int vars)
{
  MilpInstance inst;
  for (int j = 0; j < vars; ++j) inst.add_variable(VarType::Binary, 1.0);
  inst.add_row(RowSense::LessEqual, 1.0);
  for (int j = 0; j < vars; ++j) inst.add_entry(0, j, 1.0);
  return inst;
}

}  // namespace

TEST_CASE("bipartite graph construction")
{
  MilpInstance inst;
  inst.add_variable(VarType::Continuous, 1.0);
  inst.add_variable(VarType::Integer, -2.0);
  inst.upper_bounds[1] = 5.0;
  inst.add_row(RowSense::LessEqual, 3.0);
  inst.add_row(RowSense::GreaterEqual, 4.0);
  inst.add_entry(0, 0, 1.0);
  inst.add_entry(1, 1, 1.0);
  const auto g = to_bipartite(inst);
  CHECK(g.num_constraints() + g.num_variables() == 4);
  CHECK(g.num_edges() == 2);
  CHECK(g.constraint_features == std::vector<double>{3.0, 4.0});
  const auto& v1 = g.variable_features[1];
  CHECK(v1[kVarObjective] == -2.0);
  CHECK(v1[kVarIsInteger] == 1.0);
  CHECK(v1[kVarHasUpper] == 1.0);
  CHECK(v1[kVarUpper] == 5.0);
  CHECK(v1[kVarNormalizedDegree] == 0.5);
  CHECK(g.variable_features[0][kVarHasUpper] == 0.0);
  CHECK(g.variable_features[0][kVarUpper] == 0.0);

  const auto f = extract_features(g, 1);
  CHECK(f.coef_dens == 0.5);
  CHECK(f.var_degree_mean == 1.0);
  CHECK(f.cons_degree_mean == 1.0);
  CHECK(f.var_degree_std == 0.0);
}

TEST_CASE("zero coefficients produce no edges")
{
  MilpInstance inst;
  inst.add_variable(VarType::Continuous, 1.0);
  inst.add_row(RowSense::LessEqual, 1.0);
  inst.add_entry(0, 0, 0.0);
  const auto g = to_bipartite(inst);
  CHECK(g.num_edges() == 0);
  CHECK_THROWS_AS(graph_modularity(g, 0), Error);
  CHECK(extract_features(g, 0).modularity == 0.0);
}

TEST_CASE("empty graph is rejected")
{
  MilpInstance inst;
  inst.add_variable(VarType::Continuous, 1.0);
  try {
    extract_features(to_bipartite(inst), 0);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyGraph);
  }
}

TEST_CASE("edge count matches instance stats on random instances")
{
  Rng rng(11);
  for (int t = 0; t < 100; ++t) {
    const auto inst = testing::random_instance(rng);
    CHECK(to_bipartite(inst).num_edges() == instance_stats(inst).nnz);
  }
}

TEST_CASE("coefficient statistics")
{
  MilpInstance inst;
  for (int j = 0; j < 3; ++j) inst.add_variable(VarType::Continuous, 0.0);
  inst.add_row(RowSense::LessEqual, 2.0);
  inst.add_row(RowSense::LessEqual, 6.0);
  for (int j = 0; j < 3; ++j) inst.add_entry(0, j, 3.0);
  inst.add_entry(1, 0, 3.0);
  const auto f = extract_features(to_bipartite(inst), 0);
  CHECK(f.lhs_mean == 3.0);
  CHECK(f.lhs_std == 0.0);
  CHECK(f.rhs_mean == 4.0);
  CHECK(f.rhs_std == 2.0);
}

TEST_CASE("projection clustering small cases")
{
  CHECK(variable_projection_clustering(to_bipartite(single_row(2))) == 0.0);
  CHECK(variable_projection_clustering(to_bipartite(single_row(3))) == 1.0);
  CHECK(extract_features(to_bipartite(single_row(3)), 5).clustering == 1.0);
  // path x0-x1-x2 through two rows has no triangle
  MilpInstance path;
  for (int j = 0; j < 3; ++j) path.add_variable(VarType::Binary, 1.0);
  path.add_row(RowSense::LessEqual, 1.0);
  path.add_row(RowSense::LessEqual, 1.0);
  path.add_entry(0, 0, 1.0);
  path.add_entry(0, 1, 1.0);
  path.add_entry(1, 1, 1.0);
  path.add_entry(1, 2, 1.0);
  CHECK(variable_projection_clustering(to_bipartite(path)) == 0.0);
  MilpInstance none;
  none.add_variable(VarType::Binary, 1.0);
  CHECK(variable_projection_clustering(to_bipartite(none)) == 0.0);
}

TEST_CASE("clustering matches brute force")
{
  Rng rng(5);
  for (int t = 0; t < 60; ++t) {
    const int n = static_cast<int>(rng.uniform_int(1, 50));
    const int m = static_cast<int>(rng.uniform_int(1, 30));
    const auto inst = random_sparse(rng, m, n, rng.uniform_real(0.02, 0.3));
    const auto g = to_bipartite(inst);
    const double expected = brute_clustering(inst);
    ClusteringOptions serial;
    serial.execution = Execution::Serial;
    ClusteringOptions sparse;
    sparse.bitset_max_vars = 0;
    CHECK(std::abs(variable_projection_clustering(g) - expected) <= 1e-12);
    CHECK(std::abs(variable_projection_clustering(g, serial) - expected) <= 1e-12);
    CHECK(std::abs(variable_projection_clustering(g, sparse) - expected) <= 1e-12);
  }
}

TEST_CASE("serial and parallel triangle kernels agree")
{
  Rng rng(8);
  const auto g = to_bipartite(random_sparse(rng, 200, 400, 0.02));
  ClusteringOptions serial;
  serial.execution = Execution::Serial;
  ClusteringOptions parallel;
  parallel.execution = Execution::Parallel;
  CHECK(projection_triangle_counts(g, serial) == projection_triangle_counts(g, parallel));
}

TEST_CASE("dense rows are sampled deterministically")
{
  const auto g = to_bipartite(single_row(1500));
  ClusteringOptions o;
  o.seed = 3;
  const double a = variable_projection_clustering(g, o);
  CHECK(a == variable_projection_clustering(g, o));
  CHECK(a >= 0.0);
  CHECK(a <= 1.0);
  ClusteringOptions sparse = o;
  sparse.bitset_max_vars = 0;
  CHECK(a == variable_projection_clustering(g, sparse));
}

TEST_CASE("modularity of explicit partitions")
{
  // two disconnected single edges: rows r0-x0, r1-x1
  MilpInstance inst;
  inst.add_variable(VarType::Binary, 1.0);
  inst.add_variable(VarType::Binary, 1.0);
  inst.add_row(RowSense::LessEqual, 1.0);
  inst.add_row(RowSense::LessEqual, 1.0);
  inst.add_entry(0, 0, 1.0);
  inst.add_entry(1, 1, 1.0);
  const auto g = to_bipartite(inst);
  // node order: r0, r1, x0, x1
  CHECK(modularity_of_partition(g, {0, 1, 0, 1}) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(modularity_of_partition(g, {0, 0, 0, 0}) == doctest::Approx(0.0));
  CHECK(graph_modularity(g, 1) == doctest::Approx(0.5).epsilon(1e-15));

  MilpInstance kb;  // complete bipartite K_{3,4}
  for (int j = 0; j < 4; ++j) kb.add_variable(VarType::Binary, 1.0);
  for (int i = 0; i < 3; ++i) {
    kb.add_row(RowSense::LessEqual, 1.0);
    for (int j = 0; j < 4; ++j) kb.add_entry(i, j, 1.0);
  }
  const auto gk = to_bipartite(kb);
  CHECK(modularity_of_partition(gk, std::vector<std::int32_t>(7, 9)) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("louvain is deterministic and finds planted communities")
{
  Rng rng(21);
  // four blocks of rows/variables, sparse links between blocks
  MilpInstance inst;
  const int blocks = 4, per = 12;
  for (int j = 0; j < blocks * per; ++j) inst.add_variable(VarType::Binary, 1.0);
  for (int b = 0; b < blocks; ++b)
    for (int r = 0; r < per; ++r) {
      const auto row = inst.add_row(RowSense::LessEqual, 1.0);
      for (int j = 0; j < per; ++j)
        if (rng.bernoulli(0.5)) inst.add_entry(row, b * per + j, 1.0);
    }
  inst.add_entry(0, per, 1.0);
  inst.add_entry(per, 2 * per, 1.0);
  inst = canonicalize(inst);
  const auto g = to_bipartite(inst);
  const double q1 = graph_modularity(g, 77);
  CHECK(q1 == graph_modularity(g, 77));
  CHECK(q1 > 0.6);
  CHECK(q1 <= 1.0);
  const auto part = louvain_partition(g, 77);
  CHECK(modularity_of_partition(g, part) == q1);
}

TEST_CASE("features are invariant under variable permutation")
{
  Rng rng(31);
  const auto base = random_sparse(rng, 25, 40, 0.12);
  const auto ref = extract_features(to_bipartite(base), 123);
  for (int t = 0; t < 20; ++t) {
    std::vector<std::int32_t> perm(base.num_cols());
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    const auto f = extract_features(to_bipartite(permute_columns(base, perm)), 123);
    const auto a = ref.values();
    const auto b = f.values();
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(a[k] - b[k]) <= 1e-12 * std::max(1.0, std::abs(a[k])));
  }
}

TEST_CASE("degree statistics match a brute-force recount")
{
  Rng rng(41);
  for (int t = 0; t < 100; ++t) {
    const int m = static_cast<int>(rng.uniform_int(1, 15));
    const int n = static_cast<int>(rng.uniform_int(1, 15));
    const auto inst = random_sparse(rng, m, n, 0.3);
    const auto f = extract_features(to_bipartite(inst), 0);
    std::vector<double> vd(n, 0.0), cd(m, 0.0);
    for (const auto& e : inst.entries) {
      vd[e.col] += 1;
      cd[e.row] += 1;
    }
    auto mean = [](const std::vector<double>& x) {
      double s = 0;
      for (double v : x) s += v;
      return s / static_cast<double>(x.size());
    };
    auto pstd = [&](const std::vector<double>& x) {
      const double mu = mean(x);
      double s = 0;
      for (double v : x) s += (v - mu) * (v - mu);
      return std::sqrt(s / static_cast<double>(x.size()));
    };
    CHECK(std::abs(f.var_degree_mean - mean(vd)) <= 1e-12);
    CHECK(std::abs(f.var_degree_std - pstd(vd)) <= 1e-12);
    CHECK(std::abs(f.cons_degree_mean - mean(cd)) <= 1e-12);
    CHECK(std::abs(f.cons_degree_std - pstd(cd)) <= 1e-12);
    CHECK(std::llround(f.coef_dens * static_cast<double>(m) * static_cast<double>(n)) ==
          static_cast<long long>(inst.nnz()));
    CHECK(f.modularity >= -0.5);
    CHECK(f.modularity <= 1.0);
    CHECK(f.clustering >= 0.0);
    CHECK(f.clustering <= 1.0);
  }
}

TEST_CASE("set extraction is scheduling independent")
{
  Rng rng(51);
  std::vector<MilpInstance> set;
  for (int t = 0; t < 24; ++t) {
    auto inst = random_sparse(rng, 20, 30, 0.15);
    inst.name = "inst_" + std::to_string(t);
    set.push_back(inst);
  }
  const auto par = extract_set_features(set, 9, Execution::Parallel);
  const auto ser = extract_set_features(set, 9, Execution::Serial);
  CHECK(par == ser);
}
