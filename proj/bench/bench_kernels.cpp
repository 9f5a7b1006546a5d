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

// Serial reference vs OpenMP kernels. Both modes must return the same values;
// each benchmark checks that once before timing.

#include <cstdlib>
#include <iostream>
#include <vector>

#include <benchmark/benchmark.h>

#include "genbench/generators.hpp"
#include "genbench/graph.hpp"

using namespace genbench;

namespace {

MilpInstance is_instance(std::int64_t nodes)
{
  GenParams p;
  p.family = Family::IndependentSet;
  p.is_nodes = {nodes, nodes};
  p.is_edge_prob = {0.02, 0.02};
  p.seed = 17;
  return generate(p);
}

MilpInstance sc_instance(std::int64_t rows)
{
  GenParams p;
  p.family = Family::SetCover;
  p.sc_rows = {rows, rows};
  p.sc_cols = {2 * rows, 2 * rows};
  p.sc_density = {0.05, 0.05};
  p.seed = 23;
  return generate(p);
}

Execution mode(const benchmark::State& state) { return state.range(1) ? Execution::Parallel : Execution::Serial; }

void check(bool ok, const char* what)
{
  if (!ok) {
    std::cerr << "serial and parallel results differ: " << what << "\n";
    std::abort();
  }
}

void BM_TriangleCounts(benchmark::State& state)
{
  const BipartiteGraph g = to_bipartite(sc_instance(state.range(0)));
  ClusteringOptions serial;
  serial.execution = Execution::Serial;
  ClusteringOptions opts;
  opts.execution = mode(state);
  check(projection_triangle_counts(g, serial) == projection_triangle_counts(g, opts), "triangle counts");
  for (auto _ : state) benchmark::DoNotOptimize(projection_triangle_counts(g, opts));
  state.SetLabel(state.range(1) ? "openmp" : "serial");
}

void BM_SetFeatures(benchmark::State& state)
{
  std::vector<MilpInstance> set;
  for (int i = 0; i < 16; ++i) {
    GenParams p;
    p.family = Family::IndependentSet;
    p.is_nodes = {state.range(0), state.range(0)};
    p.is_edge_prob = {0.02, 0.02};
    p.seed = static_cast<std::uint64_t>(i);
    set.push_back(generate(p));
    set.back().name = "is_" + std::to_string(i);
  }
  check(extract_set_features(set, 5, Execution::Serial) == extract_set_features(set, 5, mode(state)), "features");
  for (auto _ : state) benchmark::DoNotOptimize(extract_set_features(set, 5, mode(state)));
  state.SetLabel(state.range(1) ? "openmp" : "serial");
}

void BM_InstanceFeatures(benchmark::State& state)
{
  const BipartiteGraph g = to_bipartite(is_instance(state.range(0)));
  check(extract_features(g, 3, Execution::Serial) == extract_features(g, 3, mode(state)), "instance features");
  for (auto _ : state) benchmark::DoNotOptimize(extract_features(g, 3, mode(state)));
  state.SetLabel(state.range(1) ? "openmp" : "serial");
}

}  // namespace

BENCHMARK(BM_TriangleCounts)->ArgsProduct({{200, 800}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SetFeatures)->ArgsProduct({{100, 300}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_InstanceFeatures)->ArgsProduct({{500, 1500}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
