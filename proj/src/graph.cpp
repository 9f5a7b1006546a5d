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

#include "genbench/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <exception>
#include <map>
#include <numeric>

#include "genbench/error.hpp"
#include "genbench/random.hpp"

namespace genbench {
namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) noexcept
{
  // splitmix64 finalizer over the combined word
  std::uint64_t z = h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t bits_of(double x) noexcept
{
  if (x == 0.0) x = 0.0;  // fold -0.0
  std::uint64_t b;
  std::memcpy(&b, &x, sizeof b);
  return b;
}

struct Moments {
  double mean = 0.0;
  double std = 0.0;
};

template <class Range, class F>
Moments moments(const Range& values, F&& get)
{
  Moments out;
  const std::size_t count = std::size(values);
  if (count == 0) return out;
  double sum = 0.0;
  for (const auto& v : values) sum += get(v);
  out.mean = sum / static_cast<double>(count);
  double sq = 0.0;
  for (const auto& v : values) {
    const double d = get(v) - out.mean;
    sq += d * d;
  }
  out.std = std::sqrt(sq / static_cast<double>(count));
  return out;
}

// Variable projection with either a dense bitset or sorted adjacency lists.
class Projection {
 public:
  Projection(const BipartiteGraph& g, const ClusteringOptions& opt)
      : n_(g.num_variables()), dense_(g.num_variables() <= opt.bitset_max_vars)
  {
    if (dense_) {
      words_ = (n_ + 63) / 64;
      bits_.assign(n_ * words_, 0);
    } else {
      lists_.resize(n_);
    }
    for (std::size_t i = 0; i < g.num_constraints(); ++i) {
      const std::int32_t* cols = g.row_cols.data() + g.row_offsets[i];
      const std::size_t d = g.row_degree(i);
      if (d < 2) continue;
      if (d <= opt.dense_row_threshold) {
        for (std::size_t a = 0; a < d; ++a)
          for (std::size_t b = a + 1; b < d; ++b) add(cols[a], cols[b]);
      } else {
        Rng rng(derive_seed(opt.seed, static_cast<std::uint64_t>(i)));
        const auto hi = static_cast<std::int64_t>(d) - 1;
        for (std::size_t k = 0; k < opt.sampled_pairs; ++k) {
          const auto a = rng.uniform_int(0, hi);
          auto b = rng.uniform_int(0, hi - 1);
          if (b >= a) ++b;
          add(cols[a], cols[b]);
        }
      }
    }
    if (!dense_) {
      for (auto& l : lists_) {
        std::sort(l.begin(), l.end());
        l.erase(std::unique(l.begin(), l.end()), l.end());
      }
    }
    degree_.resize(n_);
    for (std::size_t u = 0; u < n_; ++u) degree_[u] = dense_ ? popcount_row(u) : lists_[u].size();
  }

  std::size_t size() const noexcept { return n_; }
  std::size_t degree(std::size_t u) const noexcept { return degree_[u]; }

  std::uint64_t triangles_at(std::size_t u) const
  {
    if (degree_[u] < 2) return 0;
    std::uint64_t twice = 0;
    if (dense_) {
      const std::uint64_t* ru = row(u);
      for (std::size_t w = 0; w < words_; ++w) {
        std::uint64_t word = ru[w];
        while (word) {
          const std::size_t v = w * 64 + static_cast<std::size_t>(std::countr_zero(word));
          word &= word - 1;
          const std::uint64_t* rv = row(v);
          for (std::size_t k = 0; k < words_; ++k) twice += static_cast<std::uint64_t>(std::popcount(ru[k] & rv[k]));
        }
      }
    } else {
      const auto& nu = lists_[u];
      for (const std::int32_t v : nu) {
        const auto& nv = lists_[v];
        auto a = nu.begin();
        auto b = nv.begin();
        while (a != nu.end() && b != nv.end()) {
          if (*a < *b) {
            ++a;
          } else if (*b < *a) {
            ++b;
          } else {
            ++twice;
            ++a;
            ++b;
          }
        }
      }
    }
    return twice / 2;
  }

 private:
  void add(std::int32_t a, std::int32_t b)
  {
    if (a == b) return;
    if (dense_) {
      bits_[static_cast<std::size_t>(a) * words_ + static_cast<std::size_t>(b) / 64] |= 1ULL << (b % 64);
      bits_[static_cast<std::size_t>(b) * words_ + static_cast<std::size_t>(a) / 64] |= 1ULL << (a % 64);
    } else {
      lists_[a].push_back(b);
      lists_[b].push_back(a);
    }
  }
  const std::uint64_t* row(std::size_t u) const { return bits_.data() + u * words_; }
  std::size_t popcount_row(std::size_t u) const
  {
    std::size_t c = 0;
    for (std::size_t w = 0; w < words_; ++w) c += static_cast<std::size_t>(std::popcount(row(u)[w]));
    return c;
  }

  std::size_t n_;
  bool dense_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<std::vector<std::int32_t>> lists_;
  std::vector<std::size_t> degree_;
};

std::vector<std::uint64_t> count_triangles(const Projection& p, Execution execution)
{
  const auto n = static_cast<std::int64_t>(p.size());
  std::vector<std::uint64_t> t(p.size(), 0);
  if (execution == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 32)
    for (std::int64_t u = 0; u < n; ++u) t[u] = p.triangles_at(static_cast<std::size_t>(u));
  } else {
    for (std::int64_t u = 0; u < n; ++u) t[u] = p.triangles_at(static_cast<std::size_t>(u));
  }
  return t;
}

// ---- Louvain ------------------------------------------------------------

// Symmetric weighted graph; self-loop weight kept apart from the CSR lists.
struct WeightedGraph {
  std::size_t n = 0;
  std::vector<std::size_t> offsets;
  std::vector<std::int32_t> nbrs;
  std::vector<double> weights;
  std::vector<double> self;    // A_ii
  std::vector<double> degree;  // sum_j A_ij including A_ii
};

// Node order independent of input labels: Weisfeiler-Lehman style colour
// refinement, salted with the seed; remaining ties fall back to the index.
std::vector<std::int32_t> canonical_rank(const BipartiteGraph& g, std::uint64_t seed)
{
  const std::size_t m = g.num_constraints();
  const std::size_t n = g.num_variables();
  const std::size_t total = m + n;
  std::vector<std::uint64_t> color(total);
  for (std::size_t i = 0; i < m; ++i) color[i] = mix(mix(1, g.row_degree(i)), bits_of(g.constraint_features[i]));
  for (std::size_t j = 0; j < n; ++j) {
    std::uint64_t h = mix(2, g.col_degree(j));
    for (double f : g.variable_features[j]) h = mix(h, bits_of(f));
    color[m + j] = h;
  }
  std::vector<std::uint64_t> next(total);
  std::vector<std::uint64_t> scratch;
  for (int round = 0; round < 4; ++round) {
    for (std::size_t i = 0; i < m; ++i) {
      scratch.clear();
      for (std::size_t k = g.row_offsets[i]; k < g.row_offsets[i + 1]; ++k)
        scratch.push_back(mix(color[m + g.row_cols[k]], bits_of(g.row_values[k])));
      std::sort(scratch.begin(), scratch.end());
      std::uint64_t h = color[i];
      for (auto s : scratch) h = mix(h, s);
      next[i] = h;
    }
    for (std::size_t j = 0; j < n; ++j) {
      scratch.clear();
      for (std::size_t k = g.col_offsets[j]; k < g.col_offsets[j + 1]; ++k)
        scratch.push_back(mix(color[g.col_rows[k]], bits_of(g.col_values[k])));
      std::sort(scratch.begin(), scratch.end());
      std::uint64_t h = color[m + j];
      for (auto s : scratch) h = mix(h, s);
      next[m + j] = h;
    }
    color.swap(next);
  }
  std::vector<std::int32_t> order(total);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::uint64_t> key(total);
  for (std::size_t u = 0; u < total; ++u) key[u] = mix(color[u], seed);
  std::sort(order.begin(), order.end(), [&](std::int32_t a, std::int32_t b) {
    return key[a] != key[b] ? key[a] < key[b] : a < b;
  });
  std::vector<std::int32_t> rank(total);
  for (std::size_t r = 0; r < total; ++r) rank[order[r]] = static_cast<std::int32_t>(r);
  return rank;
}

WeightedGraph relabeled_graph(const BipartiteGraph& g, const std::vector<std::int32_t>& rank)
{
  const std::size_t m = g.num_constraints();
  const std::size_t total = m + g.num_variables();
  std::vector<std::vector<std::int32_t>> adj(total);
  for (const auto& e : g.edges) {
    const std::int32_t a = rank[e.row];
    const std::int32_t b = rank[m + e.col];
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  WeightedGraph w;
  w.n = total;
  w.offsets.assign(total + 1, 0);
  w.self.assign(total, 0.0);
  w.degree.assign(total, 0.0);
  for (std::size_t u = 0; u < total; ++u) {
    std::sort(adj[u].begin(), adj[u].end());
    w.offsets[u + 1] = w.offsets[u] + adj[u].size();
    for (auto v : adj[u]) {
      w.nbrs.push_back(v);
      w.weights.push_back(1.0);
    }
    w.degree[u] = static_cast<double>(adj[u].size());
  }
  return w;
}

// One level of local moving. Returns true if any node changed community.
bool local_moving(const WeightedGraph& g, double m2, std::vector<std::int32_t>& comm)
{
  std::vector<double> tot(g.n, 0.0);
  for (std::size_t u = 0; u < g.n; ++u) tot[comm[u]] += g.degree[u];
  std::vector<double> link(g.n, 0.0);
  std::vector<std::int32_t> touched;
  bool any = false;
  for (int pass = 0; pass < 100; ++pass) {
    bool moved = false;
    for (std::size_t u = 0; u < g.n; ++u) {
      const std::int32_t old = comm[u];
      const double k = g.degree[u];
      tot[old] -= k;
      touched.clear();
      for (std::size_t e = g.offsets[u]; e < g.offsets[u + 1]; ++e) {
        const std::int32_t c = comm[g.nbrs[e]];
        if (link[c] == 0.0) touched.push_back(c);
        link[c] += g.weights[e];
      }
      auto gain = [&](std::int32_t c) { return link[c] - tot[c] * k / m2; };
      const double stay = gain(old);
      std::int32_t best = old;
      double best_gain = stay;
      std::sort(touched.begin(), touched.end());
      for (const std::int32_t c : touched) {
        const double gc = gain(c);
        if (gc > best_gain || (gc == best_gain && c < best)) {
          best = c;
          best_gain = gc;
        }
      }
      if (best != old && !(best_gain > stay + 1e-12)) best = old;
      for (const std::int32_t c : touched) link[c] = 0.0;
      tot[best] += k;
      if (best != old) {
        comm[u] = best;
        moved = true;
        any = true;
      }
    }
    if (!moved) break;
  }
  return any;
}

WeightedGraph aggregate(const WeightedGraph& g, std::vector<std::int32_t>& comm)
{
  // Renumber communities by first appearance in node order.
  std::vector<std::int32_t> remap(g.n, -1);
  std::int32_t next = 0;
  for (std::size_t u = 0; u < g.n; ++u) {
    if (remap[comm[u]] < 0) remap[comm[u]] = next++;
    comm[u] = remap[comm[u]];
  }
  const auto k = static_cast<std::size_t>(next);
  std::vector<std::map<std::int32_t, double>> acc(k);
  WeightedGraph out;
  out.n = k;
  out.self.assign(k, 0.0);
  out.degree.assign(k, 0.0);
  for (std::size_t u = 0; u < g.n; ++u) {
    const std::int32_t cu = comm[u];
    out.self[cu] += g.self[u];
    out.degree[cu] += g.degree[u];
    for (std::size_t e = g.offsets[u]; e < g.offsets[u + 1]; ++e) {
      const std::int32_t cv = comm[g.nbrs[e]];
      if (cv == cu) {
        out.self[cu] += g.weights[e];
      } else {
        acc[cu][cv] += g.weights[e];
      }
    }
  }
  out.offsets.assign(k + 1, 0);
  for (std::size_t c = 0; c < k; ++c) {
    out.offsets[c + 1] = out.offsets[c] + acc[c].size();
    for (const auto& [d, w] : acc[c]) {
      out.nbrs.push_back(d);
      out.weights.push_back(w);
    }
  }
  return out;
}

}  // namespace

BipartiteGraph to_bipartite(const MilpInstance& instance)
{
  const MilpInstance inst = canonicalize(instance);
  const std::size_t m = inst.num_rows();
  const std::size_t n = inst.num_cols();
  BipartiteGraph g;
  g.constraint_features = inst.rhs;
  g.edges = inst.entries;

  g.row_offsets.assign(m + 1, 0);
  g.col_offsets.assign(n + 1, 0);
  for (const auto& e : g.edges) {
    ++g.row_offsets[e.row + 1];
    ++g.col_offsets[e.col + 1];
  }
  for (std::size_t i = 0; i < m; ++i) g.row_offsets[i + 1] += g.row_offsets[i];
  for (std::size_t j = 0; j < n; ++j) g.col_offsets[j + 1] += g.col_offsets[j];
  g.row_cols.resize(g.edges.size());
  g.row_values.resize(g.edges.size());
  g.col_rows.resize(g.edges.size());
  g.col_values.resize(g.edges.size());
  std::vector<std::size_t> rpos(g.row_offsets.begin(), g.row_offsets.end() - 1);
  std::vector<std::size_t> cpos(g.col_offsets.begin(), g.col_offsets.end() - 1);
  for (const auto& e : g.edges) {
    g.row_cols[rpos[e.row]] = e.col;
    g.row_values[rpos[e.row]++] = e.value;
    g.col_rows[cpos[e.col]] = e.row;
    g.col_values[cpos[e.col]++] = e.value;
  }

  g.variable_features.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    auto& f = g.variable_features[j];
    const double lo = inst.lower_bounds[j];
    const double hi = inst.upper_bounds[j];
    f[kVarObjective] = inst.objective[j];
    f[kVarIsBinary] = inst.var_types[j] == VarType::Binary ? 1.0 : 0.0;
    f[kVarIsInteger] = inst.var_types[j] == VarType::Integer ? 1.0 : 0.0;
    f[kVarIsContinuous] = inst.var_types[j] == VarType::Continuous ? 1.0 : 0.0;
    f[kVarHasLower] = std::isfinite(lo) ? 1.0 : 0.0;
    f[kVarLower] = std::isfinite(lo) ? lo : 0.0;
    f[kVarHasUpper] = std::isfinite(hi) ? 1.0 : 0.0;
    f[kVarUpper] = std::isfinite(hi) ? hi : 0.0;
    f[kVarNormalizedDegree] = m > 0 ? static_cast<double>(g.col_degree(j)) / static_cast<double>(m) : 0.0;
  }
  return g;
}

std::array<double, StructuralFeatureVector::kSize> StructuralFeatureVector::values() const
{
  return {coef_dens, var_degree_mean, var_degree_std, cons_degree_mean, cons_degree_std, lhs_mean,
          lhs_std,   rhs_mean,        rhs_std,        clustering,       modularity};
}

StructuralFeatureVector StructuralFeatureVector::from_values(const std::array<double, kSize>& v)
{
  StructuralFeatureVector f;
  f.coef_dens = v[0];
  f.var_degree_mean = v[1];
  f.var_degree_std = v[2];
  f.cons_degree_mean = v[3];
  f.cons_degree_std = v[4];
  f.lhs_mean = v[5];
  f.lhs_std = v[6];
  f.rhs_mean = v[7];
  f.rhs_std = v[8];
  f.clustering = v[9];
  f.modularity = v[10];
  return f;
}

std::vector<std::uint64_t> projection_triangle_counts(const BipartiteGraph& graph, const ClusteringOptions& options)
{
  return count_triangles(Projection(graph, options), options.execution);
}

double variable_projection_clustering(const BipartiteGraph& graph, const ClusteringOptions& options)
{
  const std::size_t n = graph.num_variables();
  if (n == 0) return 0.0;
  const Projection p(graph, options);
  const auto tri = count_triangles(p, options.execution);
  double sum = 0.0;
  for (std::size_t u = 0; u < n; ++u) {
    const auto d = static_cast<double>(p.degree(u));
    if (p.degree(u) >= 2) sum += 2.0 * static_cast<double>(tri[u]) / (d * (d - 1.0));
  }
  return sum / static_cast<double>(n);
}

double modularity_of_partition(const BipartiteGraph& graph, const std::vector<std::int32_t>& community)
{
  const std::size_t m = graph.num_constraints();
  if (graph.num_edges() == 0) throw Error(ErrorCode::NoEdges, "modularity of a graph without edges");
  if (community.size() != m + graph.num_variables())
    throw Error(ErrorCode::InvalidConfig, "partition size does not match node count");
  std::map<std::int32_t, std::pair<double, double>> per;  // label -> (internal edges, degree sum)
  for (const auto& e : graph.edges) {
    const std::int32_t a = community[e.row];
    const std::int32_t b = community[m + e.col];
    per[a].second += 1.0;
    per[b].second += 1.0;
    if (a == b) per[a].first += 1.0;
  }
  const auto edges = static_cast<double>(graph.num_edges());
  double q = 0.0;
  for (const auto& [label, v] : per) {
    const double frac = v.second / (2.0 * edges);
    q += v.first / edges - frac * frac;
  }
  return q;
}

std::vector<std::int32_t> louvain_partition(const BipartiteGraph& graph, std::uint64_t seed)
{
  if (graph.num_edges() == 0) throw Error(ErrorCode::NoEdges, "modularity of a graph without edges");
  const auto rank = canonical_rank(graph, seed);
  WeightedGraph level = relabeled_graph(graph, rank);
  const double m2 = 2.0 * static_cast<double>(graph.num_edges());
  const std::size_t total = level.n;
  // membership[r] = community of canonical node r at the current level
  std::vector<std::int32_t> membership(total);
  std::iota(membership.begin(), membership.end(), 0);
  for (int depth = 0; depth < 64; ++depth) {
    std::vector<std::int32_t> comm(level.n);
    std::iota(comm.begin(), comm.end(), 0);
    if (!local_moving(level, m2, comm)) break;
    WeightedGraph next = aggregate(level, comm);
    for (auto& c : membership) c = comm[c];
    if (next.n == level.n) break;
    level = std::move(next);
  }
  std::vector<std::int32_t> out(total);
  for (std::size_t u = 0; u < total; ++u) out[u] = membership[rank[u]];
  return out;
}

double graph_modularity(const BipartiteGraph& graph, std::uint64_t seed)
{
  return modularity_of_partition(graph, louvain_partition(graph, seed));
}

StructuralFeatureVector extract_features(const BipartiteGraph& graph, std::uint64_t seed, Execution execution)
{
  const std::size_t m = graph.num_constraints();
  const std::size_t n = graph.num_variables();
  if (m == 0 || n == 0) throw Error(ErrorCode::EmptyGraph, "graph has no constraints or no variables");
  StructuralFeatureVector f;
  f.coef_dens = static_cast<double>(graph.num_edges()) / (static_cast<double>(m) * static_cast<double>(n));

  std::vector<double> deg(n);
  for (std::size_t j = 0; j < n; ++j) deg[j] = static_cast<double>(graph.col_degree(j));
  auto ident = [](double x) { return x; };
  auto mv = moments(deg, ident);
  f.var_degree_mean = mv.mean;
  f.var_degree_std = mv.std;

  deg.resize(m);
  for (std::size_t i = 0; i < m; ++i) deg[i] = static_cast<double>(graph.row_degree(i));
  auto mc = moments(deg, ident);
  f.cons_degree_mean = mc.mean;
  f.cons_degree_std = mc.std;

  auto ml = moments(graph.edges, [](const MatrixEntry& e) { return e.value; });
  f.lhs_mean = ml.mean;
  f.lhs_std = ml.std;
  auto mr = moments(graph.constraint_features, ident);
  f.rhs_mean = mr.mean;
  f.rhs_std = mr.std;

  ClusteringOptions copt;
  copt.seed = derive_seed(seed, "clustering");
  copt.execution = execution;
  f.clustering = variable_projection_clustering(graph, copt);
  f.modularity = graph.num_edges() == 0 ? 0.0 : graph_modularity(graph, derive_seed(seed, "modularity"));
  return f;
}

std::vector<StructuralFeatureVector> extract_set_features(const std::vector<MilpInstance>& instances,
                                                          std::uint64_t root_seed, Execution execution)
{
  std::vector<StructuralFeatureVector> out(instances.size());
  const auto count = static_cast<std::int64_t>(instances.size());
  auto one = [&](std::int64_t i) {
    out[i] = extract_features(to_bipartite(instances[i]), derive_seed(root_seed, instances[i].name), Execution::Serial);
  };
  if (execution == Execution::Parallel) {
    // Errors cannot leave an OpenMP region; rethrow the lowest-index one.
    std::vector<std::exception_ptr> failures(instances.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < count; ++i) {
      try {
        one(i);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
    for (const auto& f : failures)
      if (f) std::rethrow_exception(f);
  } else {
    for (std::int64_t i = 0; i < count; ++i) one(i);
  }
  return out;
}

}  // namespace genbench
