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

#include "genbench/generators.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <omp.h>

#include "genbench/error.hpp"
#include "genbench/random.hpp"

namespace genbench {
namespace {

void check(const IntRange& r, const char* what, std::int64_t min_lo)
{
  if (r.lo > r.hi || r.lo < min_lo)
    throw Error(ErrorCode::InvalidConfig, std::string("invalid range for ") + what);
}

void check(const RealRange& r, const char* what, bool allow_zero)
{
  const bool lo_ok = allow_zero ? r.lo >= 0.0 : r.lo > 0.0;
  if (!(r.lo <= r.hi) || !lo_ok || r.hi > 1.0)
    throw Error(ErrorCode::InvalidConfig, std::string("invalid probability range for ") + what);
}

std::int64_t sample(Rng& rng, const IntRange& r) { return rng.uniform_int(r.lo, r.hi); }
double sample(Rng& rng, const RealRange& r) { return rng.uniform_real(r.lo, r.hi); }

// ceil() that ignores representation noise such as 0.05 * 200 = 10.000000000000002.
std::int64_t ceil_count(double x) { return static_cast<std::int64_t>(std::ceil(x - 1e-9)); }

std::string idx_name(char prefix, std::int64_t i) { return prefix + std::to_string(i); }

}  // namespace

std::string_view family_token(Family family)
{
  switch (family) {
    case Family::SetCover: return "sc";
    case Family::CombinatorialAuction: return "ca";
    case Family::FacilityLocation: return "cfl";
    case Family::IndependentSet: return "is";
  }
  return "?";
}

Family family_from_token(std::string_view token)
{
  if (token == "sc") return Family::SetCover;
  if (token == "ca") return Family::CombinatorialAuction;
  if (token == "cfl") return Family::FacilityLocation;
  if (token == "is") return Family::IndependentSet;
  throw Error(ErrorCode::InvalidConfig, "unknown problem family '" + std::string(token) + "'");
}

void validate(const GenParams& p)
{
  check(p.sc_rows, "sc rows", 1);
  check(p.sc_cols, "sc columns", 1);
  check(p.sc_density, "sc density", false);
  check(p.sc_cost, "sc cost", 0);
  check(p.ca_items, "ca items", 1);
  check(p.ca_bids, "ca bids", 1);
  check(p.ca_density, "ca density", false);
  check(p.ca_value, "ca value", 0);
  check(p.cfl_customers, "cfl customers", 1);
  check(p.cfl_variables, "cfl variables", 0);
  check(p.cfl_density, "cfl density", false);
  check(p.cfl_demand, "cfl demand", 1);
  check(p.cfl_transport, "cfl transport cost", 0);
  check(p.cfl_fixed, "cfl fixed cost", 0);
  if (!(p.cfl_ratio > 0.0 && p.cfl_ratio <= 1.0)) throw Error(ErrorCode::InvalidConfig, "cfl ratio must be in (0,1]");
  if (!(p.cfl_capacity_factor >= 1.0)) throw Error(ErrorCode::InvalidConfig, "cfl capacity factor must be >= 1");
  check(p.is_nodes, "is nodes", 1);
  // p = 0 is allowed so the empty-graph case can be generated on purpose.
  check(p.is_edge_prob, "is edge probability", true);
}

MilpInstance generate_set_cover(const GenParams& params, GenMeta* meta)
{
  validate(params);
  Rng rng(params.seed);
  const std::int64_t m = sample(rng, params.sc_rows);
  const std::int64_t n = sample(rng, params.sc_cols);
  const double density = sample(rng, params.sc_density);
  const std::int64_t per_col = std::clamp<std::int64_t>(ceil_count(density * static_cast<double>(m)), 1, m);

  MilpInstance inst;
  inst.sense = ObjectiveSense::Minimize;
  for (std::int64_t i = 0; i < m; ++i) inst.add_row(RowSense::GreaterEqual, 1.0, idx_name('c', i));
  std::vector<char> covered(static_cast<std::size_t>(m), 0);
  for (std::int64_t j = 0; j < n; ++j) {
    const auto col = inst.add_variable(VarType::Binary, static_cast<double>(sample(rng, params.sc_cost)), idx_name('x', j));
    for (const auto r : rng.sample_distinct(m, per_col)) {
      inst.add_entry(static_cast<std::int32_t>(r), col, 1.0);
      covered[static_cast<std::size_t>(r)] = 1;
    }
  }
  std::int64_t repaired = 0;
  for (std::int64_t i = 0; i < m; ++i) {
    if (covered[static_cast<std::size_t>(i)]) continue;
    inst.add_entry(static_cast<std::int32_t>(i), static_cast<std::int32_t>(rng.uniform_int(0, n - 1)), 1.0);
    ++repaired;
  }
  inst = canonicalize(std::move(inst));
  if (meta) {
    *meta = {{"family", "sc"},
             {"formulation", "set cover, rows >= 1, uniform column subsets"},
             {"rows", m},
             {"cols", n},
             {"density", density},
             {"rows_per_col", per_col},
             {"repaired_rows", repaired},
             {"cost_range", {params.sc_cost.lo, params.sc_cost.hi}}};
  }
  return inst;
}

MilpInstance generate_independent_set(const GenParams& params, GenMeta* meta)
{
  validate(params);
  Rng rng(params.seed);
  const std::int64_t nodes = sample(rng, params.is_nodes);
  const double p = sample(rng, params.is_edge_prob);
  std::vector<std::pair<std::int32_t, std::int32_t>> edges;
  int attempts = 0;
  for (;;) {
    ++attempts;
    edges.clear();
    for (std::int32_t u = 0; u < nodes; ++u)
      for (std::int32_t v = u + 1; v < nodes; ++v)
        if (rng.bernoulli(p)) edges.emplace_back(u, v);
    if (!edges.empty() || attempts > 10 || p == 0.0) break;
  }
  MilpInstance inst;
  inst.sense = ObjectiveSense::Maximize;
  for (std::int64_t j = 0; j < nodes; ++j) inst.add_variable(VarType::Binary, 1.0, idx_name('x', j));
  std::int64_t k = 0;
  for (const auto& [u, v] : edges) {
    const auto r = inst.add_row(RowSense::LessEqual, 1.0, idx_name('e', k++));
    inst.add_entry(r, u, 1.0);
    inst.add_entry(r, v, 1.0);
  }
  inst = canonicalize(std::move(inst));
  if (meta) {
    *meta = {{"family", "is"},
             {"formulation", "independent set, one edge inequality per edge"},
             {"nodes", nodes},
             {"edge_probability", p},
             {"edges", edges.size()},
             {"attempts", attempts}};
  }
  return inst;
}

MilpInstance generate_combinatorial_auction(const GenParams& params, GenMeta* meta)
{
  validate(params);
  Rng rng(params.seed);
  const std::int64_t items = sample(rng, params.ca_items);
  const std::int64_t bids = sample(rng, params.ca_bids);
  const double density = sample(rng, params.ca_density);
  const std::int64_t bundle =
      std::clamp<std::int64_t>(std::llround(density * static_cast<double>(items)), 1, items);

  std::vector<std::vector<std::int64_t>> contents(static_cast<std::size_t>(bids));
  std::vector<double> values(static_cast<std::size_t>(bids));
  for (std::int64_t b = 0; b < bids; ++b) {
    contents[b] = rng.sample_distinct(items, bundle);
    values[b] = static_cast<double>(sample(rng, params.ca_value));
  }
  MilpInstance inst;
  inst.sense = ObjectiveSense::Maximize;
  for (std::int64_t b = 0; b < bids; ++b) inst.add_variable(VarType::Binary, values[b], idx_name('b', b));
  std::vector<std::int32_t> row_of(static_cast<std::size_t>(items), -1);
  std::vector<std::vector<std::int32_t>> holders(static_cast<std::size_t>(items));
  for (std::int64_t b = 0; b < bids; ++b)
    for (auto it : contents[b]) holders[it].push_back(static_cast<std::int32_t>(b));
  std::int64_t dropped = 0;
  for (std::int64_t it = 0; it < items; ++it) {
    if (holders[it].empty()) {
      ++dropped;
      continue;
    }
    const auto r = inst.add_row(RowSense::LessEqual, 1.0, idx_name('i', it));
    for (auto b : holders[it]) inst.add_entry(r, b, 1.0);
  }
  inst = canonicalize(std::move(inst));
  if (meta) {
    *meta = {{"family", "ca"},
             {"formulation", "combinatorial auction, uniform item subsets, item rows <= 1"},
             {"items", items},
             {"bids", bids},
             {"density", density},
             {"bundle_size", bundle},
             {"dropped_items", dropped},
             {"value_range", {params.ca_value.lo, params.ca_value.hi}}};
  }
  return inst;
}

MilpInstance generate_cfl(const GenParams& params, GenMeta* meta)
{
  validate(params);
  Rng rng(params.seed);
  const std::int64_t customers = sample(rng, params.cfl_customers);
  const std::int64_t facilities =
      std::max<std::int64_t>(1, ceil_count(params.cfl_ratio * static_cast<double>(customers)));
  std::vector<std::int64_t> demand(static_cast<std::size_t>(customers));
  for (auto& d : demand) d = sample(rng, params.cfl_demand);
  const std::int64_t total_demand = std::accumulate(demand.begin(), demand.end(), std::int64_t{0});
  std::vector<std::int64_t> weight(static_cast<std::size_t>(facilities));
  for (auto& w : weight) w = rng.uniform_int(1, 10);
  const std::int64_t total_weight = std::accumulate(weight.begin(), weight.end(), std::int64_t{0});
  // integer capacities with sum >= factor * total demand
  const double target = params.cfl_capacity_factor * static_cast<double>(total_demand);
  std::vector<std::int64_t> capacity(static_cast<std::size_t>(facilities));
  for (std::size_t j = 0; j < capacity.size(); ++j)
    capacity[j] = static_cast<std::int64_t>(std::ceil(target * static_cast<double>(weight[j]) / static_cast<double>(total_weight)));
  std::vector<std::int64_t> fixed(static_cast<std::size_t>(facilities));
  for (auto& f : fixed) f = sample(rng, params.cfl_fixed);

  MilpInstance inst;
  inst.sense = ObjectiveSense::Minimize;
  // y_ij for customer i, facility j at column i*F + j, then x_j
  for (std::int64_t i = 0; i < customers; ++i)
    for (std::int64_t j = 0; j < facilities; ++j) {
      const auto col = inst.add_variable(VarType::Continuous, static_cast<double>(sample(rng, params.cfl_transport)),
                                         "y" + std::to_string(i) + "_" + std::to_string(j));
      inst.upper_bounds[col] = 1.0;
    }
  const auto x0 = static_cast<std::int32_t>(customers * facilities);
  for (std::int64_t j = 0; j < facilities; ++j)
    inst.add_variable(VarType::Binary, static_cast<double>(fixed[j]), idx_name('x', j));
  auto y = [&](std::int64_t i, std::int64_t j) { return static_cast<std::int32_t>(i * facilities + j); };
  for (std::int64_t i = 0; i < customers; ++i) {
    const auto r = inst.add_row(RowSense::Equal, 1.0, idx_name('d', i));
    for (std::int64_t j = 0; j < facilities; ++j) inst.add_entry(r, y(i, j), 1.0);
  }
  for (std::int64_t j = 0; j < facilities; ++j) {
    const auto r = inst.add_row(RowSense::LessEqual, 0.0, idx_name('s', j));
    for (std::int64_t i = 0; i < customers; ++i) inst.add_entry(r, y(i, j), static_cast<double>(demand[i]));
    inst.add_entry(r, x0 + static_cast<std::int32_t>(j), -static_cast<double>(capacity[j]));
  }
  for (std::int64_t i = 0; i < customers; ++i)
    for (std::int64_t j = 0; j < facilities; ++j) {
      const auto r = inst.add_row(RowSense::LessEqual, 0.0, "l" + std::to_string(i) + "_" + std::to_string(j));
      inst.add_entry(r, y(i, j), 1.0);
      inst.add_entry(r, x0 + static_cast<std::int32_t>(j), -1.0);
    }
  inst = canonicalize(std::move(inst));
  if (meta) {
    *meta = {{"family", "cfl"},
             {"formulation", "capacitated facility location, split assignment, linking rows"},
             {"customers", customers},
             {"facilities", facilities},
             {"total_demand", total_demand},
             {"total_capacity", std::accumulate(capacity.begin(), capacity.end(), std::int64_t{0})},
             {"ignored_parameters", {"variables", "density"}}};
  }
  return inst;
}

MilpInstance generate(const GenParams& params, GenMeta* meta)
{
  switch (params.family) {
    case Family::SetCover: return generate_set_cover(params, meta);
    case Family::CombinatorialAuction: return generate_combinatorial_auction(params, meta);
    case Family::FacilityLocation: return generate_cfl(params, meta);
    case Family::IndependentSet: return generate_independent_set(params, meta);
  }
  throw Error(ErrorCode::InvalidConfig, "unknown family");
}

std::string batch_instance_name(Family family, std::size_t index, std::size_t count)
{
  std::size_t width = 4;
  for (std::size_t c = count > 0 ? count - 1 : 0; c >= 10000; c /= 10) ++width;
  std::string digits = std::to_string(index);
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return std::string(family_token(family)) + "_" + digits;
}

BatchResult generate_batch(GenParams params, std::size_t count, std::uint64_t root_seed,
                           const std::filesystem::path& out_dir, int jobs)
{
  validate(params);
  std::filesystem::create_directories(out_dir);
  BatchResult result;
  result.files.resize(count);
  std::vector<GenMeta> metas(count);
  std::vector<std::exception_ptr> failures(count);
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic) num_threads(jobs > 0 ? jobs : omp_get_max_threads()) if (jobs != 1)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      GenParams p = params;
      p.seed = derive_seed(root_seed, static_cast<std::uint64_t>(i));
      GenMeta meta;
      MilpInstance inst = generate(p, &meta);
      inst.name = batch_instance_name(params.family, static_cast<std::size_t>(i), count);
      const auto path = out_dir / (inst.name + ".mps");
      write_mps_file(inst, path);
      GenMeta entry = {{"name", inst.name}, {"index", i}, {"seed", p.seed}};
      entry.update(meta);
      metas[i] = std::move(entry);
      result.files[i] = path;
    } catch (...) {
      failures[i] = std::current_exception();
    }
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);
  result.meta = {{"family", family_token(params.family)},
                 {"count", count},
                 {"root_seed", root_seed},
                 {"seed_rule", "derive_seed(root_seed, index)"},
                 {"instances", metas}};
  std::ofstream out(out_dir / "gen_meta.json", std::ios::binary);
  out << result.meta.dump(2) << '\n';
  if (!out) throw Error(ErrorCode::Io, "cannot write gen_meta.json");
  return result;
}

// ---------------------------------------------------------------------------
// Parameter JSON

namespace {

// Visits every field with its JSON key, in declaration order.
template <class P, class F>
void for_each_param(P& p, F&& f)
{
  f("sc_rows", p.sc_rows);
  f("sc_cols", p.sc_cols);
  f("sc_density", p.sc_density);
  f("sc_cost", p.sc_cost);
  f("ca_items", p.ca_items);
  f("ca_bids", p.ca_bids);
  f("ca_density", p.ca_density);
  f("ca_value", p.ca_value);
  f("cfl_customers", p.cfl_customers);
  f("cfl_ratio", p.cfl_ratio);
  f("cfl_variables", p.cfl_variables);
  f("cfl_density", p.cfl_density);
  f("cfl_demand", p.cfl_demand);
  f("cfl_transport", p.cfl_transport);
  f("cfl_fixed", p.cfl_fixed);
  f("cfl_capacity_factor", p.cfl_capacity_factor);
  f("is_nodes", p.is_nodes);
  f("is_edge_prob", p.is_edge_prob);
}

nlohmann::ordered_json param_value(const IntRange& r) { return {r.lo, r.hi}; }
nlohmann::ordered_json param_value(const RealRange& r) { return {r.lo, r.hi}; }
nlohmann::ordered_json param_value(double v) { return v; }

void read_param(const nlohmann::ordered_json& j, IntRange& r)
{
  r.lo = j.at(0).get<std::int64_t>();
  r.hi = j.at(1).get<std::int64_t>();
  if (j.size() != 2) throw std::invalid_argument("expected [lo, hi]");
}
void read_param(const nlohmann::ordered_json& j, RealRange& r)
{
  r.lo = j.at(0).get<double>();
  r.hi = j.at(1).get<double>();
  if (j.size() != 2) throw std::invalid_argument("expected [lo, hi]");
}
void read_param(const nlohmann::ordered_json& j, double& v) { v = j.get<double>(); }

}  // namespace

nlohmann::ordered_json to_json(const GenParams& params)
{
  nlohmann::ordered_json j;
  j["family"] = std::string(family_token(params.family));
  j["seed"] = params.seed;
  for_each_param(params, [&](const char* key, const auto& v) { j[key] = param_value(v); });
  return j;
}

GenParams gen_params_from_json(const nlohmann::ordered_json& j, GenParams base)
{
  if (!j.is_object()) throw Error(ErrorCode::InvalidConfig, "generator parameters must be an object");
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "family") {
        base.family = family_from_token(value.get<std::string>());
        continue;
      }
      if (key == "seed") {
        base.seed = value.get<std::uint64_t>();
        continue;
      }
      bool found = false;
      for_each_param(base, [&](const char* k, auto& field) {
        if (key == k) {
          read_param(value, field);
          found = true;
        }
      });
      if (!found) throw Error(ErrorCode::InvalidConfig, "unknown generator parameter '" + key + "'");
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::InvalidConfig, "generator parameter '" + key + "': " + e.what());
    } catch (const std::invalid_argument& e) {
      throw Error(ErrorCode::InvalidConfig, "generator parameter '" + key + "': " + e.what());
    }
  }
  return base;
}

}  // namespace genbench
