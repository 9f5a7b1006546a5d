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
#include <fstream>
#include <numeric>
#include <sstream>

#include "genbench/error.hpp"
#include "genbench/pipeline.hpp"
#include "genbench/random.hpp"

namespace genbench {

namespace fs = std::filesystem;

namespace {

bool has_cut_stats(const SolverInternalFeatures& f)
{
  const auto& m = f.diagnostics.missing_fields;
  return std::find(m.begin(), m.end(), "cut_statistics") == m.end();
}

ScalarComparison compare_scalar(std::vector<double> a, std::vector<double> b, std::size_t excluded_a,
                                std::size_t excluded_b)
{
  ScalarComparison c;
  c.w1 = wasserstein1(a, b);
  c.a = summarize(a);
  c.b = summarize(b);
  c.excluded_a = excluded_a;
  c.excluded_b = excluded_b;
  c.samples_a = std::move(a);
  c.samples_b = std::move(b);
  return c;
}

ScalarComparison compare_root_gaps(const std::vector<SolverInternalFeatures>& a,
                                   const std::vector<SolverInternalFeatures>& b)
{
  std::vector<double> ga, gb;
  for (const auto& f : a)
    if (f.root_gap_percent) ga.push_back(*f.root_gap_percent);
  for (const auto& f : b)
    if (f.root_gap_percent) gb.push_back(*f.root_gap_percent);
  if (ga.empty() || gb.empty()) throw Error(ErrorCode::EmptySample, "no usable root gaps on one side");
  return compare_scalar(std::move(ga), std::move(gb), a.size() - ga.size(), b.size() - gb.size());
}

ScalarComparison compare_heuristics(const std::vector<SolverInternalFeatures>& a,
                                    const std::vector<SolverInternalFeatures>& b)
{
  std::vector<double> ha, hb;
  for (const auto& f : a) ha.push_back(static_cast<double>(f.heuristic_success_count));
  for (const auto& f : b) hb.push_back(static_cast<double>(f.heuristic_success_count));
  return compare_scalar(std::move(ha), std::move(hb), 0, 0);
}

std::optional<CutBlock> compare_cuts(const std::vector<SolverInternalFeatures>& a,
                                     const std::vector<SolverInternalFeatures>& b, int k)
{
  std::vector<CutVector> ca, cb;
  for (const auto& f : a)
    if (has_cut_stats(f)) ca.push_back(f.cut_vector);
  for (const auto& f : b)
    if (has_cut_stats(f)) cb.push_back(f.cut_vector);
  if (ca.empty() || cb.empty()) return std::nullopt;
  const CutComparison cmp = compare_cut_vectors(ca, cb, k);
  CutBlock block;
  block.w1 = cmp.w1;
  block.explained_ratio = cmp.explained_ratio;
  block.size_a = cmp.size_a;
  block.size_b = cmp.size_b;
  block.zero_vectors_a = cmp.zero_vectors_a;
  block.zero_vectors_b = cmp.zero_vectors_b;
  block.excluded_a = a.size() - ca.size();
  block.excluded_b = b.size() - cb.size();
  return block;
}

}  // namespace

InternalFeatureBlock compare_internal_features(const std::vector<SolverInternalFeatures>& a,
                                               const std::vector<SolverInternalFeatures>& b, int pca_k)
{
  if (a.empty() || b.empty()) throw Error(ErrorCode::EmptySample, "internal features: a set has no parsed logs");
  InternalFeatureBlock block;
  block.root_gap = compare_root_gaps(a, b);
  block.heuristics = compare_heuristics(a, b);
  block.cuts = compare_cuts(a, b, pca_k);
  for (const auto* set : {&a, &b})
    for (const auto& f : *set)
      for (const auto& [name, count] : f.diagnostics.unmapped_cuts) block.unmapped_cuts[name] += count;
  return block;
}

SplitHalfReport compare_halves(const std::vector<SolverInternalFeatures>& a,
                               const std::vector<SolverInternalFeatures>& b, int pca_k)
{
  if (a.empty() || b.empty()) throw Error(ErrorCode::TooFewRecords, "split-half: a half is empty");
  SplitHalfReport r;
  r.size_a = a.size();
  r.size_b = b.size();
  try {
    r.root_gap = compare_root_gaps(a, b);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::EmptySample) throw;
    throw Error(ErrorCode::TooFewRecords, "split-half: a half has no usable root gap");
  }
  r.heuristics = compare_heuristics(a, b);
  r.cuts = compare_cuts(a, b, pca_k);
  return r;
}

SplitHalfReport split_half(const std::vector<SolverInternalFeatures>& features, std::uint64_t seed, int pca_k)
{
  const auto usable = std::count_if(features.begin(), features.end(),
                                    [](const SolverInternalFeatures& f) { return f.root_gap_percent.has_value(); });
  if (usable < 4)
    throw Error(ErrorCode::TooFewRecords,
                "split-half needs at least 4 records with a root gap, got " + std::to_string(usable));

  // Order by name first so the partition depends only on the seed and the
  // instance names, not on the order the caller collected the records in.
  std::vector<std::size_t> order(features.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return features[i].instance < features[j].instance; });
  Rng rng(derive_seed(seed, "split-half"));
  rng.shuffle(order);

  const std::size_t half = (features.size() + 1) / 2;
  std::vector<SolverInternalFeatures> a, b;
  for (std::size_t i = 0; i < order.size(); ++i) (i < half ? a : b).push_back(features[order[i]]);
  SplitHalfReport r = compare_halves(a, b, pca_k);
  r.seed = seed;
  return r;
}

std::vector<SolverInternalFeatures> features_from_records(SolverId solver, const std::vector<SolveRecord>& records,
                                                          const fs::path& run_dir, std::size_t* parse_errors)
{
  std::vector<SolverInternalFeatures> out;
  std::size_t errors = 0;
  for (const auto& r : records) {
    fs::path log = r.log_path;
    if (log.is_relative()) log = run_dir / log;
    std::ifstream in(log, std::ios::binary);
    if (!in) {
      ++errors;
      continue;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      SolverInternalFeatures f = parse_log(solver, ss.str());
      f.instance = r.instance;
      out.push_back(std::move(f));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::UnrecognizedLog) throw;
      ++errors;
    }
  }
  if (parse_errors) *parse_errors = errors;
  return out;
}

}  // namespace genbench
