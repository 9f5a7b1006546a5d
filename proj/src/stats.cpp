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

#include "genbench/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "genbench/error.hpp"

namespace genbench {
namespace {

void check_sample(std::span<const double> s, const char* which)
{
  if (s.empty()) throw Error(ErrorCode::EmptySample, std::string("sample ") + which + " is empty");
  for (double v : s)
    if (!std::isfinite(v)) throw Error(ErrorCode::EmptySample, std::string("sample ") + which + " has a non-finite value");
}

std::vector<double> histogram(std::span<const double> s, double lo, double hi, int bins)
{
  std::vector<double> h(static_cast<std::size_t>(bins), 0.0);
  const double width = hi - lo;
  for (double v : s) {
    auto idx = static_cast<std::int64_t>(std::floor((v - lo) / width * bins));
    idx = std::clamp<std::int64_t>(idx, 0, bins - 1);
    h[static_cast<std::size_t>(idx)] += 1.0;
  }
  for (double& x : h) x /= static_cast<double>(s.size());
  return h;
}

}  // namespace

double jensen_shannon(std::span<const double> p, std::span<const double> q)
{
  double js = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double m = 0.5 * (p[i] + q[i]);
    if (p[i] > 0.0) js += 0.5 * p[i] * std::log(p[i] / m);
    if (q[i] > 0.0) js += 0.5 * q[i] * std::log(q[i] / m);
  }
  return std::max(js, 0.0);
}

double jsd_similarity(std::span<const double> a, std::span<const double> b, int bins)
{
  check_sample(a, "A");
  check_sample(b, "B");
  if (bins < 2) throw Error(ErrorCode::InvalidBins, "bin count must be at least 2");
  const auto [amin, amax] = std::minmax_element(a.begin(), a.end());
  const auto [bmin, bmax] = std::minmax_element(b.begin(), b.end());
  const double lo = std::min(*amin, *bmin);
  const double hi = std::max(*amax, *bmax);
  if (!(hi > lo)) return 1.0;  // both samples sit on one point
  const auto p = histogram(a, lo, hi, bins);
  const auto q = histogram(b, lo, hi, bins);
  const double score = 1.0 - jensen_shannon(p, q) / std::numbers::ln2;
  return std::clamp(score, 0.0, 1.0);
}

SimilarityReport structural_similarity(const std::vector<StructuralFeatureVector>& a,
                                       const std::vector<StructuralFeatureVector>& b, int bins)
{
  if (a.empty() || b.empty()) throw Error(ErrorCode::EmptySample, "feature set is empty");
  SimilarityReport r;
  r.bin_count = bins;
  r.size_a = a.size();
  r.size_b = b.size();
  std::vector<double> ca(a.size()), cb(b.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < StructuralFeatureVector::kSize; ++k) {
    for (std::size_t i = 0; i < a.size(); ++i) ca[i] = a[i].values()[k];
    for (std::size_t i = 0; i < b.size(); ++i) cb[i] = b[i].values()[k];
    const double s = jsd_similarity(ca, cb, bins);
    r.per_feature.emplace_back(std::string(StructuralFeatureVector::kNames[k]), s);
    sum += s;
  }
  r.overall = sum / static_cast<double>(StructuralFeatureVector::kSize);
  return r;
}

double wasserstein1(std::span<const double> a, std::span<const double> b)
{
  check_sample(a, "A");
  check_sample(b, "B");
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  // Quantile functions are step functions with breaks at i/na and j/nb;
  // positions are tracked in units of 1/(na*nb) so breakpoints compare exactly.
  const auto na = static_cast<std::uint64_t>(x.size());
  const auto nb = static_cast<std::uint64_t>(y.size());
  std::uint64_t i = 0, j = 0, pos = 0;
  long double total = 0.0L;
  while (i < na && j < nb) {
    const std::uint64_t next_a = (i + 1) * nb;
    const std::uint64_t next_b = (j + 1) * na;
    const std::uint64_t next = std::min(next_a, next_b);
    total += static_cast<long double>(next - pos) * std::fabs(static_cast<long double>(x[i]) - y[j]);
    pos = next;
    if (next_a == next) ++i;
    if (next_b == next) ++j;
  }
  return static_cast<double>(total / static_cast<long double>(na * nb));
}

Eigen::MatrixXd PcaModel::standardize(const Eigen::MatrixXd& x) const
{
  Eigen::MatrixXd z = x.rowwise() - mean.transpose();
  for (Eigen::Index c = 0; c < z.cols(); ++c) {
    if (constant_column[static_cast<std::size_t>(c)]) {
      z.col(c).setZero();
    } else {
      z.col(c) /= scale(c);
    }
  }
  return z;
}

Eigen::MatrixXd PcaModel::transform(const Eigen::MatrixXd& x) const
{
  return standardize(x) * components.transpose();
}

Eigen::MatrixXd PcaModel::reconstruct(const Eigen::MatrixXd& scores) const
{
  return scores * components;
}

PcaModel pca_fit(const Eigen::MatrixXd& x, int k)
{
  const Eigen::Index n = x.rows();
  const Eigen::Index d = x.cols();
  if (n < 2) throw Error(ErrorCode::TooFewRows, "PCA needs at least two rows");
  if (k < 1 || k > d) throw Error(ErrorCode::InvalidK, "component count out of range");
  PcaModel model;
  model.mean = x.colwise().mean().transpose();
  model.scale = Eigen::VectorXd::Ones(d);
  model.constant_column.assign(static_cast<std::size_t>(d), false);
  for (Eigen::Index c = 0; c < d; ++c) {
    const double var = (x.col(c).array() - model.mean(c)).square().mean();
    const double sd = std::sqrt(var);
    const double magnitude = std::max(1.0, x.col(c).cwiseAbs().maxCoeff());
    if (!(sd > 1e-12 * magnitude)) {
      model.constant_column[static_cast<std::size_t>(c)] = true;
    } else {
      model.scale(c) = sd;
    }
  }
  const Eigen::MatrixXd z = model.standardize(x);
  const Eigen::MatrixXd cov = (z.transpose() * z) / static_cast<double>(n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  const Eigen::VectorXd& evals = solver.eigenvalues();  // ascending
  const Eigen::MatrixXd& evecs = solver.eigenvectors();
  const double trace = std::max(0.0, evals.cwiseMax(0.0).sum());
  model.components.resize(k, d);
  model.eigenvalues.resize(k);
  model.explained_ratio.resize(k);
  for (int r = 0; r < k; ++r) {
    const Eigen::Index src = d - 1 - r;
    Eigen::VectorXd v = evecs.col(src);
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index c = 0; c < d; ++c) {
      // ties within rounding go to the lowest index
      if (std::abs(v(c)) > best + 1e-12) {
        best = std::abs(v(c));
        arg = c;
      }
    }
    if (v(arg) < 0) v = -v;
    model.components.row(r) = v.transpose();
    const double lambda = std::max(0.0, evals(src));
    model.eigenvalues(r) = lambda;
    model.explained_ratio(r) = trace > 0.0 ? lambda / trace : 0.0;
  }
  return model;
}

Eigen::MatrixXd cut_proportions(const std::vector<CutVector>& cuts)
{
  Eigen::MatrixXd m(static_cast<Eigen::Index>(cuts.size()), static_cast<Eigen::Index>(kNumCutSlots));
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const double total = static_cast<double>(std::accumulate(cuts[i].begin(), cuts[i].end(), std::int64_t{0}));
    for (std::size_t s = 0; s < kNumCutSlots; ++s)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(s)) =
          total > 0 ? static_cast<double>(cuts[i][s]) / total : 0.0;
  }
  return m;
}

CutComparison compare_cut_vectors(const std::vector<CutVector>& a, const std::vector<CutVector>& b, int k)
{
  if (a.empty() || b.empty()) throw Error(ErrorCode::EmptySample, "cut vector set is empty");
  auto zeros = [](const std::vector<CutVector>& set) {
    return static_cast<std::size_t>(std::count_if(set.begin(), set.end(), [](const CutVector& v) {
      return std::all_of(v.begin(), v.end(), [](std::int64_t c) { return c == 0; });
    }));
  };
  CutComparison out;
  out.size_a = a.size();
  out.size_b = b.size();
  out.zero_vectors_a = zeros(a);
  out.zero_vectors_b = zeros(b);
  const Eigen::MatrixXd pa = cut_proportions(a);
  const Eigen::MatrixXd pb = cut_proportions(b);
  Eigen::MatrixXd all(pa.rows() + pb.rows(), pa.cols());
  all << pa, pb;
  const PcaModel model = pca_fit(all, k);
  const Eigen::MatrixXd sa = model.transform(pa);
  const Eigen::MatrixXd sb = model.transform(pb);
  for (int c = 0; c < k; ++c) {
    std::vector<double> xa(sa.col(c).data(), sa.col(c).data() + sa.rows());
    std::vector<double> xb(sb.col(c).data(), sb.col(c).data() + sb.rows());
    out.w1.push_back(wasserstein1(xa, xb));
    out.explained_ratio.push_back(model.explained_ratio(c));
  }
  return out;
}

Summary summarize(std::span<const double> values)
{
  Summary s;
  s.count = values.size();
  if (values.empty()) return s;
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  s.min = v.front();
  s.max = v.back();
  const std::size_t h = v.size() / 2;
  s.median = v.size() % 2 == 1 ? v[h] : 0.5 * (v[h - 1] + v[h]);
  double sum = 0.0;
  for (double x : values) sum += x;
  s.mean = sum / static_cast<double>(values.size());
  double sq = 0.0;
  for (double x : values) sq += (x - s.mean) * (x - s.mean);
  s.std = std::sqrt(sq / static_cast<double>(values.size()));
  return s;
}

std::string distribution_csv(std::span<const double> a, std::string_view label_a, std::span<const double> b,
                             std::string_view label_b)
{
  std::string out = "value,set\n";
  char buf[64];
  auto emit = [&](std::span<const double> s, std::string_view label) {
    for (double v : s) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      out += ',';
      out += label;
      out += '\n';
    }
  };
  emit(a, label_a);
  emit(b, label_b);
  return out;
}

}  // namespace genbench
