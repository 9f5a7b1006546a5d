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
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "genbench/cut_vector.hpp"
#include "genbench/graph.hpp"

namespace genbench {

inline constexpr int kDefaultBins = 30;
inline constexpr int kDefaultPcaComponents = 3;

/// 1 - JSD/ln 2 between shared equal-width histograms of the two samples.
/// Throws EmptySample, InvalidBins.
double jsd_similarity(std::span<const double> a, std::span<const double> b, int bins = kDefaultBins);

/// Jensen-Shannon divergence (natural log) of two probability vectors.
double jensen_shannon(std::span<const double> p, std::span<const double> q);

struct SimilarityReport {
  std::vector<std::pair<std::string, double>> per_feature;  // canonical feature order
  double overall = 0.0;
  int bin_count = kDefaultBins;
  std::size_t size_a = 0;
  std::size_t size_b = 0;

  bool operator==(const SimilarityReport&) const = default;
};

SimilarityReport structural_similarity(const std::vector<StructuralFeatureVector>& a,
                                       const std::vector<StructuralFeatureVector>& b,
                                       int bins = kDefaultBins);

/// Exact 1-Wasserstein distance between two empirical distributions.
double wasserstein1(std::span<const double> a, std::span<const double> b);

struct PcaModel {
  Eigen::VectorXd mean;
  Eigen::VectorXd scale;              // population std, 1 for constant columns
  std::vector<bool> constant_column;  // z-scored to zero
  Eigen::MatrixXd components;         // k x d, orthonormal rows
  Eigen::VectorXd eigenvalues;        // top k of the sample covariance
  Eigen::VectorXd explained_ratio;    // k, non-increasing

  Eigen::MatrixXd standardize(const Eigen::MatrixXd& x) const;
  Eigen::MatrixXd transform(const Eigen::MatrixXd& x) const;
  /// Maps scores back to the z-scored space.
  Eigen::MatrixXd reconstruct(const Eigen::MatrixXd& scores) const;
};

/// Throws TooFewRows (n < 2), InvalidK.
PcaModel pca_fit(const Eigen::MatrixXd& x, int k = kDefaultPcaComponents);

struct CutComparison {
  std::vector<double> w1;  // PC1..PCk
  std::vector<double> explained_ratio;
  std::size_t zero_vectors_a = 0;
  std::size_t zero_vectors_b = 0;
  std::size_t size_a = 0;
  std::size_t size_b = 0;
};

/// Rows normalized to proportions (all-zero rows stay zero).
Eigen::MatrixXd cut_proportions(const std::vector<CutVector>& cuts);

CutComparison compare_cut_vectors(const std::vector<CutVector>& a, const std::vector<CutVector>& b,
                                  int k = kDefaultPcaComponents);

struct Summary {
  std::size_t count = 0;
  double mean = 0.0;
  double std = 0.0;  // population
  double median = 0.0;
  double min = 0.0;
  double max = 0.0;

  bool operator==(const Summary&) const = default;
};

Summary summarize(std::span<const double> values);

/// Two-column "value,set" dump for external plotting.
std::string distribution_csv(std::span<const double> a, std::string_view label_a, std::span<const double> b,
                             std::string_view label_b);

}  // namespace genbench
