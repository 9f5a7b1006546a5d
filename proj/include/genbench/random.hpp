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
#include <string_view>
#include <utility>
#include <vector>

namespace genbench {

/// 64-bit FNV-1a over the bytes of `text`.
std::uint64_t stable_hash(std::string_view text) noexcept;

/// Mixes a root seed with a stable label into an independent stream seed.
/// Used everywhere a per-instance or per-stage seed is needed so results do
/// not depend on scheduling order.
std::uint64_t derive_seed(std::uint64_t root, std::string_view label) noexcept;
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) noexcept;

/// xoshiro256** generator. All sampling helpers are implemented here rather
/// than via <random> distributions, whose output is implementation-defined,
/// so generated instances are byte-identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept;

  std::uint64_t next_u64() noexcept;

  /// Uniform integer in [lo, hi] (inclusive), unbiased.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) noexcept;

  /// Uniform real in [0, 1) with 53 random bits.
  double uniform01() noexcept;

  /// Uniform real in [lo, hi]; returns lo when lo == hi.
  double uniform_real(double lo, double hi) noexcept;

  bool bernoulli(double p) noexcept { return uniform01() < p; }

  /// k distinct values from [0, n), ascending. Requires k <= n.
  std::vector<std::int64_t> sample_distinct(std::int64_t n, std::int64_t k);

  template <class T>
  void shuffle(std::vector<T>& values) noexcept
  {
    for (std::size_t i = values.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(i) - 1));
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::uint64_t state_[4];
};

}  // namespace genbench
