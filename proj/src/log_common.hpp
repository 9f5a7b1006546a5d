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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "genbench/error.hpp"
#include "genbench/log_parsers.hpp"
#include "text_util.hpp"

namespace genbench::detail {

/// Complete lines only. An unterminated final line may be a partial write,
/// so it is dropped; this keeps parsed counts monotone under truncation.
inline std::vector<std::string_view> complete_lines(std::string_view text)
{
  auto lines = split_lines(text);
  if (!text.empty() && text.back() != '\n' && !lines.empty()) lines.pop_back();
  return lines;
}

/// "12.5%" -> 12.5. Returns nullopt for "--", "-", "Large", "inf".
inline std::optional<double> parse_percent(std::string_view s)
{
  s = trim(s);
  if (s.empty() || s.back() != '%') return std::nullopt;
  s.remove_suffix(1);
  auto v = parse_number(s);
  if (!v || !std::isfinite(*v)) return std::nullopt;
  return v;
}

inline std::optional<double> parse_finite(std::string_view s)
{
  auto v = parse_number(s);
  if (!v || !std::isfinite(*v)) return std::nullopt;
  return v;
}

inline std::optional<long long> parse_int(std::string_view s)
{
  s = trim(s);
  if (s.empty()) return std::nullopt;
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

/// Text after "<key>" and optional spaces and ':' when `line` starts with key.
inline std::optional<std::string_view> field_after(std::string_view line, std::string_view key)
{
  if (!starts_with(line, key)) return std::nullopt;
  std::string_view rest = line.substr(key.size());
  std::size_t i = 0;
  while (i < rest.size() && rest[i] == ' ') ++i;
  if (i < rest.size() && rest[i] == ':') ++i;
  return trim(rest.substr(i));
}

inline void add_cut(SolverInternalFeatures& f,
                    const CutNameMap& map,
                    std::string_view name,
                    std::int64_t count)
{
  auto it = map.find(name);
  if (it != map.end()) {
    f.cut_vector[it->second] += count;
  } else if (count != 0) {
    f.diagnostics.unmapped_cuts[std::string(name)] += count;
  }
}

/// Fills root_gap_rel from the root bounds and records missing fields.
void finish_features(SolverInternalFeatures& f, const SolveSummary& summary, bool has_cut_table);

SolveSummary scip_summary(const std::vector<std::string_view>& lines);
SolveSummary highs_summary(const std::vector<std::string_view>& lines);
SolveSummary gurobi_summary(const std::vector<std::string_view>& lines);

}  // namespace genbench::detail
