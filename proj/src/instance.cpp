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

#include "genbench/instance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <tuple>
#include <unordered_set>

#include "genbench/error.hpp"

namespace genbench {

std::string_view to_string(ObjectiveSense sense)
{
  return sense == ObjectiveSense::Minimize ? "minimize" : "maximize";
}

std::string_view to_string(RowSense sense)
{
  switch (sense) {
    case RowSense::LessEqual: return "<=";
    case RowSense::GreaterEqual: return ">=";
    case RowSense::Equal: return "=";
  }
  return "?";
}

std::string_view to_string(VarType type)
{
  switch (type) {
    case VarType::Continuous: return "continuous";
    case VarType::Integer: return "integer";
    case VarType::Binary: return "binary";
  }
  return "?";
}

std::int32_t MilpInstance::add_variable(VarType type, double cost, std::string var_name)
{
  objective.push_back(cost);
  lower_bounds.push_back(0.0);
  upper_bounds.push_back(type == VarType::Binary ? 1.0 : kInfinity);
  var_types.push_back(type);
  if (!var_name.empty() || !col_names.empty()) {
    col_names.resize(objective.size() - 1);
    col_names.push_back(std::move(var_name));
  }
  return static_cast<std::int32_t>(objective.size() - 1);
}

std::int32_t MilpInstance::add_row(RowSense sense, double rhs_value, std::string row_name)
{
  row_senses.push_back(sense);
  rhs.push_back(rhs_value);
  if (!row_name.empty() || !row_names.empty()) {
    row_names.resize(row_senses.size() - 1);
    row_names.push_back(std::move(row_name));
  }
  return static_cast<std::int32_t>(row_senses.size() - 1);
}

void MilpInstance::add_entry(std::int32_t row, std::int32_t col, double value)
{
  entries.push_back({row, col, value});
}

namespace {

bool entry_less(const MatrixEntry& a, const MatrixEntry& b)
{
  return std::tie(a.row, a.col, a.value) < std::tie(b.row, b.col, b.value);
}

std::vector<MatrixEntry> sorted_entries(std::vector<MatrixEntry> entries)
{
  std::sort(entries.begin(), entries.end(), entry_less);
  return entries;
}

// -0.0 == 0.0 on purpose: the sign of zero carries no meaning here.
bool same(double a, double b) { return a == b; }

bool same(const std::vector<double>& a, const std::vector<double>& b)
{
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](double x, double y) {
           return same(x, y);
         });
}

double canonical_bound(double v)
{
  if (v >= kInfiniteBoundThreshold) return kInfinity;
  if (v <= -kInfiniteBoundThreshold) return -kInfinity;
  return v;
}

}  // namespace

bool operator==(const MilpInstance& a, const MilpInstance& b)
{
  if (a.sense != b.sense || !same(a.objective_offset, b.objective_offset)) return false;
  if (!same(a.objective, b.objective) || !same(a.rhs, b.rhs)) return false;
  if (!same(a.lower_bounds, b.lower_bounds) || !same(a.upper_bounds, b.upper_bounds)) return false;
  if (a.row_senses != b.row_senses || a.var_types != b.var_types) return false;
  if (a.entries.size() != b.entries.size()) return false;
  return sorted_entries(a.entries) == sorted_entries(b.entries);
}

void validate(const MilpInstance& instance)
{
  const std::size_t m = instance.num_rows();
  const std::size_t n = instance.num_cols();
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidInstance, what); };
  if (instance.rhs.size() != m) fail("rhs length differs from row count");
  if (instance.lower_bounds.size() != n || instance.upper_bounds.size() != n ||
      instance.var_types.size() != n)
    fail("per-variable vectors differ in length");
  if (!instance.row_names.empty() && instance.row_names.size() != m) fail("row name count");
  if (!instance.col_names.empty() && instance.col_names.size() != n) fail("column name count");
  for (double c : instance.objective)
    if (!std::isfinite(c)) fail("non-finite objective coefficient");
  for (double b : instance.rhs)
    if (!std::isfinite(b)) fail("non-finite right-hand side");
  for (std::size_t j = 0; j < n; ++j) {
    const double lo = instance.lower_bounds[j];
    const double hi = instance.upper_bounds[j];
    if (std::isnan(lo) || std::isnan(hi) || lo > hi || lo == kInfinity || hi == -kInfinity)
      fail("invalid bounds on column " + std::to_string(j));
    if (instance.var_types[j] == VarType::Binary && (lo < 0.0 || hi > 1.0))
      fail("binary column " + std::to_string(j) + " has bounds outside [0,1]");
  }
  std::vector<std::pair<std::int32_t, std::int32_t>> keys;
  keys.reserve(instance.entries.size());
  for (const auto& e : instance.entries) {
    if (e.row < 0 || static_cast<std::size_t>(e.row) >= m || e.col < 0 ||
        static_cast<std::size_t>(e.col) >= n)
      fail("matrix entry out of range");
    if (e.value == 0.0 || !std::isfinite(e.value)) fail("zero or non-finite matrix coefficient");
    keys.emplace_back(e.row, e.col);
  }
  std::sort(keys.begin(), keys.end());
  if (std::adjacent_find(keys.begin(), keys.end()) != keys.end()) fail("duplicate matrix entry");
}

MilpInstance canonicalize(MilpInstance instance)
{
  for (auto& v : instance.lower_bounds) v = canonical_bound(v);
  for (auto& v : instance.upper_bounds) v = canonical_bound(v);
  for (std::size_t j = 0; j < instance.var_types.size(); ++j) {
    if (instance.var_types[j] == VarType::Integer && instance.lower_bounds[j] == 0.0 &&
        instance.upper_bounds[j] == 1.0)
      instance.var_types[j] = VarType::Binary;
  }
  auto& entries = instance.entries;
  std::stable_sort(entries.begin(), entries.end(), [](const MatrixEntry& a, const MatrixEntry& b) {
    return std::tie(a.row, a.col) < std::tie(b.row, b.col);
  });
  std::vector<MatrixEntry> merged;
  merged.reserve(entries.size());
  for (const auto& e : entries) {
    if (!merged.empty() && merged.back().row == e.row && merged.back().col == e.col) {
      merged.back().value += e.value;
    } else {
      merged.push_back(e);
    }
  }
  std::erase_if(merged, [](const MatrixEntry& e) { return e.value == 0.0; });
  entries = std::move(merged);
  return instance;
}

InstanceStats instance_stats(const MilpInstance& instance)
{
  InstanceStats s;
  s.rows = instance.num_rows();
  s.cols = instance.num_cols();
  s.nnz = instance.nnz();
  for (auto t : instance.var_types) {
    switch (t) {
      case VarType::Continuous: ++s.continuous; break;
      case VarType::Integer: ++s.integer; break;
      case VarType::Binary: ++s.binary; break;
    }
  }
  for (auto r : instance.row_senses) {
    switch (r) {
      case RowSense::LessEqual: ++s.less_equal; break;
      case RowSense::GreaterEqual: ++s.greater_equal; break;
      case RowSense::Equal: ++s.equal; break;
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// MPS writer

namespace {

std::string number(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool usable_name(std::string_view name)
{
  if (name.empty() || name.front() == '$') return false;
  return std::none_of(name.begin(), name.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || static_cast<unsigned char>(c) < 33;
  });
}

/// Returns `names` when every entry is a usable, unique, MPS-safe token that
/// does not collide with `reserved`; otherwise synthesized names.
std::vector<std::string> output_names(const std::vector<std::string>& names,
                                      std::size_t count,
                                      char prefix,
                                      const std::unordered_set<std::string>& reserved)
{
  bool ok = names.size() == count;
  if (ok) {
    std::unordered_set<std::string> seen;
    for (const auto& n : names) {
      if (!usable_name(n) || reserved.count(n) || !seen.insert(n).second) {
        ok = false;
        break;
      }
    }
  }
  if (ok) return names;
  std::vector<std::string> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = prefix + std::to_string(i);
  return out;
}

bool is_integral(VarType t) { return t != VarType::Continuous; }

}  // namespace

std::string write_mps(const MilpInstance& input)
{
  const MilpInstance instance = canonicalize(input);
  const std::size_t m = instance.num_rows();
  const std::size_t n = instance.num_cols();

  const std::string objective_name = "OBJ";
  const auto rows = output_names(instance.row_names, m, 'R', {objective_name});
  std::unordered_set<std::string> row_set(rows.begin(), rows.end());
  row_set.insert(objective_name);
  const auto cols = output_names(instance.col_names, n, 'C', row_set);

  // Column-major view of the matrix.
  std::vector<std::size_t> col_start(n + 1, 0);
  for (const auto& e : instance.entries) ++col_start[static_cast<std::size_t>(e.col) + 1];
  for (std::size_t j = 0; j < n; ++j) col_start[j + 1] += col_start[j];
  std::vector<MatrixEntry> by_col(instance.entries.size());
  {
    auto fill = col_start;
    for (const auto& e : instance.entries) by_col[fill[static_cast<std::size_t>(e.col)]++] = e;
  }

  std::ostringstream out;
  out << "NAME " << (usable_name(instance.name) ? instance.name : std::string("UNNAMED")) << "\n";
  out << "OBJSENSE\n    " << (instance.sense == ObjectiveSense::Maximize ? "MAX" : "MIN") << "\n";
  out << "ROWS\n";
  out << " N  " << objective_name << "\n";
  for (std::size_t i = 0; i < m; ++i) {
    const char* tag = instance.row_senses[i] == RowSense::LessEqual      ? "L"
                      : instance.row_senses[i] == RowSense::GreaterEqual ? "G"
                                                                          : "E";
    out << " " << tag << "  " << rows[i] << "\n";
  }
  out << "COLUMNS\n";
  bool in_marker = false;
  int marker_id = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const bool integral = is_integral(instance.var_types[j]);
    if (integral && !in_marker) {
      out << "    MARKER" << marker_id++ << " 'MARKER' 'INTORG'\n";
      in_marker = true;
    } else if (!integral && in_marker) {
      out << "    MARKER" << marker_id++ << " 'MARKER' 'INTEND'\n";
      in_marker = false;
    }
    const bool has_entries = col_start[j + 1] > col_start[j];
    if (instance.objective[j] != 0.0 || !has_entries)
      out << "    " << cols[j] << " " << objective_name << " " << number(instance.objective[j]) << "\n";
    for (std::size_t k = col_start[j]; k < col_start[j + 1]; ++k)
      out << "    " << cols[j] << " " << rows[static_cast<std::size_t>(by_col[k].row)] << " "
          << number(by_col[k].value) << "\n";
  }
  if (in_marker) out << "    MARKER" << marker_id++ << " 'MARKER' 'INTEND'\n";
  out << "RHS\n";
  if (instance.objective_offset != 0.0)
    out << "    RHS " << objective_name << " " << number(-instance.objective_offset) << "\n";
  for (std::size_t i = 0; i < m; ++i)
    if (instance.rhs[i] != 0.0) out << "    RHS " << rows[i] << " " << number(instance.rhs[i]) << "\n";
  out << "BOUNDS\n";
  for (std::size_t j = 0; j < n; ++j) {
    const double lo = instance.lower_bounds[j];
    const double hi = instance.upper_bounds[j];
    const auto& c = cols[j];
    if (instance.var_types[j] == VarType::Binary) {
      out << " BV BND " << c << "\n";
      if (lo != 0.0) out << " LO BND " << c << " " << number(lo) << "\n";
      if (hi != 1.0) out << " UP BND " << c << " " << number(hi) << "\n";
      continue;
    }
    if (lo == hi) {
      out << " FX BND " << c << " " << number(lo) << "\n";
      continue;
    }
    if (lo == -kInfinity && hi == kInfinity) {
      out << " FR BND " << c << "\n";
      continue;
    }
    if (lo == -kInfinity)
      out << " MI BND " << c << "\n";
    else if (lo != 0.0)
      out << " LO BND " << c << " " << number(lo) << "\n";
    if (hi != kInfinity)
      out << " UP BND " << c << " " << number(hi) << "\n";
    else if (instance.var_types[j] == VarType::Integer)
      // Several readers default bound-less marker columns to binary.
      out << " PL BND " << c << "\n";
  }
  out << "ENDATA\n";
  return out.str();
}

void write_mps_file(const MilpInstance& instance, const std::filesystem::path& path)
{
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
  file << write_mps(instance);
  if (!file) throw Error(ErrorCode::Io, "failed writing " + path.string());
}

std::vector<std::filesystem::path> list_instance_files(const std::filesystem::path& dir)
{
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec))
    throw Error(ErrorCode::Io, "not a directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto ext = entry.path().extension().string();
    if (ext == ".mps" || ext == ".lp") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const auto& a, const auto& b) { return a.filename().string() < b.filename().string(); });
  return files;
}

bool is_feasible_point(const MilpInstance& instance, const std::vector<double>& x, double tolerance)
{
  if (x.size() != instance.num_cols()) return false;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] < instance.lower_bounds[j] - tolerance || x[j] > instance.upper_bounds[j] + tolerance)
      return false;
    if (instance.var_types[j] != VarType::Continuous && std::abs(x[j] - std::round(x[j])) > tolerance)
      return false;
  }
  std::vector<double> activity(instance.num_rows(), 0.0);
  for (const auto& e : instance.entries)
    activity[static_cast<std::size_t>(e.row)] += e.value * x[static_cast<std::size_t>(e.col)];
  for (std::size_t i = 0; i < activity.size(); ++i) {
    const double b = instance.rhs[i];
    switch (instance.row_senses[i]) {
      case RowSense::LessEqual:
        if (activity[i] > b + tolerance) return false;
        break;
      case RowSense::GreaterEqual:
        if (activity[i] < b - tolerance) return false;
        break;
      case RowSense::Equal:
        if (std::abs(activity[i] - b) > tolerance) return false;
        break;
    }
  }
  return true;
}

}  // namespace genbench
