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

#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "genbench/error.hpp"
#include "genbench/instance.hpp"
#include "readers.hpp"
#include "text_util.hpp"

namespace genbench::detail {
namespace {

enum class Section { None, Name, ObjSense, ObjName, Rows, Columns, Rhs, Bounds, Done };

const std::unordered_set<std::string>& unsupported_sections()
{
  static const std::unordered_set<std::string> names = {
      "RANGES", "SOS", "QUADOBJ", "QSECTION", "QMATRIX", "QCMATRIX", "INDICATORS",
      "LAZYCONS", "USERCUTS", "CSECTION", "GENCONS", "PWLOBJ", "PWLNAM", "BRANCH"};
  return names;
}

// Heuristic for fixed-column MPS: names sit in columns 5-12 and 15-22 and at
// least one of them contains a blank, which free format cannot express.
bool looks_fixed_format(std::string_view line)
{
  if (line.size() < 25 || !is_space(line[0])) return false;
  auto field = [&](std::size_t from, std::size_t len) {
    return from < line.size() ? line.substr(from, std::min(len, line.size() - from)) : std::string_view{};
  };
  const std::string_view f1 = trim(field(4, 8));
  const std::string_view f2 = trim(field(14, 8));
  if (f1.empty() || f2.empty()) return false;
  if (!parse_number(field(24, 12))) return false;
  return f1.find(' ') != std::string_view::npos || f2.find(' ') != std::string_view::npos;
}

class MpsReader {
 public:
  explicit MpsReader(std::string_view text) : lines_(split_lines(text)) {}

  MilpInstance read()
  {
    for (line_no_ = 1; line_no_ <= lines_.size() && section_ != Section::Done; ++line_no_) {
      const std::string_view line = lines_[line_no_ - 1];
      if (trim(line).empty() || line.front() == '*') continue;
      const auto tokens = tokenize(line);
      if (!is_space(line.front()) && enter_section(tokens)) continue;
      data_line(line, tokens);
    }
    if (!seen_rows_) fail("missing ROWS section", 0, 0);
    if (!seen_columns_) fail("missing COLUMNS section", 0, 0);
    if (section_ != Section::Done) fail("missing ENDATA section", 0, 0);
    return std::move(inst_);
  }

 private:
  [[noreturn]] void fail(const std::string& msg, std::size_t line, std::size_t col) const
  {
    throw ParseError(ErrorCode::MalformedFile, msg, line, col);
  }
  [[noreturn]] void fail_at(const std::string& msg, const Token& tok) const
  {
    fail(msg, line_no_, tok.column);
  }
  [[noreturn]] void unsupported(const std::string& what) const
  {
    throw ParseError(ErrorCode::UnsupportedConstruct, what, line_no_, 1);
  }

  bool enter_section(const std::vector<Token>& tokens)
  {
    const std::string key = upper(tokens[0].text);
    if (unsupported_sections().count(key)) {
      unsupported(key == "RANGES" ? "RANGES section (ranged rows)" : key + " section");
    }
    if (key == "NAME") {
      if (tokens.size() > 1) inst_.name = std::string(tokens[1].text);
      section_ = Section::Name;
    } else if (key == "OBJSENSE" || key == "OBJSENCE") {
      section_ = Section::ObjSense;
      if (tokens.size() > 1) set_sense(tokens[1]);
    } else if (key == "OBJNAME") {
      section_ = Section::ObjName;
      if (tokens.size() > 1) objective_row_ = std::string(tokens[1].text);
    } else if (key == "ROWS") {
      seen_rows_ = true;
      section_ = Section::Rows;
    } else if (key == "COLUMNS") {
      if (!seen_rows_) fail("missing ROWS section before COLUMNS", line_no_, 1);
      seen_columns_ = true;
      section_ = Section::Columns;
    } else if (key == "RHS") {
      require_columns(key);
      section_ = Section::Rhs;
    } else if (key == "BOUNDS") {
      require_columns(key);
      section_ = Section::Bounds;
    } else if (key == "ENDATA") {
      section_ = Section::Done;
    } else {
      return false;
    }
    return true;
  }

  void require_columns(const std::string& key)
  {
    if (!seen_rows_) fail("missing ROWS section before " + key, line_no_, 1);
    if (!seen_columns_) fail("missing COLUMNS section before " + key, line_no_, 1);
  }

  void set_sense(const Token& tok)
  {
    const std::string s = upper(tok.text);
    if (s == "MAX" || s == "MAXIMIZE" || s == "MAXIMISE") {
      inst_.sense = ObjectiveSense::Maximize;
    } else if (s == "MIN" || s == "MINIMIZE" || s == "MINIMISE") {
      inst_.sense = ObjectiveSense::Minimize;
    } else {
      fail_at("unknown objective sense '" + std::string(tok.text) + "'", tok);
    }
  }

  double number(const Token& tok, const char* what) const
  {
    auto v = parse_number(tok.text);
    if (!v) {
      if (looks_fixed_format(lines_[line_no_ - 1])) unsupported("fixed-format MPS");
      fail_at(std::string("non-numeric ") + what + " '" + std::string(tok.text) + "'", tok);
    }
    return *v;
  }

  double finite_number(const Token& tok, const char* what) const
  {
    const double v = number(tok, what);
    if (!std::isfinite(v)) fail_at(std::string("non-finite ") + what, tok);
    return v;
  }

  void bad_arity(std::string_view line, const Token& tok) const
  {
    if (looks_fixed_format(line)) unsupported("fixed-format MPS");
    fail_at("unexpected number of fields", tok);
  }

  void data_line(std::string_view line, const std::vector<Token>& tokens)
  {
    switch (section_) {
      case Section::None: fail_at("data before any section header", tokens[0]);
      case Section::Name:
        if (inst_.name.empty()) inst_.name = std::string(tokens[0].text);
        return;
      case Section::ObjSense: set_sense(tokens[0]); return;
      case Section::ObjName: objective_row_ = std::string(tokens[0].text); return;
      case Section::Rows: return row_line(line, tokens);
      case Section::Columns: return column_line(line, tokens);
      case Section::Rhs: return rhs_line(line, tokens);
      case Section::Bounds: return bound_line(line, tokens);
      case Section::Done: return;
    }
  }

  void row_line(std::string_view line, const std::vector<Token>& tokens)
  {
    if (tokens.size() != 2) bad_arity(line, tokens[0]);
    const std::string type = upper(tokens[0].text);
    const std::string name(tokens[1].text);
    if (row_index_.count(name) || free_rows_.count(name)) fail_at("duplicate row '" + name + "'", tokens[1]);
    if (type == "N") {
      if (objective_row_.empty()) objective_row_ = name;
      free_rows_.insert(name);
      return;
    }
    RowSense sense;
    if (type == "L") {
      sense = RowSense::LessEqual;
    } else if (type == "G") {
      sense = RowSense::GreaterEqual;
    } else if (type == "E") {
      sense = RowSense::Equal;
    } else {
      fail_at("unknown row type '" + std::string(tokens[0].text) + "'", tokens[0]);
    }
    row_index_.emplace(name, inst_.add_row(sense, 0.0, name));
  }

  // -1 objective, -2 other free row.
  std::int32_t row_ref(const Token& tok) const
  {
    const std::string name(tok.text);
    if (name == objective_row_) return -1;
    if (free_rows_.count(name)) return -2;
    auto it = row_index_.find(name);
    if (it == row_index_.end()) fail_at("unknown row '" + name + "'", tok);
    return it->second;
  }

  std::int32_t col_ref(const Token& tok) const
  {
    auto it = col_index_.find(std::string(tok.text));
    if (it == col_index_.end()) fail_at("unknown column '" + std::string(tok.text) + "'", tok);
    return it->second;
  }

  void column_line(std::string_view line, const std::vector<Token>& tokens)
  {
    if (tokens.size() >= 2 && upper(tokens[1].text) == "'MARKER'") {
      if (tokens.size() < 3) fail_at("incomplete MARKER line", tokens[0]);
      const std::string kind = upper(tokens[2].text);
      if (kind == "'INTORG'") {
        integer_marker_ = true;
      } else if (kind == "'INTEND'") {
        integer_marker_ = false;
      } else {
        fail_at("unknown marker '" + std::string(tokens[2].text) + "'", tokens[2]);
      }
      return;
    }
    if (tokens.size() != 3 && tokens.size() != 5) bad_arity(line, tokens[0]);
    const std::string name(tokens[0].text);
    auto it = col_index_.find(name);
    std::int32_t col;
    if (it == col_index_.end()) {
      col = inst_.add_variable(integer_marker_ ? VarType::Integer : VarType::Continuous, 0.0, name);
      col_index_.emplace(name, col);
      lower_set_.push_back(false);
    } else {
      col = it->second;
    }
    for (std::size_t k = 1; k + 1 < tokens.size(); k += 2) {
      const std::int32_t row = row_ref(tokens[k]);
      const double v = finite_number(tokens[k + 1], "coefficient");
      if (row == -1) {
        inst_.objective[col] += v;
      } else if (row >= 0) {
        inst_.add_entry(row, col, v);
      }
    }
  }

  void rhs_line(std::string_view line, const std::vector<Token>& tokens)
  {
    // Optional leading set name: odd token count means it is present.
    const std::size_t first = tokens.size() % 2 == 1 ? 1 : 0;
    if (tokens.size() < 2 || tokens.size() > 5) bad_arity(line, tokens[0]);
    for (std::size_t k = first; k + 1 < tokens.size(); k += 2) {
      const std::int32_t row = row_ref(tokens[k]);
      const double v = finite_number(tokens[k + 1], "right-hand side");
      if (row == -1) {
        inst_.objective_offset = -v;
      } else if (row >= 0) {
        inst_.rhs[row] = v;
      }
    }
  }

  void bound_line(std::string_view line, const std::vector<Token>& tokens)
  {
    const std::string type = upper(tokens[0].text);
    if (type == "SC") unsupported("semi-continuous bound (SC)");
    const bool needs_value = type == "UP" || type == "LO" || type == "FX" || type == "LI" || type == "UI";
    const bool no_value = type == "FR" || type == "MI" || type == "PL" || type == "BV";
    if (!needs_value && !no_value) fail_at("unknown bound type '" + std::string(tokens[0].text) + "'", tokens[0]);

    std::size_t col_tok;
    bool has_value = false;
    if (needs_value) {
      if (tokens.size() == 4) {
        col_tok = 2;
      } else if (tokens.size() == 3) {
        col_tok = 1;
      } else {
        bad_arity(line, tokens[0]);
      }
      has_value = true;
    } else {
      if (tokens.size() == 3) {
        // Either "type set col" or "BV col value"; prefer the known column.
        col_tok = col_index_.count(std::string(tokens[2].text)) ? 2 : 1;
        has_value = col_tok == 1;
      } else if (tokens.size() == 2) {
        col_tok = 1;
      } else if (tokens.size() == 4) {
        col_tok = 2;
        has_value = true;
      } else {
        bad_arity(line, tokens[0]);
      }
    }
    const std::int32_t j = col_ref(tokens[col_tok]);
    double value = 0.0;
    if (has_value) {
      value = number(tokens[col_tok + 1], "bound");
      if (value >= kInfiniteBoundThreshold) value = kInfinity;
      if (value <= -kInfiniteBoundThreshold) value = -kInfinity;
    }
    double& lo = inst_.lower_bounds[j];
    double& hi = inst_.upper_bounds[j];
    VarType& vt = inst_.var_types[j];
    if (type == "UP" || type == "UI") {
      hi = value;
      if (value < 0 && lo == 0.0 && !lower_set_[j]) lo = -kInfinity;
      if (type == "UI" && vt == VarType::Continuous) vt = VarType::Integer;
    } else if (type == "LO" || type == "LI") {
      lo = value;
      lower_set_[j] = true;
      if (type == "LI" && vt == VarType::Continuous) vt = VarType::Integer;
    } else if (type == "FX") {
      lo = hi = value;
      lower_set_[j] = true;
    } else if (type == "FR") {
      lo = -kInfinity;
      hi = kInfinity;
      lower_set_[j] = true;
    } else if (type == "MI") {
      lo = -kInfinity;
      lower_set_[j] = true;
    } else if (type == "PL") {
      hi = kInfinity;
    } else if (type == "BV") {
      vt = VarType::Binary;
      lo = 0.0;
      hi = 1.0;
      lower_set_[j] = true;
    }
    if (vt == VarType::Binary && (lo < 0.0 || hi > 1.0)) vt = VarType::Integer;
  }

  std::vector<std::string_view> lines_;
  std::size_t line_no_ = 0;
  Section section_ = Section::None;
  bool seen_rows_ = false;
  bool seen_columns_ = false;
  bool integer_marker_ = false;
  std::string objective_row_;
  std::unordered_set<std::string> free_rows_;
  std::unordered_map<std::string, std::int32_t> row_index_;
  std::unordered_map<std::string, std::int32_t> col_index_;
  std::vector<bool> lower_set_;
  MilpInstance inst_;
};

}  // namespace

MilpInstance read_free_mps(std::string_view text)
{
  return MpsReader(text).read();
}

}  // namespace genbench::detail
