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

#include <cctype>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "genbench/error.hpp"
#include "genbench/instance.hpp"
#include "readers.hpp"
#include "text_util.hpp"

namespace genbench::detail {
namespace {

enum class Kind { Ident, Number, Sense, Colon, Plus, Minus, End };

struct LpToken {
  Kind kind = Kind::End;
  std::string text;
  double number = 0.0;
  std::size_t line = 0;
  std::size_t column = 0;
};

enum class Section { None, Objective, Constraints, Bounds, General, Binary, End };

struct SectionStart {
  Section section;
  std::size_t tokens_consumed;  // keyword tokens on the line
};

bool ident_char(char c)
{
  if (std::isalnum(static_cast<unsigned char>(c))) return true;
  switch (c) {
    case '!': case '"': case '#': case '$': case '%': case '&': case '(': case ')':
    case '/': case ',': case '.': case ';': case '?': case '@': case '_': case '`':
    case '\'': case '{': case '}': case '|': case '~':
      return true;
    default:
      return false;
  }
}

[[noreturn]] void malformed(const std::string& msg, std::size_t line, std::size_t col)
{
  throw ParseError(ErrorCode::MalformedFile, msg, line, col);
}

[[noreturn]] void unsupported(const std::string& what, std::size_t line, std::size_t col)
{
  throw ParseError(ErrorCode::UnsupportedConstruct, what, line, col);
}

std::vector<LpToken> lex_line(std::string_view line, std::size_t line_no)
{
  std::vector<LpToken> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    const std::size_t col = i + 1;
    if (is_space(c)) {
      ++i;
      continue;
    }
    if (c == '\\') break;  // comment to end of line
    if (c == '[' || c == ']' || c == '^') unsupported("quadratic terms", line_no, col);
    LpToken tok;
    tok.line = line_no;
    tok.column = col;
    if (c == '<' || c == '>' || c == '=') {
      std::size_t j = i + 1;
      if (j < line.size() && (line[j] == '=' || line[j] == '<' || line[j] == '>')) ++j;
      std::string op(line.substr(i, j - i));
      if (j < line.size() && line[j] == '-' && op == "<") unsupported("indicator constraint", line_no, col);
      if (op == "<" || op == "<=" || op == "=<") {
        tok.text = "<=";
      } else if (op == ">" || op == ">=" || op == "=>") {
        tok.text = ">=";
      } else if (op == "=") {
        tok.text = "=";
      } else {
        malformed("unknown operator '" + op + "'", line_no, col);
      }
      tok.kind = Kind::Sense;
      i = j;
    } else if (c == ':') {
      tok.kind = Kind::Colon;
      ++i;
    } else if (c == '+') {
      tok.kind = Kind::Plus;
      ++i;
    } else if (c == '-') {
      if (i + 1 < line.size() && line[i + 1] == '>') unsupported("indicator constraint", line_no, col);
      tok.kind = Kind::Minus;
      ++i;
    } else if (c == '*') {
      ++i;  // optional multiplication sign between coefficient and variable
      continue;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t j = i;
      while (j < line.size() && (std::isdigit(static_cast<unsigned char>(line[j])) || line[j] == '.')) ++j;
      if (j < line.size() && (line[j] == 'e' || line[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < line.size() && (line[k] == '+' || line[k] == '-')) ++k;
        if (k < line.size() && std::isdigit(static_cast<unsigned char>(line[k]))) {
          while (k < line.size() && std::isdigit(static_cast<unsigned char>(line[k]))) ++k;
          j = k;
        }
      }
      const auto v = parse_number(line.substr(i, j - i));
      if (!v) malformed("non-numeric coefficient '" + std::string(line.substr(i, j - i)) + "'", line_no, col);
      tok.kind = Kind::Number;
      tok.number = *v;
      tok.text = std::string(line.substr(i, j - i));
      i = j;
    } else if (ident_char(c)) {
      std::size_t j = i;
      while (j < line.size() && ident_char(line[j])) ++j;
      tok.kind = Kind::Ident;
      tok.text = std::string(line.substr(i, j - i));
      const std::string low = lower(tok.text);
      if (low == "inf" || low == "infinity") {
        tok.kind = Kind::Number;
        tok.number = kInfinity;
      }
      i = j;
    } else {
      malformed(std::string("unexpected character '") + c + "'", line_no, col);
    }
    out.push_back(std::move(tok));
  }
  return out;
}

std::optional<SectionStart> section_keyword(const std::vector<LpToken>& toks)
{
  if (toks.empty() || toks[0].kind != Kind::Ident) return std::nullopt;
  const std::string w = lower(toks[0].text);
  auto second = [&](const char* word) {
    return toks.size() > 1 && toks[1].kind == Kind::Ident && lower(toks[1].text) == word;
  };
  if (w == "minimize" || w == "minimise" || w == "minimum" || w == "min" || w == "maximize" ||
      w == "maximise" || w == "maximum" || w == "max")
    return SectionStart{Section::Objective, 1};
  if ((w == "subject" && second("to")) || (w == "such" && second("that"))) return SectionStart{Section::Constraints, 2};
  if (w == "st" || w == "s.t." || w == "st.") return SectionStart{Section::Constraints, 1};
  if (w == "bounds" || w == "bound") return SectionStart{Section::Bounds, 1};
  if (w == "general" || w == "generals" || w == "gen") return SectionStart{Section::General, 1};
  if (w == "binary" || w == "binaries" || w == "bin") return SectionStart{Section::Binary, 1};
  if (w == "end") return SectionStart{Section::End, 1};
  if (w == "semi-continuous" || w == "semis" || w == "semi") unsupported("semi-continuous section", toks[0].line, toks[0].column);
  if (w == "sos") unsupported("SOS section", toks[0].line, toks[0].column);
  if (w == "pwlobj" || w == "pwl") unsupported("piecewise-linear section", toks[0].line, toks[0].column);
  return std::nullopt;
}

struct Term {
  std::string var;  // empty for a constant
  double coef = 0.0;
};

class LpReader {
 public:
  explicit LpReader(std::string_view text)
  {
    std::size_t n = 0;
    Section current = Section::None;
    for (auto line : split_lines(text)) {
      ++n;
      auto toks = lex_line(line, n);
      if (current == Section::End) continue;
      std::size_t skip = 0;
      // A keyword followed by ':' is a constraint label, not a header.
      if (!(toks.size() > 1 && toks[1].kind == Kind::Colon)) {
        if (auto s = section_keyword(toks)) {
          current = s->section;
          skip = s->tokens_consumed;
          if (current == Section::Objective) {
            const std::string w = lower(toks[0].text);
            inst_.sense = w.rfind("max", 0) == 0 ? ObjectiveSense::Maximize : ObjectiveSense::Minimize;
            if (seen_objective_) malformed("duplicate objective section", toks[0].line, toks[0].column);
            seen_objective_ = true;
          }
        }
      }
      if (current == Section::None && !toks.empty())
        malformed("missing objective section", toks[0].line, toks[0].column);
      for (std::size_t k = skip; k < toks.size(); ++k) sections_[static_cast<int>(current)].push_back(std::move(toks[k]));
    }
    if (!seen_objective_) malformed("missing objective section", 0, 0);
  }

  MilpInstance read()
  {
    parse_objective(sections_[static_cast<int>(Section::Objective)]);
    parse_constraints(sections_[static_cast<int>(Section::Constraints)]);
    parse_bounds(sections_[static_cast<int>(Section::Bounds)]);
    parse_types(sections_[static_cast<int>(Section::General)], false);
    parse_types(sections_[static_cast<int>(Section::Binary)], true);
    return std::move(inst_);
  }

 private:
  using Tokens = std::vector<LpToken>;

  std::int32_t column(const std::string& name)
  {
    auto it = cols_.find(name);
    if (it != cols_.end()) return it->second;
    const std::int32_t j = inst_.add_variable(VarType::Continuous, 0.0, name);
    cols_.emplace(name, j);
    return j;
  }

  static bool at(const Tokens& t, std::size_t i, Kind k) { return i < t.size() && t[i].kind == k; }

  static const LpToken& tok_or_last(const Tokens& t, std::size_t i)
  {
    static const LpToken end_token;
    if (i < t.size()) return t[i];
    return t.empty() ? end_token : t.back();
  }

  // Parses terms starting at i; stops before a sense, a label, or the end.
  std::vector<Term> expression(const Tokens& t, std::size_t& i)
  {
    std::vector<Term> terms;
    while (i < t.size()) {
      if (t[i].kind == Kind::Sense || t[i].kind == Kind::Colon) break;
      if (at(t, i, Kind::Ident) && at(t, i + 1, Kind::Colon)) break;
      double sign = 1.0;
      bool any_sign = false;
      while (at(t, i, Kind::Plus) || at(t, i, Kind::Minus)) {
        if (t[i].kind == Kind::Minus) sign = -sign;
        any_sign = true;
        ++i;
      }
      // A new term needs a sign unless it is the first one.
      if (!terms.empty() && !any_sign) break;
      Term term;
      term.coef = sign;
      bool has_number = false;
      if (at(t, i, Kind::Number)) {
        term.coef *= t[i].number;
        has_number = true;
        ++i;
      }
      if (at(t, i, Kind::Ident) && !at(t, i + 1, Kind::Colon)) {
        term.var = t[i].text;
        ++i;
      } else if (!has_number) {
        const auto& bad = tok_or_last(t, i);
        malformed("expected a term", bad.line, bad.column);
      }
      if (!std::isfinite(term.coef)) {
        const auto& bad = tok_or_last(t, i - 1);
        malformed("non-finite coefficient", bad.line, bad.column);
      }
      terms.push_back(std::move(term));
    }
    return terms;
  }

  void parse_objective(const Tokens& t)
  {
    std::size_t i = 0;
    if (at(t, 0, Kind::Ident) && at(t, 1, Kind::Colon)) i = 2;
    for (const Term& term : expression(t, i)) {
      if (term.var.empty()) {
        inst_.objective_offset += term.coef;
      } else {
        const std::int32_t j = column(term.var);
        inst_.objective[j] += term.coef;
      }
    }
    if (i < t.size()) malformed("unexpected token in objective", t[i].line, t[i].column);
  }

  void parse_constraints(const Tokens& t)
  {
    std::size_t i = 0;
    while (i < t.size()) {
      std::string label;
      if (at(t, i, Kind::Ident) && at(t, i + 1, Kind::Colon)) {
        label = t[i].text;
        i += 2;
      }
      const std::size_t start = i;
      auto lhs = expression(t, i);
      if (!at(t, i, Kind::Sense)) {
        const auto& bad = tok_or_last(t, i < t.size() ? i : start);
        malformed("expected a relational operator", bad.line, bad.column);
      }
      const std::string op = t[i].text;
      ++i;
      double sign = 1.0;
      while (at(t, i, Kind::Plus) || at(t, i, Kind::Minus)) {
        if (t[i].kind == Kind::Minus) sign = -sign;
        ++i;
      }
      if (!at(t, i, Kind::Number)) {
        const auto& bad = tok_or_last(t, i);
        malformed("right-hand side must be a number", bad.line, bad.column);
      }
      double rhs = sign * t[i].number;
      if (!std::isfinite(rhs)) malformed("non-finite right-hand side", t[i].line, t[i].column);
      ++i;
      if (at(t, i, Kind::Sense)) unsupported("ranged constraint", t[i].line, t[i].column);
      RowSense sense = op == "<=" ? RowSense::LessEqual : op == ">=" ? RowSense::GreaterEqual : RowSense::Equal;
      if (label.empty()) label = "R" + std::to_string(inst_.num_rows());
      if (!row_labels_.emplace(label, inst_.num_rows()).second)
        malformed("duplicate constraint name '" + label + "'", t[start].line, t[start].column);
      const std::int32_t r = inst_.add_row(sense, 0.0, label);
      for (const Term& term : lhs) {
        if (term.var.empty()) {
          rhs -= term.coef;
        } else {
          inst_.add_entry(r, column(term.var), term.coef);
        }
      }
      inst_.rhs[r] = rhs;
    }
  }

  static double signed_number(const Tokens& t, std::size_t& i)
  {
    double sign = 1.0;
    while (at(t, i, Kind::Plus) || at(t, i, Kind::Minus)) {
      if (t[i].kind == Kind::Minus) sign = -sign;
      ++i;
    }
    if (!at(t, i, Kind::Number)) {
      const auto& bad = tok_or_last(t, i);
      malformed("expected a bound value", bad.line, bad.column);
    }
    return sign * t[i++].number;
  }

  static double clamp_inf(double v)
  {
    if (v >= kInfiniteBoundThreshold) return kInfinity;
    if (v <= -kInfiniteBoundThreshold) return -kInfinity;
    return v;
  }

  void apply_bound(std::int32_t j, const std::string& op, double v, bool var_on_left)
  {
    v = clamp_inf(v);
    std::string eff = op;
    if (!var_on_left && op != "=") eff = op == "<=" ? ">=" : "<=";
    if (eff == "<=") {
      inst_.upper_bounds[j] = v;
    } else if (eff == ">=") {
      inst_.lower_bounds[j] = v;
    } else {
      inst_.lower_bounds[j] = inst_.upper_bounds[j] = v;
    }
  }

  void parse_bounds(const Tokens& t)
  {
    std::size_t i = 0;
    while (i < t.size()) {
      if (at(t, i, Kind::Ident)) {
        const std::int32_t j = column(t[i].text);
        ++i;
        if (at(t, i, Kind::Ident) && lower(t[i].text) == "free") {
          inst_.lower_bounds[j] = -kInfinity;
          inst_.upper_bounds[j] = kInfinity;
          ++i;
          continue;
        }
        if (!at(t, i, Kind::Sense)) {
          const auto& bad = tok_or_last(t, i);
          malformed("expected a bound operator", bad.line, bad.column);
        }
        const std::string op = t[i++].text;
        apply_bound(j, op, signed_number(t, i), true);
        continue;
      }
      const double v = signed_number(t, i);
      if (!at(t, i, Kind::Sense)) {
        const auto& bad = tok_or_last(t, i);
        malformed("expected a bound operator", bad.line, bad.column);
      }
      const std::string op1 = t[i++].text;
      if (!at(t, i, Kind::Ident)) {
        const auto& bad = tok_or_last(t, i);
        malformed("expected a variable name", bad.line, bad.column);
      }
      const std::int32_t j = column(t[i++].text);
      apply_bound(j, op1, v, false);
      // Two-sided form: lo <= x <= hi.
      if (at(t, i, Kind::Sense)) {
        const std::string op2 = t[i++].text;
        apply_bound(j, op2, signed_number(t, i), true);
      }
    }
  }

  void parse_types(const Tokens& t, bool binary)
  {
    for (const auto& tok : t) {
      if (tok.kind != Kind::Ident) malformed("expected a variable name", tok.line, tok.column);
      const std::int32_t j = column(tok.text);
      if (binary) {
        inst_.var_types[j] = VarType::Binary;
        inst_.lower_bounds[j] = std::max(inst_.lower_bounds[j], 0.0);
        inst_.upper_bounds[j] = std::min(inst_.upper_bounds[j], 1.0);
      } else if (inst_.var_types[j] == VarType::Continuous) {
        inst_.var_types[j] = VarType::Integer;
      }
    }
  }

  bool seen_objective_ = false;
  std::vector<LpToken> sections_[7];
  std::unordered_map<std::string, std::int32_t> cols_;
  std::unordered_map<std::string, std::size_t> row_labels_;
  MilpInstance inst_;
};

}  // namespace

MilpInstance read_lp(std::string_view text)
{
  return LpReader(text).read();
}

}  // namespace genbench::detail
