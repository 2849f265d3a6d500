// Copyright 2026 The algpot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "algpot/parser.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <unordered_map>

namespace algpot {

ParseError::ParseError(const std::string& message, int line, int column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + message),
      message_(message),
      line_(line),
      column_(column) {}

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Recursive descent over one expression:
//   expr   := term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := ('-'|'+') unary | power
//   power  := atom ('^' exponent)?
//   atom   := integer | identifier | '(' expr ')'
//   exponent := '-'? integer | '(' '-'? integer ')'
class ExprParser {
 public:
  ExprParser(std::string_view text, const std::unordered_map<std::string, std::size_t>& index,
             std::size_t nvars, int line, int column0)
      : text_(text), index_(index), nvars_(nvars), line_(line), column0_(column0) {}

  RatExpr parse() {
    RatExpr e = expr();
    skip_ws();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line_, column0_ + static_cast<int>(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RatExpr expr() {
    RatExpr lhs = term();
    while (true) {
      if (accept('+')) {
        lhs = lhs + term();
      } else if (accept('-')) {
        lhs = lhs - term();
      } else {
        return lhs;
      }
    }
  }

  RatExpr term() {
    RatExpr lhs = unary();
    while (true) {
      if (accept('*')) {
        lhs = lhs * unary();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        RatExpr rhs = unary();
        if (rhs.is_zero()) {
          pos_ = at;
          fail("division by zero");
        }
        lhs = lhs / rhs;
      } else {
        return lhs;
      }
    }
  }

  RatExpr unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  RatExpr power() {
    RatExpr base = atom();
    if (!accept('^')) return base;
    const std::size_t at = pos_;
    const long e = exponent();
    if (e < std::numeric_limits<int>::min() / 2 || e > std::numeric_limits<int>::max() / 2) {
      pos_ = at;
      fail("exponent out of range");
    }
    if (e < 0 && base.is_zero()) {
      pos_ = at;
      fail("negative power of zero");
    }
    return base.pow(static_cast<int>(e));
  }

  long exponent() {
    const bool paren = accept('(');
    const bool negative = accept('-');
    skip_ws();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      fail("'^' expects an integer exponent");
    }
    long value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      if (value > 1'000'000) fail("exponent out of range");
      ++pos_;
    }
    if (paren && !accept(')')) fail("expected ')'");
    return negative ? -value : value;
  }

  RatExpr atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      RatExpr e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E')) {
        fail("only integer and p/q rational literals are supported");
      }
      const Integer value(std::string(text_.substr(start, pos_ - start)));
      return RatExpr::constant(nvars_, Rational(value));
    }
    if (is_ident_start(c)) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      const auto it = index_.find(name);
      if (it == index_.end()) {
        pos_ = start;
        fail("undeclared variable '" + name + "'");
      }
      return RatExpr::variable(nvars_, it->second);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const std::unordered_map<std::string, std::size_t>& index_;
  std::size_t nvars_;
  int line_;
  int column0_;
  std::size_t pos_ = 0;
};

std::unordered_map<std::string, std::size_t> make_index(const std::vector<std::string>& names) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < names.size(); ++i) index.emplace(names[i], i);
  return index;
}

struct Line {
  int number;
  std::string text;  // comment stripped
};

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream is{std::string(s)};
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

}  // namespace

RatExpr parse_expr(std::string_view text, const std::vector<std::string>& names) {
  const auto index = make_index(names);
  return ExprParser(text, index, names.size(), 1, 1).parse();
}

void AlgebraicSetup::check() const {
  if (names.size() != n + s) throw std::invalid_argument("variable table size mismatch");
  if (generators.size() != s) throw std::invalid_argument("expected one generator per extension variable");
  for (std::size_t i = 0; i < names.size(); ++i) {
    for (std::size_t j = i + 1; j < names.size(); ++j) {
      if (names[i] == names[j]) throw std::invalid_argument("duplicate variable '" + names[i] + "'");
    }
  }
  for (std::size_t i = 0; i < s; ++i) {
    if (generators[i].nvars() != nvars()) throw std::invalid_argument("generator arity mismatch");
    if (!generators[i].is_polynomial()) {
      throw std::invalid_argument("generator for '" + names[n + i] + "' contains a quotient");
    }
  }
  if (potential.nvars() != nvars()) throw std::invalid_argument("potential arity mismatch");
}

AlgebraicSetup parse_setup(std::string_view text) {
  std::vector<Line> lines;
  {
    int number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      ++number;
      std::string line(text.substr(start, end - start));
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back({number, line});
      start = end + 1;
    }
  }

  // First pass: declarations, so that ext generators may refer to any
  // extension variable.
  std::vector<std::string> qnames;
  std::vector<std::string> wnames;
  struct Pending {
    int line;
    int column;
    std::string body;
  };
  std::vector<Pending> ext_bodies;
  std::optional<Pending> potential_body;
  bool saw_vars = false;

  auto check_name = [&](const std::string& name, int line, int column) {
    if (!is_ident_start(name[0]) ||
        !std::all_of(name.begin(), name.end(), [](char c) { return is_ident_char(c); })) {
      throw ParseError("invalid variable name '" + name + "'", line, column);
    }
    const bool dup = std::find(qnames.begin(), qnames.end(), name) != qnames.end() ||
                     std::find(wnames.begin(), wnames.end(), name) != wnames.end();
    if (dup) throw ParseError("duplicate variable name '" + name + "'", line, column);
  };

  for (const auto& [number, raw] : lines) {
    const std::size_t first = raw.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    const std::size_t kw_end = raw.find_first_of(" \t", first);
    const std::string keyword = raw.substr(first, kw_end == std::string::npos ? std::string::npos
                                                                              : kw_end - first);
    const std::size_t rest = kw_end == std::string::npos ? raw.size() : kw_end;
    const int col_first = static_cast<int>(first) + 1;
    if (keyword == "vars") {
      if (saw_vars) throw ParseError("'vars' declared twice", number, col_first);
      saw_vars = true;
      std::size_t pos = rest;
      while (true) {
        pos = raw.find_first_not_of(" \t", pos);
        if (pos == std::string::npos) break;
        std::size_t end = raw.find_first_of(" \t", pos);
        if (end == std::string::npos) end = raw.size();
        const std::string name = raw.substr(pos, end - pos);
        check_name(name, number, static_cast<int>(pos) + 1);
        qnames.push_back(name);
        pos = end;
      }
      if (qnames.empty()) throw ParseError("'vars' needs at least one variable", number, col_first);
    } else if (keyword == "ext") {
      if (!saw_vars) throw ParseError("'ext' before 'vars'", number, col_first);
      const std::size_t colon = raw.find(':', rest);
      if (colon == std::string::npos) throw ParseError("expected 'ext <name> : <polynomial>'", number, col_first);
      const auto words = split_words(std::string_view(raw).substr(rest, colon - rest));
      if (words.size() != 1) throw ParseError("expected one extension variable name before ':'", number, static_cast<int>(rest) + 1);
      const std::size_t name_pos = raw.find(words[0], rest);
      check_name(words[0], number, static_cast<int>(name_pos) + 1);
      wnames.push_back(words[0]);
      ext_bodies.push_back({number, static_cast<int>(colon) + 2, raw.substr(colon + 1)});
    } else if (keyword == "potential") {
      if (!saw_vars) throw ParseError("'potential' before 'vars'", number, col_first);
      if (potential_body) throw ParseError("'potential' declared twice", number, col_first);
      potential_body = Pending{number, static_cast<int>(rest) + 1, raw.substr(rest)};
    } else {
      throw ParseError("unknown directive '" + keyword + "'", number, col_first);
    }
  }
  if (!saw_vars) throw ParseError("missing 'vars' declaration", 1, 1);
  if (!potential_body) throw ParseError("missing 'potential' declaration", lines.back().number, 1);

  AlgebraicSetup setup;
  setup.n = qnames.size();
  setup.s = wnames.size();
  setup.names = qnames;
  setup.names.insert(setup.names.end(), wnames.begin(), wnames.end());
  const auto index = make_index(setup.names);
  const std::size_t nv = setup.names.size();

  for (const auto& body : ext_bodies) {
    RatExpr g = ExprParser(body.body, index, nv, body.line, body.column).parse();
    if (!g.is_polynomial()) throw ParseError("generator contains a quotient", body.line, body.column);
    if (g.is_zero()) throw ParseError("generator is identically zero", body.line, body.column);
    setup.generators.push_back(std::move(g));
  }
  setup.potential =
      ExprParser(potential_body->body, index, nv, potential_body->line, potential_body->column).parse();
  setup.check();
  return setup;
}

AlgebraicSetup load_setup(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open problem file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_setup(ss.str());
}

std::string to_problem_text(const AlgebraicSetup& setup) {
  std::ostringstream os;
  os << "vars";
  for (const auto& name : setup.q_names()) os << ' ' << name;
  os << '\n';
  for (std::size_t i = 0; i < setup.s; ++i) {
    os << "ext " << setup.names[setup.n + i] << " : " << to_string(setup.generators[i], setup.names)
       << '\n';
  }
  os << "potential " << to_string(setup.potential, setup.names) << '\n';
  return os.str();
}

Complex eval(const AlgebraicSetup& setup, const RatExpr& expr, std::span<const Complex> point) {
  if (point.size() != setup.nvars()) {
    throw std::invalid_argument("point has " + std::to_string(point.size()) + " coordinates, expected " +
                                std::to_string(setup.nvars()));
  }
  try {
    return expr.eval(point);
  } catch (const PoleError&) {
    const std::string den = to_string(expr.denominator(), setup.names);
    throw PoleError("pole at point: denominator " + den + " vanishes", den);
  }
}

}  // namespace algpot
