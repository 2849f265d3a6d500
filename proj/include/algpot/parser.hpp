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

#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "algpot/expr.hpp"

namespace algpot {

/// Syntax or validation error in a problem file or expression, 1-based position.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::string message_;
  int line_;
  int column_;
};

/// A potential on the variety cut out by generators G_1..G_s in the
/// variables q_1..q_n, w_1..w_s (in that order).
struct AlgebraicSetup {
  std::size_t n = 0;
  std::size_t s = 0;
  std::vector<std::string> names;  // n + s entries
  std::vector<RatExpr> generators; // s polynomial entries
  RatExpr potential;

  std::size_t nvars() const { return n + s; }
  std::span<const std::string> q_names() const { return {names.data(), n}; }
  std::span<const std::string> w_names() const { return {names.data() + n, s}; }

  /// Checks counts, name uniqueness and that every generator is polynomial.
  void check() const;
};

/// Parses an expression over the given variable names.
RatExpr parse_expr(std::string_view text, const std::vector<std::string>& names);

AlgebraicSetup parse_setup(std::string_view text);
AlgebraicSetup load_setup(const std::string& path);

/// Problem-file text that parse_setup reads back to an equal setup.
std::string to_problem_text(const AlgebraicSetup& setup);

/// Evaluates with the setup's variable names in any pole diagnostic.
Complex eval(const AlgebraicSetup& setup, const RatExpr& expr, std::span<const Complex> point);

}  // namespace algpot
