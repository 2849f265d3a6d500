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

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace algpot {

using Rational = mpq_class;
using Integer = mpz_class;
using Complex = std::complex<double>;

/// Exponent vector over all variables q_1..q_n, w_1..w_s (in that order).
using Monomial = std::vector<int>;

/// Graded order, ties broken lexicographically. Larger monomials print first.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Raised by numeric evaluation when a denominator vanishes at the point.
class PoleError : public std::runtime_error {
 public:
  PoleError(std::string what, std::string denominator)
      : std::runtime_error(std::move(what)), denominator_(std::move(denominator)) {}
  const std::string& denominator() const { return denominator_; }

 private:
  std::string denominator_;
};

/// Sparse multivariate polynomial with exact rational coefficients.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational, MonomialOrder>;

  explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, std::size_t index);
  static Polynomial monomial(const Monomial& m, const Rational& c);

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term value; only meaningful when is_constant().
  Rational constant_value() const;
  int total_degree() const;
  /// Degree in one variable.
  int degree_in(std::size_t var) const;
  bool depends_on(std::size_t var) const { return degree_in(var) > 0; }

  /// Adds c*m, dropping the term if the coefficient cancels.
  void add_term(const Monomial& m, const Rational& c);

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial scaled(const Rational& c) const;
  Polynomial pow(unsigned e) const;

  Polynomial derivative(std::size_t var) const;

  /// Componentwise minimum of exponents over all terms (the monomial content).
  Monomial min_exponents() const;
  /// Exact division by a monomial that divides every term.
  Polynomial divide_monomial(const Monomial& m) const;
  Polynomial multiply_monomial(const Monomial& m) const;
  /// Coefficient of the leading term in MonomialOrder.
  const Rational& leading_coefficient() const;

  Complex eval(std::span<const Complex> point) const;
  /// Sum of |term| at the point; the natural scale for cancellation tests.
  double abs_term_sum(std::span<const Complex> point) const;

  bool operator==(const Polynomial& o) const = default;

 private:
  std::size_t nvars_;
  TermMap terms_;
};

/// Exact multivariate rational expression num/den over the rationals.
///
/// Normal form: den has leading coefficient 1, num and den share no
/// monomial factor, and num is zero iff the expression is 0/1. Two
/// normalized expressions are equal iff their numerator and denominator
/// term maps are equal. No polynomial GCD beyond monomial content is taken.
class RatExpr {
 public:
  explicit RatExpr(std::size_t nvars = 0);
  RatExpr(const Polynomial& num);  // NOLINT(google-explicit-constructor)
  RatExpr(const Polynomial& num, const Polynomial& den);

  static RatExpr constant(std::size_t nvars, const Rational& c);
  static RatExpr variable(std::size_t nvars, std::size_t index);

  std::size_t nvars() const { return num_.nvars(); }
  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool depends_on(std::size_t var) const {
    return num_.depends_on(var) || den_.depends_on(var);
  }

  RatExpr operator-() const;
  friend RatExpr operator+(const RatExpr& a, const RatExpr& b);
  friend RatExpr operator-(const RatExpr& a, const RatExpr& b);
  friend RatExpr operator*(const RatExpr& a, const RatExpr& b);
  /// Throws std::domain_error on division by the zero expression.
  friend RatExpr operator/(const RatExpr& a, const RatExpr& b);
  RatExpr& operator+=(const RatExpr& o) { return *this = *this + o; }
  RatExpr& operator-=(const RatExpr& o) { return *this = *this - o; }
  RatExpr& operator*=(const RatExpr& o) { return *this = *this * o; }
  RatExpr pow(int e) const;

  /// Plain partial derivative in the given variable.
  RatExpr derivative(std::size_t var) const;

  /// Throws PoleError when the denominator vanishes numerically.
  Complex eval(std::span<const Complex> point) const;

  bool operator==(const RatExpr& o) const = default;

 private:
  void normalize();

  Polynomial num_;
  Polynomial den_;
};

std::string to_string(const Rational& r);
std::string to_string(const Polynomial& p, const std::vector<std::string>& names);
/// Prints in a form accepted by parse_expr; parse(print(e)) == e.
std::string to_string(const RatExpr& e, const std::vector<std::string>& names);

/// Integer power by repeated squaring; exact at zero.
Complex ipow(Complex x, int e);

}  // namespace algpot
