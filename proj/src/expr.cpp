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

#include "algpot/expr.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

namespace algpot {

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
  const int da = std::accumulate(a.begin(), a.end(), 0);
  const int db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

Complex ipow(Complex x, int e) {
  if (e < 0) return Complex(1.0) / ipow(x, -e);
  Complex result(1.0);
  while (e > 0) {
    if (e & 1) result *= x;
    x *= x;
    e >>= 1;
  }
  return result;
}

// ---------------------------------------------------------------- Polynomial

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(Monomial(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
  assert(index < nvars);
  Monomial m(nvars, 0);
  m[index] = 1;
  return monomial(m, Rational(1));
}

Polynomial Polynomial::monomial(const Monomial& m, const Rational& c) {
  Polynomial p(m.size());
  p.add_term(m, c);
  return p;
}

bool Polynomial::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& m = terms_.begin()->first;
  return std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
}

Rational Polynomial::constant_value() const {
  if (terms_.empty()) return Rational(0);
  return terms_.begin()->second;
}

int Polynomial::total_degree() const {
  if (terms_.empty()) return 0;
  const auto& m = terms_.begin()->first;
  return std::accumulate(m.begin(), m.end(), 0);
}

int Polynomial::degree_in(std::size_t var) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
  return d;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  assert(m.size() == nvars_);
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  assert(a.nvars_ == b.nvars_);
  Polynomial r(a.nvars_);
  Monomial m(a.nvars_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      r.add_term(m, ca * cb);
    }
  }
  return r;
}

Polynomial Polynomial::scaled(const Rational& c) const {
  if (c == 0) return Polynomial(nvars_);
  Polynomial r = *this;
  for (auto& [m, coeff] : r.terms_) coeff *= c;
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(nvars_, Rational(1));
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  Polynomial r(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Monomial dm = m;
    dm[var] -= 1;
    r.add_term(dm, c * m[var]);
  }
  return r;
}

Monomial Polynomial::min_exponents() const {
  if (terms_.empty()) return Monomial(nvars_, 0);
  Monomial g = terms_.begin()->first;
  for (const auto& [m, c] : terms_) {
    for (std::size_t i = 0; i < nvars_; ++i) g[i] = std::min(g[i], m[i]);
  }
  return g;
}

Polynomial Polynomial::divide_monomial(const Monomial& d) const {
  Polynomial r(nvars_);
  for (const auto& [m, c] : terms_) {
    Monomial q = m;
    for (std::size_t i = 0; i < nvars_; ++i) {
      q[i] -= d[i];
      assert(q[i] >= 0);
    }
    r.terms_.emplace(std::move(q), c);
  }
  return r;
}

Polynomial Polynomial::multiply_monomial(const Monomial& d) const {
  Polynomial r(nvars_);
  for (const auto& [m, c] : terms_) {
    Monomial q = m;
    for (std::size_t i = 0; i < nvars_; ++i) q[i] += d[i];
    r.terms_.emplace(std::move(q), c);
  }
  return r;
}

const Rational& Polynomial::leading_coefficient() const {
  assert(!terms_.empty());
  return terms_.begin()->second;
}

namespace {

Complex monomial_value(const Monomial& m, std::span<const Complex> point) {
  Complex v(1.0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] != 0) v *= ipow(point[i], m[i]);
  }
  return v;
}

}  // namespace

Complex Polynomial::eval(std::span<const Complex> point) const {
  assert(point.size() >= nvars_);
  Complex sum(0.0);
  for (const auto& [m, c] : terms_) sum += c.get_d() * monomial_value(m, point);
  return sum;
}

double Polynomial::abs_term_sum(std::span<const Complex> point) const {
  double sum = 0.0;
  for (const auto& [m, c] : terms_) {
    sum += std::abs(c.get_d() * monomial_value(m, point));
  }
  return sum;
}

// ------------------------------------------------------------------- RatExpr

RatExpr::RatExpr(std::size_t nvars)
    : num_(nvars), den_(Polynomial::constant(nvars, Rational(1))) {}

RatExpr::RatExpr(const Polynomial& num)
    : num_(num), den_(Polynomial::constant(num.nvars(), Rational(1))) {}

RatExpr::RatExpr(const Polynomial& num, const Polynomial& den) : num_(num), den_(den) {
  assert(num.nvars() == den.nvars());
  if (den_.is_zero()) throw std::domain_error("division by the zero expression");
  normalize();
}

RatExpr RatExpr::constant(std::size_t nvars, const Rational& c) {
  return RatExpr(Polynomial::constant(nvars, c));
}

RatExpr RatExpr::variable(std::size_t nvars, std::size_t index) {
  return RatExpr(Polynomial::variable(nvars, index));
}

void RatExpr::normalize() {
  const std::size_t n = num_.nvars();
  if (num_.is_zero()) {
    den_ = Polynomial::constant(n, Rational(1));
    return;
  }
  Monomial content = num_.min_exponents();
  const Monomial den_content = den_.min_exponents();
  bool any = false;
  for (std::size_t i = 0; i < n; ++i) {
    content[i] = std::min(content[i], den_content[i]);
    any = any || content[i] > 0;
  }
  if (any) {
    num_ = num_.divide_monomial(content);
    den_ = den_.divide_monomial(content);
  }
  if (den_.is_constant()) {
    num_ = num_.scaled(1 / den_.constant_value());
    den_ = Polynomial::constant(n, Rational(1));
    return;
  }
  // num == c * den collapses to the constant c.
  if (num_.size() == den_.size()) {
    const Rational ratio = num_.leading_coefficient() / den_.leading_coefficient();
    bool proportional = true;
    auto it = num_.terms().begin();
    for (const auto& [m, c] : den_.terms()) {
      if (it->first != m || it->second != ratio * c) {
        proportional = false;
        break;
      }
      ++it;
    }
    if (proportional) {
      num_ = Polynomial::constant(n, ratio);
      den_ = Polynomial::constant(n, Rational(1));
      return;
    }
  }
  const Rational lead = den_.leading_coefficient();
  if (lead != 1) {
    const Rational inv = 1 / lead;
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

RatExpr RatExpr::operator-() const {
  RatExpr r = *this;
  r.num_ = -r.num_;
  return r;
}

RatExpr operator+(const RatExpr& a, const RatExpr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return RatExpr(a.num_ + b.num_, a.den_);
  // Single-term denominators combine over their monomial lcm.
  if (a.den_.size() == 1 && b.den_.size() == 1) {
    const auto& [ma, ca] = *a.den_.terms().begin();
    const auto& [mb, cb] = *b.den_.terms().begin();
    Monomial lcm(ma.size());
    Monomial fa(ma.size());
    Monomial fb(ma.size());
    for (std::size_t i = 0; i < lcm.size(); ++i) {
      lcm[i] = std::max(ma[i], mb[i]);
      fa[i] = lcm[i] - ma[i];
      fb[i] = lcm[i] - mb[i];
    }
    Polynomial num = a.num_.multiply_monomial(fa).scaled(1 / ca) +
                     b.num_.multiply_monomial(fb).scaled(1 / cb);
    return RatExpr(num, Polynomial::monomial(lcm, Rational(1)));
  }
  return RatExpr(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatExpr operator-(const RatExpr& a, const RatExpr& b) { return a + (-b); }

RatExpr operator*(const RatExpr& a, const RatExpr& b) {
  if (a.is_zero() || b.is_zero()) return RatExpr(a.nvars());
  if (a.den_.is_constant() && b.den_.is_constant()) return RatExpr(a.num_ * b.num_);
  return RatExpr(a.num_ * b.num_, a.den_ * b.den_);
}

RatExpr operator/(const RatExpr& a, const RatExpr& b) {
  if (b.is_zero()) throw std::domain_error("division by the zero expression");
  return RatExpr(a.num_ * b.den_, a.den_ * b.num_);
}

RatExpr RatExpr::pow(int e) const {
  if (e == 0) return constant(nvars(), Rational(1));
  if (e < 0) {
    if (is_zero()) throw std::domain_error("negative power of the zero expression");
    return RatExpr(den_.pow(static_cast<unsigned>(-e)), num_.pow(static_cast<unsigned>(-e)));
  }
  if (den_.is_constant()) return RatExpr(num_.pow(static_cast<unsigned>(e)));
  return RatExpr(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
}

RatExpr RatExpr::derivative(std::size_t var) const {
  if (den_.is_constant()) return RatExpr(num_.derivative(var));
  const Polynomial dn = num_.derivative(var);
  const Polynomial dd = den_.derivative(var);
  if (dd.is_zero()) return RatExpr(dn, den_);
  return RatExpr(dn * den_ - num_ * dd, den_ * den_);
}

Complex RatExpr::eval(std::span<const Complex> point) const {
  const Complex n = num_.eval(point);
  if (den_.is_constant()) return n;
  const Complex d = den_.eval(point);
  const double scale = den_.abs_term_sum(point);
  if (d == Complex(0.0) || std::abs(d) <= 1e-14 * scale || !std::isfinite(std::abs(d))) {
    std::vector<std::string> names(nvars());
    for (std::size_t i = 0; i < names.size(); ++i) names[i] = "x" + std::to_string(i + 1);
    const std::string den_str = to_string(den_, names);
    throw PoleError("pole at point: denominator " + den_str + " vanishes", den_str);
  }
  return n / d;
}

// ------------------------------------------------------------------ printing

std::string to_string(const Rational& r) { return r.get_str(); }

std::string to_string(const Polynomial& p, const std::vector<std::string>& names) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    bool has_var = false;
    std::ostringstream vars;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (has_var) vars << '*';
      vars << names.at(i);
      if (m[i] > 1) vars << '^' << m[i];
      has_var = true;
    }
    if (!has_var) {
      os << to_string(mag);
    } else if (mag == 1) {
      os << vars.str();
    } else {
      os << to_string(mag) << '*' << vars.str();
    }
  }
  return os.str();
}

std::string to_string(const RatExpr& e, const std::vector<std::string>& names) {
  if (e.is_polynomial()) return to_string(e.numerator(), names);
  return "(" + to_string(e.numerator(), names) + ")/(" + to_string(e.denominator(), names) + ")";
}

}  // namespace algpot
