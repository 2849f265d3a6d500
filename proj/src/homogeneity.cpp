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

#include <algorithm>
#include <numeric>

#include "algpot/calculus.hpp"

namespace algpot {

namespace {

using Row = std::vector<Rational>;

// Weighted degree of a monomial as a linear form in (d1, k_1..k_s, d2).
Row degree_form(const Monomial& m, std::size_t n, std::size_t s) {
  Row row(s + 2, Rational(0));
  for (std::size_t i = 0; i < n; ++i) row[0] += m[i];
  for (std::size_t j = 0; j < s; ++j) row[1 + j] = m[n + j];
  return row;
}

Row difference(const Row& a, const Row& b) {
  Row r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

// Consecutive monomials of one polynomial share a weighted degree.
void add_equal_degree_rows(const Polynomial& p, std::size_t n, std::size_t s, std::vector<Row>& rows) {
  const Monomial* prev = nullptr;
  for (const auto& [m, c] : p.terms()) {
    if (prev != nullptr) rows.push_back(difference(degree_form(*prev, n, s), degree_form(m, n, s)));
    prev = &m;
  }
}

// Nullspace basis of the rational matrix, one vector per free column.
std::vector<Row> nullspace(std::vector<Row> a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    const Rational inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<Row> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (std::find(pivots.begin(), pivots.end(), f) != pivots.end()) continue;
    Row v(cols, Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Integer> to_coprime_integers(const Row& v) {
  Integer lcm = 1;
  for (const auto& x : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Integer> out;
  Integer g = 0;
  for (const auto& x : v) {
    Integer z = x.get_num() * (lcm / x.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    out.push_back(z);
  }
  if (g != 0) {
    for (auto& z : out) z /= g;
  }
  if (!out.empty() && out[0] < 0) {
    for (auto& z : out) z = -z;
  }
  return out;
}

std::int64_t to_i64(const Integer& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("homogeneity weight out of range");
  return z.get_si();
}

}  // namespace

std::optional<std::int64_t> Homogeneity::integer_degree() const {
  if (degree.get_den() != 1 || !degree.get_num().fits_slong_p()) return std::nullopt;
  return degree.get_num().get_si();
}

CVector scale_point(const Homogeneity& h, std::size_t n, const CVector& x, Complex alpha) {
  CVector y = x;
  const Complex aq = ipow(alpha, static_cast<int>(h.d1));
  for (std::size_t i = 0; i < n; ++i) y(static_cast<Eigen::Index>(i)) *= aq;
  for (std::size_t j = 0; j < h.kw.size(); ++j) {
    y(static_cast<Eigen::Index>(n + j)) *= ipow(alpha, static_cast<int>(h.kw[j]));
  }
  return y;
}

HomogeneityResult detect_homogeneity(const AlgebraicSetup& setup, const JacobianData& jd,
                                     std::uint64_t seed, int samples) {
  const std::size_t n = setup.n;
  const std::size_t s = setup.s;
  const std::size_t cols = s + 2;
  std::vector<Row> rows;
  for (const auto& g : setup.generators) add_equal_degree_rows(g.numerator(), n, s, rows);
  const RatExpr& v = setup.potential;
  add_equal_degree_rows(v.numerator(), n, s, rows);
  add_equal_degree_rows(v.denominator(), n, s, rows);
  if (!v.is_zero()) {
    Row r = difference(degree_form(v.numerator().terms().begin()->first, n, s),
                       degree_form(v.denominator().terms().begin()->first, n, s));
    r[s + 1] = -1;
    rows.push_back(std::move(r));
  }

  HomogeneityResult result;
  const std::vector<Row> basis = nullspace(rows, cols);
  const auto chosen = std::find_if(basis.begin(), basis.end(), [](const Row& b) { return b[0] != 0; });
  if (chosen == basis.end()) {
    result.message = "not homogeneous: no weights with nonzero q-weight d1 exist";
    return result;
  }
  const std::vector<Integer> w = to_coprime_integers(*chosen);
  Homogeneity h;
  h.d1 = to_i64(w[0]);
  for (std::size_t j = 0; j < s; ++j) h.kw.push_back(to_i64(w[1 + j]));
  h.d2 = to_i64(w[s + 1]);
  h.degree = Rational(h.d2, h.d1);
  h.degree.canonicalize();
  h.unique = basis.size() == 1;

  // Numeric confirmation of the scaling identity on S.
  int checked = 0;
  for (int t = 0; checked < samples && t < 20 * samples; ++t) {
    auto rng = make_stream(seed, static_cast<std::uint64_t>(t));
    const auto x = sample_point(setup, jd, rng);
    if (!x) continue;
    const double mag = 0.5 + std::generate_canonical<double, 53>(rng);
    const double arg = 6.283185307179586 * std::generate_canonical<double, 53>(rng);
    const Complex alpha = std::polar(mag, arg);
    const CVector y = scale_point(h, n, *x, alpha);
    Complex v0;
    Complex v1;
    try {
      v0 = v.eval(as_span(*x));
      v1 = v.eval(as_span(y));
    } catch (const PoleError&) {
      continue;
    }
    ++checked;
    const Complex expected = ipow(alpha, static_cast<int>(h.d2)) * v0;
    const double scale = std::max({std::abs(expected), std::abs(v1), 1e-300});
    const double g_res = max_abs(eval_generators(setup, as_span(y)));
    double g_scale = 1.0;
    for (std::size_t i = 0; i < s; ++i) {
      g_scale = std::max(g_scale, setup.generators[i].numerator().abs_term_sum(as_span(y)));
    }
    if (std::abs(v1 - expected) > 1e-9 * scale || g_res > 1e-9 * g_scale) {
      throw std::runtime_error("numeric verification failed: weights (d1=" + std::to_string(h.d1) +
                               ", d2=" + std::to_string(h.d2) +
                               ") do not satisfy the scaling identity on sampled points");
    }
  }
  result.homogeneity = std::move(h);
  return result;
}

}  // namespace algpot
