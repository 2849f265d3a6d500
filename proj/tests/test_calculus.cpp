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

#include <doctest.h>

#include "algpot/calculus.hpp"
#include "algpot/nbody.hpp"
#include "support.hpp"

using namespace algpot;
using testdata::Branch;

namespace {

// Gradient and Hessian against central differences of the explicit branch.
void check_against_branch(const Branch& b, std::uint64_t seed) {
  const auto jd = jacobian(b.setup);
  const auto grad = grad_q(b.setup.potential, b.setup, jd);
  const auto hess = hess_q(b.setup.potential, b.setup, jd);
  const std::size_t n = b.setup.n;
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  double asym = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto q = b.sample_q(rng);
    const CVector x = b.point(q);
    for (std::size_t k = 0; k < n; ++k) {
      worst = std::max(worst, testdata::rel_err(grad[k].eval(as_span(x)), testdata::fd_first(b, q, k)));
      for (std::size_t l = 0; l < n; ++l) {
        worst = std::max(worst, testdata::rel_err(hess[k][l].eval(as_span(x)), testdata::fd_second(b, q, k, l)));
        asym = std::max(asym, std::abs(hess[k][l].eval(as_span(x)) - hess[l][k].eval(as_span(x))));
      }
    }
  }
  CHECK(worst <= 1e-6);
  CHECK(asym <= 1e-9);
}

}  // namespace

TEST_SUITE("calculus") {
  TEST_CASE("derive_q examples") {
    const auto s = parse_setup(testdata::kRadialCubic);
    const auto jd = jacobian(s);
    CHECK(derive_q(s.potential, s, jd, 0) == parse_expr("3*q1*w1", s.names));
    CHECK(derive_q(parse_expr("q1", s.names), s, jd, 0) == parse_expr("1", s.names));
    const auto dw = derivation_table(jd).dwdq;
    CHECK(dw[0][0] == parse_expr("q1/w1", s.names));

    const auto s5 = parse_setup(testdata::kSqrtBranch);
    const auto jd5 = jacobian(s5);
    CHECK(derive_q(s5.potential, s5, jd5, 1) == parse_expr("2*q2", s5.names));
  }

  TEST_CASE("grad_q examples") {
    const auto s = parse_setup(testdata::kRadialCubic);
    const auto jd = jacobian(s);
    const auto g = grad_q(s.potential, s, jd);
    CHECK(g[0] == parse_expr("3*w1*q1", s.names));
    CHECK(g[1] == parse_expr("3*w1*q2", s.names));
    const auto c = parse_setup("vars q1 q2\next w1 : w1^2 - q1\npotential 7/3\n");
    for (const auto& e : grad_q(c.potential, c, jacobian(c))) CHECK(e.is_zero());
  }

  TEST_CASE("two-body gradient follows the inverse-square pattern") {
    const auto b = testdata::two_body_branch();
    const auto jd = jacobian(b.setup);
    const auto g = grad_q(b.setup.potential, b.setup, jd);
    std::mt19937_64 rng(4);
    for (int t = 0; t < 10; ++t) {
      const auto q = b.sample_q(rng);
      const CVector x = b.point(q);
      const double r = x(4).real();
      for (std::size_t k = 0; k < 4; ++k) {
        const std::size_t a = k % 2;
        const double diff = k < 2 ? q[a] - q[a + 2] : q[a + 2] - q[a];
        CHECK(testdata::rel_err(g[k].eval(as_span(x)), -diff / (r * r * r)) <= 1e-12);
        CHECK(testdata::rel_err(g[k].eval(as_span(x)), testdata::fd_first(b, q, k)) <= 1e-6);
      }
    }
  }

  TEST_CASE("hess_q examples") {
    const auto s = parse_setup(testdata::kRadialCubic);
    const auto jd = jacobian(s);
    const auto h = hess_q(s.potential, s, jd);
    std::mt19937_64 rng(2);
    for (int t = 0; t < 10; ++t) {
      const auto x = sample_point(s, jd, rng);
      REQUIRE(x);
      const Complex w = (*x)(2);
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          const Complex want = 3.0 * w * (i == j ? 1.0 : 0.0) + 3.0 * (*x)(i) * (*x)(j) / w;
          CHECK(std::abs(h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].eval(as_span(*x)) - want) <=
                1e-10 * std::max(1.0, std::abs(want)));
        }
      }
    }
    const auto plain = parse_setup("vars q1 q2\npotential q1^2 + q2^2\n");
    const auto hp = hess_q(plain.potential, plain, jacobian(plain));
    CHECK(hp[0][0] == parse_expr("2", plain.names));
    CHECK(hp[1][1] == parse_expr("2", plain.names));
    CHECK(hp[0][1].is_zero());

    const auto s5 = parse_setup(testdata::kSqrtBranch);
    const auto h5 = hess_q(s5.potential, s5, jacobian(s5));
    CHECK(h5[1][1] == parse_expr("2", s5.names));
    CHECK(h5[0][1].is_zero());
  }

  TEST_CASE("finite-difference oracle: radial cubic") { check_against_branch(testdata::radial_cubic_branch(), 21); }
  TEST_CASE("finite-difference oracle: sqrt branch") { check_against_branch(testdata::sqrt_branch(), 22); }
  TEST_CASE("finite-difference oracle: two extensions") { check_against_branch(testdata::two_ext_branch(), 23); }
  TEST_CASE("finite-difference oracle: two bodies") { check_against_branch(testdata::two_body_branch(), 24); }

  TEST_CASE("symbolic and numeric derivative routes agree") {
    for (const char* text : {testdata::kRadialCubic, testdata::kTwoExt, testdata::kSqrtBranch}) {
      const auto s = parse_setup(text);
      const auto jd = jacobian(s);
      const PotentialDerivatives sym(s, jd, PotentialDerivatives::Mode::kSymbolic);
      const PotentialDerivatives num(s, jd, PotentialDerivatives::Mode::kNumeric);
      CHECK(sym.symbolic());
      CHECK_FALSE(num.symbolic());
      std::mt19937_64 rng(8);
      for (int t = 0; t < 10; ++t) {
        const auto x = sample_point(s, jd, rng);
        REQUIRE(x);
        const auto a = sym.at(as_span(*x));
        const auto b = num.at(as_span(*x));
        const double scale = 1.0 + a.hessian.cwiseAbs().maxCoeff();
        CHECK((a.grad - b.grad).cwiseAbs().maxCoeff() <= 1e-10 * scale);
        CHECK((a.hessian - b.hessian).cwiseAbs().maxCoeff() <= 1e-9 * scale);
        CHECK((a.dwdq - b.dwdq).cwiseAbs().maxCoeff() <= 1e-10 * scale);
        CHECK((a.grad_jacobian - b.grad_jacobian).cwiseAbs().maxCoeff() <= 1e-9 * scale);
      }
    }
  }

  TEST_CASE("numeric route on the four-body setup") {
    NBodyConfig cfg;
    cfg.n = 4;
    cfg.masses = {1, 2, 3, 4};
    const auto s = build(cfg);
    const auto jd = jacobian(s);
    const PotentialDerivatives pd(s, jd);
    CHECK_FALSE(pd.symbolic());
    CHECK_THROWS_AS(grad_q(s.potential, s, jd), std::logic_error);
    std::mt19937_64 rng(5);
    const auto x = sample_point(s, jd, rng);
    REQUIRE(x);
    const auto d = pd.at(as_span(*x));
    CHECK((d.hessian - d.hessian.transpose()).cwiseAbs().maxCoeff() <= 1e-9 * (1.0 + d.hessian.norm()));
  }

  TEST_CASE("Euler identity at random points") {
    for (const char* text : {testdata::kRadialCubic}) {
      const auto s = parse_setup(text);
      const auto jd = jacobian(s);
      const PotentialDerivatives pd(s, jd);
      std::mt19937_64 rng(12);
      for (int t = 0; t < 10; ++t) {
        const auto x = sample_point(s, jd, rng);
        REQUIRE(x);
        const auto d = pd.at(as_span(*x));
        const CVector lhs = d.hessian * x->head(2);
        CHECK((lhs - 2.0 * d.grad).norm() <= 1e-8 * (1.0 + d.grad.norm()));
      }
    }
    NBodyConfig cfg;
    cfg.masses = {1, 1, 2};
    const auto s = build(cfg);
    const auto jd = jacobian(s);
    const PotentialDerivatives pd(s, jd);
    std::mt19937_64 rng(13);
    for (int t = 0; t < 5; ++t) {
      const auto x = sample_point(s, jd, rng);
      REQUIRE(x);
      const auto d = pd.at(as_span(*x));
      const CVector lhs = d.hessian * x->head(6);
      CHECK((lhs + 2.0 * d.grad).norm() <= 1e-8 * (1.0 + d.grad.norm()));
    }
  }

  TEST_CASE("sigma(V)") {
    const auto s = parse_setup(testdata::kRadialCubic);
    const auto jd = jacobian(s);
    CVector a(3);
    a << 3.0, 4.0, 5.0;
    CHECK_FALSE(in_sigma_v(s.potential, jd, make_point(s, jd, a)));
    const auto s5 = parse_setup(testdata::kSqrtBranch);
    const auto jd5 = jacobian(s5);
    CVector b(3);
    b << 0.0, 1.0, 0.0;
    CHECK(in_sigma_v(s5.potential, jd5, make_point(s5, jd5, b)));
    const auto pole = parse_setup("vars q1 q2\next w1 : w1^2 - q1\npotential 1/(q2 - 1) + w1\n");
    const auto jdp = jacobian(pole);
    CVector c(3);
    c << 4.0, 1.0, 2.0;
    CHECK(in_sigma_v(pole.potential, jdp, make_point(pole, jdp, c)));
    c << 4.0, 2.0, 2.0;
    CHECK_FALSE(in_sigma_v(pole.potential, jdp, make_point(pole, jdp, c)));
  }

  TEST_CASE("homogeneity examples") {
    const auto s = parse_setup(testdata::kRadialCubic);
    const auto h = detect_homogeneity(s, jacobian(s));
    REQUIRE(h.homogeneity);
    CHECK(h.homogeneity->d1 == 1);
    CHECK(h.homogeneity->d2 == 3);
    CHECK(h.homogeneity->kw == std::vector<std::int64_t>{1});
    CHECK(h.homogeneity->integer_degree() == 3);

    NBodyConfig cfg;
    cfg.masses = {1, 1, 1};
    const auto nb = build(cfg);
    const auto hn = detect_homogeneity(nb, jacobian(nb));
    REQUIRE(hn.homogeneity);
    CHECK(hn.homogeneity->d1 == 1);
    CHECK(hn.homogeneity->d2 == -1);
    CHECK(hn.homogeneity->kw == std::vector<std::int64_t>{1, 1, 1});

    const auto mixed = parse_setup("vars q1 q2\npotential q1^2 + q2\n");
    CHECK_FALSE(detect_homogeneity(mixed, jacobian(mixed)).homogeneity);
    const auto s5 = parse_setup(testdata::kSqrtBranch);
    CHECK_FALSE(detect_homogeneity(s5, jacobian(s5)).homogeneity);
  }

  TEST_CASE("weighted homogeneity with d1 > 1 and non-integer degree") {
    // w1 has weight 3 when q has weight 2: w1^2 = q1^3.
    const auto s = parse_setup("vars q1 q2\next w1 : w1^2 - q1^3 - q1*q2^2\npotential w1\n");
    const auto h = detect_homogeneity(s, jacobian(s));
    REQUIRE(h.homogeneity);
    CHECK(h.homogeneity->d1 == 2);
    CHECK(h.homogeneity->kw == std::vector<std::int64_t>{3});
    CHECK(h.homogeneity->d2 == 3);
    CHECK(h.homogeneity->degree == Rational(3, 2));
    CHECK_FALSE(h.homogeneity->integer_degree());
  }

  TEST_CASE("homogeneity is unchanged by scaling the generators") {
    const auto a = parse_setup("vars q1 q2\next w1 : w1^2 - q1^2 - q2^2\npotential w1^3 + q1^3\n");
    const auto b = parse_setup("vars q1 q2\next w1 : 5/7*w1^2 - 5/7*q1^2 - 5/7*q2^2\npotential w1^3 + q1^3\n");
    const auto ha = detect_homogeneity(a, jacobian(a));
    const auto hb = detect_homogeneity(b, jacobian(b));
    REQUIRE(ha.homogeneity);
    REQUIRE(hb.homogeneity);
    CHECK(ha.homogeneity->d1 == hb.homogeneity->d1);
    CHECK(ha.homogeneity->d2 == hb.homogeneity->d2);
    CHECK(ha.homogeneity->kw == hb.homogeneity->kw);
  }

  TEST_CASE("scaling identity holds at sampled points") {
    const auto s = parse_setup(testdata::kTwoExt);
    CHECK_FALSE(detect_homogeneity(s, jacobian(s)).homogeneity);
    const auto r = parse_setup("vars q1 q2\next w1 : w1^2 - q1^2 - q2^2\npotential w1^3/(q1^2 + q2^2)\n");
    const auto jd = jacobian(r);
    const auto h = detect_homogeneity(r, jd);
    REQUIRE(h.homogeneity);
    std::mt19937_64 rng(1);
    for (int t = 0; t < 5; ++t) {
      const auto x = sample_point(r, jd, rng);
      REQUIRE(x);
      const Complex alpha(1.3, -0.4);
      const CVector y = scale_point(*h.homogeneity, 2, *x, alpha);
      const Complex want = std::pow(alpha, static_cast<int>(h.homogeneity->d2)) * r.potential.eval(as_span(*x));
      CHECK(std::abs(r.potential.eval(as_span(y)) - want) <= 1e-9 * std::max(1.0, std::abs(want)));
    }
  }
}
