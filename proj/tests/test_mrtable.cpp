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

#include <map>
#include <set>

#include "algpot/mrtable.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace algpot;

namespace {

Rational r(long a, long b = 1) {
  Rational x(a, b);
  x.canonicalize();
  return x;
}

bool has_witness(const TableVerdict& v, const std::string& row, long p) {
  for (const auto& w : v.witnesses) {
    if (w.row == row && w.p && *w.p == p) return true;
  }
  return false;
}

}  // namespace

TEST_SUITE("mrtable") {
  TEST_CASE("eighteen rows") {
    const auto rows = table_rows();
    CHECK(rows.size() == 18);
    std::map<std::int64_t, int> special;
    int wild = 0;
    for (const auto& row : rows) {
      if (row.kind == RowKind::kSpecial) ++special[row.k];
      if (row.kind == RowKind::kWildcard) {
        ++wild;
        CHECK((row.k == 2 || row.k == -2));
      }
    }
    CHECK(wild == 2);
    CHECK(special[-5] == 2);
    CHECK(special[-4] == 1);
    CHECK(special[-3] == 4);
    CHECK(special[3] == 4);
    CHECK(special[4] == 1);
    CHECK(special[5] == 2);
  }

  TEST_CASE("exact examples") {
    const auto a = check_pair_exact(2, r(7, 13));
    CHECK(a.matched);
    CHECK(a.witnesses.front().row == "wildcard k=2");
    for (long k : {-7L, -1L, 1L, 3L, 9L}) {
      const auto z = check_pair_exact(k, r(0));
      CHECK(z.matched);
      CHECK(has_witness(z, "familyA", 0));
    }
    const auto b = check_pair_exact(3, r(1));
    CHECK(b.matched);
    CHECK(has_witness(b, "familyA", -1));
    const auto c = check_pair_exact(-3, r(7, 8));
    CHECK(c.matched);
    CHECK(has_witness(c, "special k=-3 C=2", 0));
    const auto d = check_pair_exact(-1, r(3));
    CHECK_FALSE(d.matched);
    CHECK(d.obstruction);
    CHECK(d.witnesses.empty());
    CHECK_THROWS_AS(check_pair_exact(0, r(1)), std::invalid_argument);
  }

  TEST_CASE("k = -1, lambda = 3 has no witness in a wide enumeration") {
    const Rational lam(3);
    for (long p = -1000000; p <= 1000000; ++p) {
      // family A: p(-p - 3)/2 = 3 and family B: (p + 2)(1 - p)/2 = 3
      REQUIRE(p * (-p - 3) != 6);
      REQUIRE((p + 2) * (1 - p) != 6);
    }
    CHECK(check_pair_exact(-1, lam).obstruction);
  }

  TEST_CASE("numeric examples") {
    const auto a = check_pair_numeric(3, Complex(1.0000000002, 0.0), 1e-8);
    CHECK(a.matched);
    CHECK(a.mode == VerdictMode::kExact);
    CHECK(a.reconstructed);
    CHECK(has_witness(a, "familyA", -1));

    const auto b = check_pair_numeric(-1, Complex(0.5, 0.5), 1e-8);
    CHECK_FALSE(b.matched);
    CHECK(b.mode == VerdictMode::kNumeric);
    CHECK_FALSE(b.obstruction);
    CHECK_FALSE(b.note.empty());

    const auto c = check_pair_numeric(5, Complex(7.0 / 40.0, 0.0), 1e-8);
    CHECK(c.matched);
    CHECK(has_witness(c, "special k=5 C=4", 0));
  }

  TEST_CASE("numeric mode without reconstruction back-substitutes") {
    // Family A, k = 3, p = 2000, off by 1e-5: too far for reconstruction,
    // within the relative back-substitution tolerance.
    const double lam = 2000.0 * 6001.0 / 2.0 + 1e-5;
    const auto v = check_pair_numeric(3, Complex(lam, 0.0), 1e-8, {}, 1);
    CHECK(v.mode == VerdictMode::kNumeric);
    CHECK(v.matched);
    CHECK(has_witness(v, "familyA", 2000));
    // Irrational value, max_den too small to reconstruct: no match, no certificate.
    const auto w = check_pair_numeric(-1, Complex(std::sqrt(2.0), 0.0), 1e-8, {}, 10);
    CHECK(w.mode == VerdictMode::kNumeric);
    CHECK_FALSE(w.matched);
    CHECK_FALSE(w.obstruction);
  }

  TEST_CASE("trivial eigenvalue k - 1 always matches") {
    for (long k = -50; k <= 50; ++k) {
      if (k == 0) continue;
      const auto v = check_pair_exact(k, r(k - 1));
      CHECK(v.matched);
      CHECK(has_witness(v, "familyA", 1));
    }
  }

  TEST_CASE("witnesses back-substitute exactly") {
    for (long k = -6; k <= 6; ++k) {
      if (k == 0) continue;
      for (long a = -100; a <= 100; ++a) {
        const auto v = check_pair_exact(k, r(a, 8));
        for (const auto& w : v.witnesses) {
          if (!w.p) continue;
          bool found = false;
          for (const auto& row : table_rows()) {
            if (row.id == w.row) found = row.lambda(k, *w.p) == r(a, 8);
          }
          CHECK(found);
        }
      }
    }
  }

  TEST_CASE("exact and numeric modes agree on rationals") {
    for (long k : {-5L, -4L, -3L, -1L, 1L, 3L, 4L, 5L}) {
      for (long a = -60; a <= 60; ++a) {
        const Rational lam = r(a, 24);
        CHECK(check_pair_exact(k, lam).matched == check_pair_numeric(k, Complex(lam.get_d(), 0.0)).matched);
      }
    }
  }

  TEST_CASE("oracle equivalence on a coarse grid") {
    for (long k = -6; k <= 6; ++k) {
      if (k == 0) continue;
      const auto admissible = testdata::enumerate_table(k, 2000, r(1, 4));
      for (long a = -200; a <= 200; ++a) {
        const Rational lam = r(a, 24);
        const bool want = k == 2 || k == -2 || admissible.count(lam) > 0;
        CHECK_MESSAGE(check_pair_exact(k, lam).matched == want, "k=", k, " a=", a);
      }
    }
  }

  TEST_CASE("k = -4 coefficient switch") {
    // 9/8 - 1/4 (4/3)^2 = 49/72 as printed; 9/8 - 1/8 (4/3)^2 = 65/72 with the switch.
    CHECK(check_pair_exact(-4, r(49, 72)).matched);
    CHECK_FALSE(check_pair_exact(-4, r(65, 72)).matched);
    TableOptions opts;
    opts.k4_coefficient = r(1, 8);
    CHECK(check_pair_exact(-4, r(65, 72), opts).matched);
    CHECK_FALSE(check_pair_exact(-4, r(49, 72), opts).matched);
  }

  TEST_CASE("certify") {
    PointVerdicts ok;
    ok.verdicts = {check_pair_exact(3, r(2)), check_pair_exact(3, r(1))};
    const std::vector<PointVerdicts> one = {ok};
    CHECK(certify(one).outcome == Outcome::kNoObstruction);

    PointVerdicts bad;
    bad.point_index = 1;
    bad.verdicts = {check_pair_exact(-1, r(-2)), check_pair_exact(-1, r(-1, 2))};
    const std::vector<PointVerdicts> two = {ok, bad};
    const auto cert = certify(two);
    CHECK(cert.outcome == Outcome::kObstruction);
    REQUIRE(cert.witnesses.size() == 1);
    CHECK(cert.witnesses[0].point_index == 1);
    CHECK(cert.witnesses[0].verdict.exact_lambda == r(-1, 2));

    PointVerdicts wild;
    wild.verdicts = {check_pair_exact(2, r(-17, 3)), check_pair_exact(2, r(5))};
    const std::vector<PointVerdicts> three = {wild};
    CHECK(certify(three).outcome == Outcome::kNoObstruction);

    PointVerdicts numeric;
    numeric.verdicts = {check_pair_numeric(-1, Complex(std::sqrt(2.0), 0.0), 1e-8, {}, 10)};
    const std::vector<PointVerdicts> four = {numeric};
    CHECK(certify(four).outcome == Outcome::kHypothesesUnverified);
    CHECK(certify(four, true).outcome == Outcome::kObstruction);

    PointVerdicts unsure = bad;
    unsure.diagonalizable_uncertain = true;
    const std::vector<PointVerdicts> five = {unsure};
    CHECK(certify(five).outcome == Outcome::kHypothesesUnverified);

    PointVerdicts jordan = bad;
    jordan.diagonalizable = false;
    const std::vector<PointVerdicts> six = {jordan};
    CHECK(certify(six).outcome == Outcome::kNotApplicable);
    CHECK(certify({}).outcome == Outcome::kNotApplicable);
  }
}
