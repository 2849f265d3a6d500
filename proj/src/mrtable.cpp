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

#include "algpot/mrtable.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace algpot {

namespace {

Rational q(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

TableRow special(std::int64_t k, Rational a, Rational b, Rational c, Rational d) {
  TableRow row;
  row.id = "special k=" + std::to_string(k) + " C=" + to_string(c);
  row.kind = RowKind::kSpecial;
  row.k = k;
  row.a = std::move(a);
  row.b = std::move(b);
  row.c = std::move(c);
  row.d = std::move(d);
  return row;
}

/// Exact square root of a nonnegative rational, if it is a square.
std::optional<Rational> rational_sqrt(const Rational& x) {
  if (x < 0) return std::nullopt;
  const Integer num = x.get_num();
  const Integer den = x.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0 || mpz_perfect_square_p(den.get_mpz_t()) == 0) {
    return std::nullopt;
  }
  Integer rn;
  Integer rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  Rational r(rn, rd);
  r.canonicalize();
  return r;
}

/// Integer roots of a p^2 + b p + c = 0, a != 0, exact.
std::vector<Integer> integer_roots(const Rational& a, const Rational& b, const Rational& c) {
  std::vector<Integer> roots;
  const auto sq = rational_sqrt(b * b - 4 * a * c);
  if (!sq) return roots;
  for (const int sign : {-1, 1}) {
    Rational root = (-b + sign * *sq) / (2 * a);
    root.canonicalize();
    if (root.get_den() != 1) continue;
    const Integer p = root.get_num();
    if (roots.empty() || roots.front() != p) roots.push_back(p);
  }
  return roots;
}

void add_witness(TableVerdict& v, const TableRow& row, const Integer& p, const Rational& lambda) {
  // Witnesses are only kept after exact back-substitution.
  if (row.lambda(v.k, p) != lambda) return;
  for (const auto& w : v.witnesses) {
    if (w.row == row.id && w.p && *w.p == p) return;
  }
  v.witnesses.push_back({row.id, p});
}

std::int64_t nearest_integer(double x) {
  if (!std::isfinite(x) || std::fabs(x) > 9.0e15) return 0;
  return static_cast<std::int64_t>(std::llround(x));
}

Complex lambda_numeric(const TableRow& row, std::int64_t k, std::int64_t p) {
  const Rational value = row.lambda(k, Integer(static_cast<long>(p)));
  return {value.get_d(), 0.0};
}

}  // namespace

Rational TableRow::lambda(std::int64_t degree, const Integer& p) const {
  const Rational kk(static_cast<long>(degree));
  const Rational pp(p);
  switch (kind) {
    case RowKind::kFamilyA:
      return pp * (pp * kk + kk - 2) / 2;
    case RowKind::kFamilyB:
      return (pp * kk + kk - 1) * (pp * kk + 1) / (2 * kk);
    case RowKind::kSpecial: {
      const Rational inner = c + d * pp;
      return a + b * inner * inner;
    }
    case RowKind::kWildcard:
      break;
  }
  throw std::logic_error("wildcard rows have no parametrized value");
}

std::vector<TableRow> table_rows(const TableOptions& options) {
  std::vector<TableRow> rows;
  rows.push_back({"familyA", RowKind::kFamilyA, 0, {}, {}, {}, {}});
  rows.push_back({"familyB", RowKind::kFamilyB, 0, {}, {}, {}, {}});
  rows.push_back({"wildcard k=2", RowKind::kWildcard, 2, {}, {}, {}, {}});
  rows.push_back({"wildcard k=-2", RowKind::kWildcard, -2, {}, {}, {}, {}});
  rows.push_back(special(-5, q(49, 40), q(-1, 40), q(10, 3), q(10)));
  rows.push_back(special(-5, q(49, 40), q(-1, 40), q(4), q(10)));
  rows.push_back(special(-4, q(9, 8), -options.k4_coefficient, q(4, 3), q(4)));
  rows.push_back(special(-3, q(25, 24), q(-1, 24), q(2), q(6)));
  rows.push_back(special(-3, q(25, 24), q(-1, 24), q(3, 2), q(6)));
  // right column
  rows.push_back(special(-3, q(25, 24), q(-1, 24), q(6, 5), q(6)));
  rows.push_back(special(-3, q(25, 24), q(-1, 24), q(12, 5), q(6)));
  rows.push_back(special(3, q(-1, 24), q(1, 24), q(2), q(6)));
  rows.push_back(special(3, q(-1, 24), q(1, 24), q(3, 2), q(6)));
  rows.push_back(special(3, q(-1, 24), q(1, 24), q(6, 5), q(6)));
  rows.push_back(special(3, q(-1, 24), q(1, 24), q(12, 5), q(6)));
  rows.push_back(special(4, q(-1, 8), q(1, 8), q(4, 3), q(4)));
  rows.push_back(special(5, q(-9, 40), q(1, 40), q(10, 3), q(10)));
  rows.push_back(special(5, q(-9, 40), q(1, 40), q(4), q(10)));
  return rows;
}

TableVerdict check_pair_exact(std::int64_t k, const Rational& lambda, const TableOptions& options) {
  if (k == 0) throw std::invalid_argument("the table needs a nonzero homogeneity degree");
  TableVerdict v;
  v.k = k;
  v.lambda = {lambda.get_d(), 0.0};
  v.exact_lambda = lambda;
  v.mode = VerdictMode::kExact;
  const Rational kk(static_cast<long>(k));

  for (const TableRow& row : table_rows(options)) {
    if (!row.applies_to(k)) continue;
    switch (row.kind) {
      case RowKind::kWildcard:
        v.witnesses.push_back({row.id, std::nullopt});
        break;
      case RowKind::kFamilyA:
        // k p^2 + (k - 2) p - 2 lambda = 0
        for (const auto& p : integer_roots(kk, kk - 2, -2 * lambda)) add_witness(v, row, p, lambda);
        break;
      case RowKind::kFamilyB:
        // k^2 p^2 + k^2 p + (k - 1 - 2 k lambda) = 0
        for (const auto& p : integer_roots(kk * kk, kk * kk, kk - 1 - 2 * kk * lambda)) {
          add_witness(v, row, p, lambda);
        }
        break;
      case RowKind::kSpecial: {
        const auto x = rational_sqrt((lambda - row.a) / row.b);
        if (!x) break;
        for (const Rational& root : {*x, Rational(-*x)}) {
          Rational p = (root - row.c) / row.d;
          p.canonicalize();
          if (p.get_den() == 1) add_witness(v, row, p.get_num(), lambda);
        }
        break;
      }
    }
  }
  v.matched = !v.witnesses.empty();
  v.obstruction = !v.matched;
  return v;
}

TableVerdict check_pair_numeric(std::int64_t k, Complex lambda, double tol, const TableOptions& options,
                                std::int64_t max_den) {
  if (k == 0) throw std::invalid_argument("the table needs a nonzero homogeneity degree");
  double err = 0.0;
  if (const auto exact = rationalize(lambda, tol, max_den, &err)) {
    TableVerdict v = check_pair_exact(k, *exact, options);
    v.lambda = lambda;
    v.reconstructed = true;
    v.reconstruction_error = err;
    return v;
  }

  TableVerdict v;
  v.k = k;
  v.lambda = lambda;
  v.mode = VerdictMode::kNumeric;
  const double kd = static_cast<double>(k);
  const double scale = std::max(1.0, std::abs(lambda));
  auto try_p = [&](const TableRow& row, std::int64_t p) {
    if (std::abs(lambda_numeric(row, k, p) - lambda) > tol * scale) return;
    for (const auto& w : v.witnesses) {
      if (w.row == row.id && w.p && *w.p == static_cast<long>(p)) return;
    }
    v.witnesses.push_back({row.id, Integer(static_cast<long>(p))});
  };
  auto try_roots = [&](const TableRow& row, Complex a, Complex b, Complex c) {
    const Complex disc = std::sqrt(b * b - 4.0 * a * c);
    for (const Complex root : {(-b + disc) / (2.0 * a), (-b - disc) / (2.0 * a)}) {
      try_p(row, nearest_integer(root.real()));
    }
  };

  for (const TableRow& row : table_rows(options)) {
    if (!row.applies_to(k)) continue;
    switch (row.kind) {
      case RowKind::kWildcard:
        v.witnesses.push_back({row.id, std::nullopt});
        break;
      case RowKind::kFamilyA:
        try_roots(row, kd, kd - 2.0, -2.0 * lambda);
        break;
      case RowKind::kFamilyB:
        try_roots(row, kd * kd, kd * kd, kd - 1.0 - 2.0 * kd * lambda);
        break;
      case RowKind::kSpecial: {
        const Complex x = std::sqrt((lambda - row.a.get_d()) / row.b.get_d());
        for (const Complex root : {x, -x}) {
          try_p(row, nearest_integer(((root - row.c.get_d()) / row.d.get_d()).real()));
        }
        break;
      }
    }
  }
  v.matched = !v.witnesses.empty();
  v.obstruction = false;
  if (!v.matched) v.note = "numeric mode: no match, but this is not a certificate";
  return v;
}

std::string to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::kObstruction:
      return "obstruction";
    case Outcome::kNoObstruction:
      return "no_obstruction";
    case Outcome::kHypothesesUnverified:
      return "hypotheses_unverified";
    case Outcome::kNotApplicable:
      return "not_applicable";
  }
  return "unknown";
}

Certificate certify(std::span<const PointVerdicts> points, bool allow_numeric_certificate) {
  Certificate cert;
  bool unverified = false;
  std::size_t usable = 0;
  for (const auto& pt : points) {
    if (pt.diagonalizable_uncertain) {
      unverified = true;
      cert.notes.push_back("point " + std::to_string(pt.point_index) +
                           ": diagonalizability uncertain, hypothesis unverified");
      continue;
    }
    if (!pt.diagonalizable) {
      cert.notes.push_back("point " + std::to_string(pt.point_index) +
                           ": Hessian not diagonalizable, criterion does not apply");
      continue;
    }
    ++usable;
    for (const auto& v : pt.verdicts) {
      if (v.matched) continue;
      const bool exact_miss = v.mode == VerdictMode::kExact;
      if (exact_miss || allow_numeric_certificate) {
        cert.witnesses.push_back({pt.point_index, pt.point, v});
      } else {
        unverified = true;
        std::ostringstream os;
        os << "point " << pt.point_index << ": eigenvalue " << v.lambda.real() << (v.lambda.imag() < 0 ? "-" : "+")
           << std::abs(v.lambda.imag()) << "i not reconstructed exactly; numeric non-match is not a certificate";
        cert.notes.push_back(os.str());
      }
    }
  }
  if (!cert.witnesses.empty()) {
    cert.outcome = Outcome::kObstruction;
    cert.statement =
        "non-integrability certificate: no complete system of first integrals in involution, "
        "meromorphic on C^n x (S \\ Sigma(V)); an eigenvalue of the Hessian at a Darboux point "
        "lies outside the admissible (k, lambda) table";
  } else if (unverified) {
    cert.outcome = Outcome::kHypothesesUnverified;
    cert.statement = "hypotheses unverified: no certificate could be issued";
  } else if (usable == 0) {
    cert.outcome = Outcome::kNotApplicable;
    cert.statement = "no usable Darboux point: criterion not applicable";
  } else {
    cert.outcome = Outcome::kNoObstruction;
    cert.statement = "no obstruction found: integrability not excluded";
  }
  return cert;
}

}  // namespace algpot
