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

#include "algpot/variety.hpp"

#include <algorithm>
#include <numeric>

namespace algpot {

namespace {

RatExpr cofactor_det(const ExprMatrix& m, std::vector<std::size_t>& rows,
                     std::vector<std::size_t>& cols, std::size_t nvars) {
  if (rows.empty()) return RatExpr::constant(nvars, Rational(1));
  if (rows.size() == 1) return m[rows[0]][cols[0]];
  const std::size_t r = rows.front();
  std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
  RatExpr det(nvars);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const RatExpr& entry = m[r][cols[j]];
    if (entry.is_zero()) continue;
    std::vector<std::size_t> sub_cols = cols;
    sub_cols.erase(sub_cols.begin() + static_cast<std::ptrdiff_t>(j));
    RatExpr minor = cofactor_det(m, sub_rows, sub_cols, nvars);
    if (minor.is_zero()) continue;
    det = (j % 2 == 0) ? det + entry * minor : det - entry * minor;
  }
  return det;
}

}  // namespace

RatExpr determinant(const ExprMatrix& m, std::size_t nvars) {
  std::vector<std::size_t> rows(m.size());
  std::iota(rows.begin(), rows.end(), 0);
  std::vector<std::size_t> cols = rows;
  return cofactor_det(m, rows, cols, nvars);
}

JacobianData jacobian(const AlgebraicSetup& setup) {
  JacobianData jd;
  jd.n = setup.n;
  jd.s = setup.s;
  const std::size_t nv = setup.nvars();
  jd.J.assign(setup.s, std::vector<RatExpr>(setup.s, RatExpr(nv)));
  jd.dGdq.assign(setup.s, std::vector<RatExpr>(setup.n, RatExpr(nv)));
  for (std::size_t i = 0; i < setup.s; ++i) {
    for (std::size_t j = 0; j < setup.s; ++j) jd.J[i][j] = setup.generators[i].derivative(setup.n + j);
    for (std::size_t k = 0; k < setup.n; ++k) jd.dGdq[i][k] = setup.generators[i].derivative(k);
  }
  jd.detJ = determinant(jd.J, nv);

  if (setup.s <= kMaxSymbolicExt) {
    // adj(J)_{j,i} = (-1)^{i+j} * minor(i, j)
    ExprMatrix adj(setup.s, std::vector<RatExpr>(setup.s, RatExpr(nv)));
    for (std::size_t i = 0; i < setup.s; ++i) {
      for (std::size_t j = 0; j < setup.s; ++j) {
        std::vector<std::size_t> rows;
        std::vector<std::size_t> cols;
        for (std::size_t r = 0; r < setup.s; ++r) {
          if (r != i) rows.push_back(r);
          if (r != j) cols.push_back(r);
        }
        RatExpr minor = cofactor_det(jd.J, rows, cols, nv);
        adj[j][i] = ((i + j) % 2 == 0) ? minor : -minor;
      }
    }
    jd.adjugate = std::move(adj);
  }
  return jd;
}

CMatrix JacobianData::eval_J(std::span<const Complex> point) const {
  CMatrix m(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s));
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < s; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = J[i][j].eval(point);
    }
  }
  return m;
}

CMatrix JacobianData::eval_dGdq(std::span<const Complex> point) const {
  CMatrix m(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = dGdq[i][k].eval(point);
    }
  }
  return m;
}

CVector eval_generators(const AlgebraicSetup& setup, std::span<const Complex> point) {
  CVector g(static_cast<Eigen::Index>(setup.s));
  for (std::size_t i = 0; i < setup.s; ++i) g(static_cast<Eigen::Index>(i)) = setup.generators[i].eval(point);
  return g;
}

VarietyPoint make_point(const AlgebraicSetup& setup, const JacobianData& jd, CVector coords) {
  VarietyPoint p;
  p.coords = std::move(coords);
  p.constraint_residual = max_abs(eval_generators(setup, as_span(p.coords)));
  p.critical_value = std::abs(jd.detJ.eval(as_span(p.coords)));
  return p;
}

std::optional<CVector> solve_extension(const AlgebraicSetup& setup, const JacobianData& jd,
                                       const CVector& q, CVector w_start, double tol, int max_iter) {
  const auto n = static_cast<Eigen::Index>(setup.n);
  const auto s = static_cast<Eigen::Index>(setup.s);
  CVector x(n + s);
  x.head(n) = q;
  x.tail(s) = w_start;
  if (s == 0) return x;
  for (int it = 0; it < max_iter; ++it) {
    const CVector g = eval_generators(setup, as_span(x));
    if (!g.allFinite()) return std::nullopt;
    if (max_abs(g) == 0.0) break;
    const CMatrix jm = jd.eval_J(as_span(x));
    Eigen::FullPivLU<CMatrix> lu(jm);
    if (!lu.isInvertible()) break;
    const CVector step = lu.solve(g);
    if (!step.allFinite()) return std::nullopt;
    x.tail(s) -= step;
    if (max_abs(step) <= 1e-15 * (1.0 + max_abs(x.tail(s)))) break;
  }
  const CVector g = eval_generators(setup, as_span(x));
  if (!g.allFinite() || max_abs(g) > tol) return std::nullopt;
  return x;
}

std::optional<CVector> sample_point(const AlgebraicSetup& setup, const JacobianData& jd,
                                    std::mt19937_64& rng, double q_radius, bool real_q, int attempts) {
  CVector q(static_cast<Eigen::Index>(setup.n));
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    q(i) = random_in_disc(rng, q_radius);
    if (real_q) q(i) = q(i).real();
  }
  for (int a = 0; a < attempts; ++a) {
    CVector w(static_cast<Eigen::Index>(setup.s));
    for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = random_in_disc(rng, 2.0);
    if (auto x = solve_extension(setup, jd, q, w)) return x;
  }
  return std::nullopt;
}

ValidationReport validate(const AlgebraicSetup& setup, const JacobianData& jd, int trials,
                          std::uint64_t seed, double tol) {
  if (trials < 1) throw std::invalid_argument("validate needs at least one trial");
  ValidationReport report;
  report.trials = trials;
  report.seed = seed;
  report.tol = tol;
  if (jd.detJ.is_zero()) {
    report.messages.emplace_back("det J is the zero expression; setup rejected");
    return report;
  }
  for (int t = 0; t < trials; ++t) {
    auto rng = make_stream(seed, static_cast<std::uint64_t>(t));
    const auto x = sample_point(setup, jd, rng);
    if (!x) continue;
    ++report.samples_used;
    const double dj = std::abs(jd.detJ.eval(as_span(*x)));
    report.max_abs_detj = std::max(report.max_abs_detj, dj);
    if (dj > tol) report.detj_nonzero = true;
  }
  if (report.samples_used == 0) {
    report.inconclusive = true;
    report.messages.emplace_back("could not place any sample on S; validation inconclusive");
  } else if (!report.detj_nonzero) {
    report.messages.emplace_back("det J vanishes identically on all samples; setup rejected");
  }
  report.messages.emplace_back("primality of the ideal is assumed, not proven");
  return report;
}

bool in_critical_set(const JacobianData& jd, const VarietyPoint& p, double tol) {
  return std::abs(jd.detJ.eval(as_span(p.coords))) <= tol;
}

}  // namespace algpot
