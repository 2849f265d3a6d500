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

#include "algpot/calculus.hpp"

#include <stdexcept>

namespace algpot {

namespace {

using Idx = Eigen::Index;

Idx ix(std::size_t i) { return static_cast<Idx>(i); }

}  // namespace

DerivationTable derivation_table(const JacobianData& jd) {
  if (!jd.symbolic()) {
    throw std::logic_error("symbolic derivation table needs at most " + std::to_string(kMaxSymbolicExt) +
                           " extension variables");
  }
  const std::size_t nv = jd.n + jd.s;
  const ExprMatrix& adj = *jd.adjugate;
  DerivationTable table;
  table.dwdq.assign(jd.s, std::vector<RatExpr>(jd.n, RatExpr(nv)));
  for (std::size_t i = 0; i < jd.s; ++i) {
    for (std::size_t k = 0; k < jd.n; ++k) {
      RatExpr sum(nv);
      for (std::size_t l = 0; l < jd.s; ++l) {
        if (adj[i][l].is_zero() || jd.dGdq[l][k].is_zero()) continue;
        sum += adj[i][l] * jd.dGdq[l][k];
      }
      table.dwdq[i][k] = sum.is_zero() ? sum : -(sum / jd.detJ);
    }
  }
  return table;
}

RatExpr derive_q(const RatExpr& f, const DerivationTable& table, std::size_t k) {
  const std::size_t s = table.dwdq.size();
  const std::size_t n = f.nvars() - s;
  if (k >= n) throw std::out_of_range("derive_q: index out of range");
  RatExpr result = f.derivative(k);
  for (std::size_t i = 0; i < s; ++i) {
    if (!f.depends_on(n + i) || table.dwdq[i][k].is_zero()) continue;
    result += f.derivative(n + i) * table.dwdq[i][k];
  }
  return result;
}

RatExpr derive_q(const RatExpr& f, const AlgebraicSetup& /*setup*/, const JacobianData& jd, std::size_t k) {
  return derive_q(f, derivation_table(jd), k);
}

std::vector<RatExpr> grad_q(const RatExpr& v, const AlgebraicSetup& setup, const JacobianData& jd) {
  const DerivationTable table = derivation_table(jd);
  std::vector<RatExpr> g;
  g.reserve(setup.n);
  for (std::size_t k = 0; k < setup.n; ++k) g.push_back(derive_q(v, table, k));
  return g;
}

ExprMatrix hess_q(const RatExpr& v, const AlgebraicSetup& setup, const JacobianData& jd) {
  const DerivationTable table = derivation_table(jd);
  std::vector<RatExpr> g;
  for (std::size_t k = 0; k < setup.n; ++k) g.push_back(derive_q(v, table, k));
  ExprMatrix h(setup.n, std::vector<RatExpr>(setup.n, RatExpr(setup.nvars())));
  for (std::size_t i = 0; i < setup.n; ++i) {
    for (std::size_t j = 0; j < setup.n; ++j) h[i][j] = derive_q(g[j], table, i);
  }
  return h;
}

// ------------------------------------------------------ PotentialDerivatives

PotentialDerivatives::PotentialDerivatives(const AlgebraicSetup& setup, const JacobianData& jd, Mode mode)
    : setup_(&setup), jd_(&jd) {
  symbolic_ = mode == Mode::kSymbolic || (mode == Mode::kAuto && jd.symbolic());
  const std::size_t n = setup.n;
  const std::size_t nv = setup.nvars();
  if (symbolic_) {
    table_ = derivation_table(jd);
    for (std::size_t k = 0; k < n; ++k) grad_.push_back(derive_q(setup.potential, *table_, k));
    hess_.assign(n, std::vector<RatExpr>(n, RatExpr(nv)));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        // The Hessian is symmetric on S, so the lower triangle is reused.
        hess_[i][j] = j < i ? hess_[j][i] : derive_q(grad_[j], *table_, i);
      }
    }
    grad_jac_.assign(n, std::vector<RatExpr>(nv, RatExpr(nv)));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t a = 0; a < nv; ++a) grad_jac_[i][a] = grad_[i].derivative(a);
    }
    return;
  }
  v1_.reserve(nv);
  for (std::size_t a = 0; a < nv; ++a) v1_.push_back(setup.potential.derivative(a));
  v2_.assign(nv, std::vector<RatExpr>(nv, RatExpr(nv)));
  for (std::size_t a = 0; a < nv; ++a) {
    for (std::size_t b = a; b < nv; ++b) {
      v2_[a][b] = v1_[a].derivative(b);
      v2_[b][a] = v2_[a][b];
    }
  }
  g2_.resize(setup.s);
  for (std::size_t l = 0; l < setup.s; ++l) {
    g2_[l].assign(nv, std::vector<RatExpr>(nv, RatExpr(nv)));
    for (std::size_t a = 0; a < nv; ++a) {
      const RatExpr ga = setup.generators[l].derivative(a);
      for (std::size_t b = a; b < nv; ++b) {
        g2_[l][a][b] = ga.derivative(b);
        g2_[l][b][a] = g2_[l][a][b];
      }
    }
  }
}

LocalDerivatives PotentialDerivatives::at(std::span<const Complex> point, bool with_hessian) const {
  const std::size_t n = setup_->n;
  const std::size_t nv = setup_->nvars();
  LocalDerivatives out;
  out.value = setup_->potential.eval(point);
  if (!symbolic_) {
    numeric_parts(point, out, with_hessian);
    return out;
  }
  out.grad.resize(ix(n));
  for (std::size_t i = 0; i < n; ++i) out.grad(ix(i)) = grad_[i].eval(point);
  out.grad_jacobian.resize(ix(n), ix(nv));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < nv; ++a) out.grad_jacobian(ix(i), ix(a)) = grad_jac_[i][a].eval(point);
  }
  out.dwdq = dwdq_at(point);
  if (with_hessian) {
    out.hessian.resize(ix(n), ix(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) out.hessian(ix(i), ix(j)) = hess_[i][j].eval(point);
    }
  }
  return out;
}

CVector PotentialDerivatives::grad_at(std::span<const Complex> point) const {
  if (!symbolic_) return at(point, false).grad;
  CVector g(ix(setup_->n));
  for (std::size_t i = 0; i < setup_->n; ++i) g(ix(i)) = grad_[i].eval(point);
  return g;
}

CMatrix PotentialDerivatives::dwdq_at(std::span<const Complex> point) const {
  const std::size_t n = setup_->n;
  const std::size_t s = setup_->s;
  if (symbolic_) {
    CMatrix w(ix(s), ix(n));
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t k = 0; k < n; ++k) w(ix(i), ix(k)) = table_->dwdq[i][k].eval(point);
    }
    return w;
  }
  if (s == 0) return CMatrix(0, ix(n));
  Eigen::FullPivLU<CMatrix> lu(jd_->eval_J(point));
  if (!lu.isInvertible()) throw std::domain_error("point lies in the critical set: det J = 0");
  return -lu.solve(jd_->eval_dGdq(point));
}

void PotentialDerivatives::numeric_parts(std::span<const Complex> point, LocalDerivatives& out,
                                         bool with_hessian) const {
  const std::size_t n = setup_->n;
  const std::size_t s = setup_->s;
  const std::size_t nv = n + s;

  CVector vgrad(ix(nv));
  for (std::size_t a = 0; a < nv; ++a) vgrad(ix(a)) = v1_[a].eval(point);
  CMatrix vhess(ix(nv), ix(nv));
  for (std::size_t a = 0; a < nv; ++a) {
    for (std::size_t b = 0; b < nv; ++b) vhess(ix(a), ix(b)) = v2_[a][b].eval(point);
  }

  CMatrix w = CMatrix::Zero(ix(s), ix(n));
  std::optional<Eigen::FullPivLU<CMatrix>> lu;
  if (s > 0) {
    lu.emplace(jd_->eval_J(point));
    if (!lu->isInvertible()) throw std::domain_error("point lies in the critical set: det J = 0");
    w = -lu->solve(jd_->eval_dGdq(point));
  }
  out.dwdq = w;
  out.grad = vgrad.head(ix(n)) + w.transpose() * vgrad.tail(ix(s));

  // Plain partials of the ambient gradient D_i V = V_{q_i} + V_w . W(:, i).
  out.grad_jacobian.resize(ix(n), ix(nv));
  for (std::size_t a = 0; a < nv; ++a) {
    CMatrix dw = CMatrix::Zero(ix(s), ix(n));
    if (s > 0) {
      CMatrix dj(ix(s), ix(s));
      CMatrix dgq(ix(s), ix(n));
      for (std::size_t l = 0; l < s; ++l) {
        for (std::size_t j = 0; j < s; ++j) dj(ix(l), ix(j)) = g2_[l][n + j][a].eval(point);
        for (std::size_t k = 0; k < n; ++k) dgq(ix(l), ix(k)) = g2_[l][k][a].eval(point);
      }
      dw = -lu->solve(dj * w + dgq);
    }
    for (std::size_t i = 0; i < n; ++i) {
      Complex v = vhess(ix(i), ix(a));
      for (std::size_t j = 0; j < s; ++j) {
        v += vhess(ix(n + j), ix(a)) * w(ix(j), ix(i)) + vgrad(ix(n + j)) * dw(ix(j), ix(i));
      }
      out.grad_jacobian(ix(i), ix(a)) = v;
    }
  }
  if (with_hessian) {
    out.hessian = out.grad_jacobian.leftCols(ix(n)) + out.grad_jacobian.rightCols(ix(s)) * w;
  }
}

// ------------------------------------------------------------------- Sigma(V)

bool vanishes(const Polynomial& p, std::span<const Complex> point, double tol) {
  if (p.is_zero()) return true;
  if (p.is_constant()) return false;
  if (p.size() == 1) {
    const Monomial& m = p.terms().begin()->first;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] > 0 && std::abs(point[i]) <= tol) return true;
    }
    return false;
  }
  return std::abs(p.eval(point)) <= tol;
}

bool in_sigma_v(const RatExpr& v, const JacobianData& jd, const VarietyPoint& p, double tol) {
  if (in_critical_set(jd, p, tol)) return true;
  const auto x = as_span(p.coords);
  return vanishes(jd.detJ.numerator(), x, tol) || vanishes(v.denominator(), x, tol);
}

}  // namespace algpot
