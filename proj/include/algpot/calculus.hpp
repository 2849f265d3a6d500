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

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "algpot/numeric.hpp"
#include "algpot/parser.hpp"
#include "algpot/variety.hpp"

namespace algpot {

/// dw_i/dq_k = -(adj(J) dG/dq)_{i,k} / det J. Entries are regular off the critical set.
struct DerivationTable {
  ExprMatrix dwdq;  // s x n
};

/// Requires jd.symbolic().
DerivationTable derivation_table(const JacobianData& jd);

/// Derivative of f along q_k on S (0-based k), chain rule through w(q).
RatExpr derive_q(const RatExpr& f, const DerivationTable& table, std::size_t k);
RatExpr derive_q(const RatExpr& f, const AlgebraicSetup& setup, const JacobianData& jd, std::size_t k);

std::vector<RatExpr> grad_q(const RatExpr& v, const AlgebraicSetup& setup, const JacobianData& jd);
/// Entry (i, j) = d/dq_i (d/dq_j v). Symmetric as an identity on S only.
ExprMatrix hess_q(const RatExpr& v, const AlgebraicSetup& setup, const JacobianData& jd);

/// Derivatives of V at one ambient point, in q-derivations on S.
struct LocalDerivatives {
  Complex value;
  CVector grad;           // n
  CMatrix hessian;        // n x n
  CMatrix grad_jacobian;  // n x (n+s), plain partials of the ambient gradient expressions
  CMatrix dwdq;           // s x n
};

/// Evaluates V and its q-derivatives at points of S.
///
/// With few extension variables the gradient and Hessian are exact
/// expressions built once and evaluated per point. Otherwise (or when
/// forced) every quantity comes from per-point linear solves with the
/// plain first and second partials of V and the generators.
class PotentialDerivatives {
 public:
  enum class Mode { kAuto, kSymbolic, kNumeric };

  PotentialDerivatives(const AlgebraicSetup& setup, const JacobianData& jd, Mode mode = Mode::kAuto);

  bool symbolic() const { return symbolic_; }
  const AlgebraicSetup& setup() const { return *setup_; }
  const JacobianData& jacobian() const { return *jd_; }

  /// Throws PoleError / std::domain_error at poles or on the critical set.
  LocalDerivatives at(std::span<const Complex> point, bool with_hessian = true) const;
  CVector grad_at(std::span<const Complex> point) const;
  CMatrix dwdq_at(std::span<const Complex> point) const;

  const std::vector<RatExpr>& grad_exprs() const { return grad_; }
  const ExprMatrix& hess_exprs() const { return hess_; }

 private:
  void numeric_parts(std::span<const Complex> point, LocalDerivatives& out, bool with_hessian) const;

  const AlgebraicSetup* setup_;
  const JacobianData* jd_;
  bool symbolic_ = false;
  std::optional<DerivationTable> table_;
  std::vector<RatExpr> grad_;
  ExprMatrix hess_;
  ExprMatrix grad_jac_;
  // Plain partials for the numeric route.
  std::vector<RatExpr> v1_;
  ExprMatrix v2_;
  std::vector<ExprMatrix> g2_;
};

/// True when the polynomial vanishes at the point to tol; a single-term
/// polynomial vanishes when one of its variable factors does.
bool vanishes(const Polynomial& p, std::span<const Complex> point, double tol);

/// p is in Sigma(I) or some denominator factor of V vanishes at p.
bool in_sigma_v(const RatExpr& v, const JacobianData& jd, const VarietyPoint& p, double tol = kCriticalTol);

/// Weighted homogeneity in canonical form: gcd(d1, d2, k...) = 1, d1 > 0.
struct Homogeneity {
  std::int64_t d1 = 1;
  std::int64_t d2 = 0;
  std::vector<std::int64_t> kw;
  Rational degree;
  bool unique = true;  // weight solution space is one-dimensional

  std::optional<std::int64_t> integer_degree() const;
};

struct HomogeneityResult {
  std::optional<Homogeneity> homogeneity;
  std::string message;  // why not homogeneous, when empty optional
};

/// Solves for the weights exactly, then checks the scaling identity at
/// `samples` random points of S. Throws std::runtime_error when the exact
/// solution fails the numeric check.
HomogeneityResult detect_homogeneity(const AlgebraicSetup& setup, const JacobianData& jd,
                                     std::uint64_t seed = 1, int samples = 5);

/// Applies (q, w) -> (a^d1 q, a^k w).
CVector scale_point(const Homogeneity& h, std::size_t n, const CVector& x, Complex alpha);

}  // namespace algpot
