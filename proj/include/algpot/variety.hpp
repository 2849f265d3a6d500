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
#include <vector>

#include "algpot/numeric.hpp"
#include "algpot/parser.hpp"

namespace algpot {

/// Default tolerance for "point lies on S".
inline constexpr double kOnVarietyTol = 1e-9;
/// Default tolerance for |det J| <= tol, i.e. membership in the critical set.
inline constexpr double kCriticalTol = 1e-8;
/// Above this many extension variables the adjugate is not formed symbolically.
inline constexpr std::size_t kMaxSymbolicExt = 4;

using ExprMatrix = std::vector<std::vector<RatExpr>>;

/// Partial derivatives of the generators: J = dG/dw (s x s), dG/dq (s x n).
struct JacobianData {
  std::size_t n = 0;
  std::size_t s = 0;
  ExprMatrix J;
  RatExpr detJ;
  ExprMatrix dGdq;
  /// adj(J), present when s <= kMaxSymbolicExt.
  std::optional<ExprMatrix> adjugate;

  bool symbolic() const { return adjugate.has_value(); }
  CMatrix eval_J(std::span<const Complex> point) const;
  CMatrix eval_dGdq(std::span<const Complex> point) const;
};

JacobianData jacobian(const AlgebraicSetup& setup);

/// Exact determinant by cofactor expansion along the first row.
RatExpr determinant(const ExprMatrix& m, std::size_t nvars);

struct VarietyPoint {
  CVector coords;
  double constraint_residual = 0.0;  // max |G_i|
  double critical_value = 0.0;       // |det J|

  bool on_variety(double tol = kOnVarietyTol) const { return constraint_residual <= tol; }
};

VarietyPoint make_point(const AlgebraicSetup& setup, const JacobianData& jd, CVector coords);

CVector eval_generators(const AlgebraicSetup& setup, std::span<const Complex> point);

/// Newton solve of G(q, w) = 0 for w with q fixed. Runs until the step
/// stalls so that singular roots are approached as closely as double
/// precision allows. Returns the full point (q, w), or nullopt if no root
/// was reached.
std::optional<CVector> solve_extension(const AlgebraicSetup& setup, const JacobianData& jd,
                                       const CVector& q, CVector w_start,
                                       double tol = kOnVarietyTol, int max_iter = 200);

/// Random point of S: random complex q, then w by Newton from random starts.
std::optional<CVector> sample_point(const AlgebraicSetup& setup, const JacobianData& jd,
                                    std::mt19937_64& rng, double q_radius = 1.0,
                                    bool real_q = false, int attempts = 8);

struct ValidationReport {
  bool detj_nonzero = false;
  bool inconclusive = false;
  bool primality_assumed = true;
  int trials = 0;
  int samples_used = 0;
  std::uint64_t seed = 0;
  double max_abs_detj = 0.0;
  double tol = kOnVarietyTol;
  std::vector<std::string> messages;
};

/// Probabilistic check that det J is not identically zero on S. Primality
/// of the ideal is assumed, never decided.
ValidationReport validate(const AlgebraicSetup& setup, const JacobianData& jd, int trials,
                          std::uint64_t seed, double tol = kOnVarietyTol);

bool in_critical_set(const JacobianData& jd, const VarietyPoint& p, double tol = kCriticalTol);

}  // namespace algpot
