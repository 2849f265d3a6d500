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
#include <span>
#include <string>
#include <vector>

#include "algpot/expr.hpp"
#include "algpot/numeric.hpp"
#include "algpot/spectrum.hpp"

namespace algpot {

/// Admissible (k, lambda) pairs for a homogeneous potential of integer
/// degree k. The integer parameter of each row is written p below.
///
///   familyA   any k != 0   lambda = p (p k + k - 2) / 2
///   familyB   any k != 0   lambda = (p k + k - 1)(p k + 1) / (2 k)
///   wildcard  k = 2, -2    any lambda
///   special   k in {-5, -4, -3, 3, 4, 5}   lambda = A + B (C + D p)^2
enum class RowKind { kFamilyA, kFamilyB, kWildcard, kSpecial };

struct TableRow {
  std::string id;
  RowKind kind;
  std::int64_t k = 0;  // 0 means any nonzero k (families A and B)
  Rational a, b, c, d;

  bool applies_to(std::int64_t degree) const { return k == 0 || k == degree; }
  /// Row value at integer parameter p; not meaningful for wildcard rows.
  Rational lambda(std::int64_t degree, const Integer& p) const;
};

struct TableOptions {
  /// Coefficient B of the single k = -4 row is -k4_coefficient.
  Rational k4_coefficient{1, 4};
};

/// The eighteen rows, in printed order (left column first).
std::vector<TableRow> table_rows(const TableOptions& options = {});

struct Witness {
  std::string row;
  std::optional<Integer> p;  // empty for wildcard rows
};

enum class VerdictMode { kExact, kNumeric };

struct TableVerdict {
  std::int64_t k = 0;
  Complex lambda;
  std::optional<Rational> exact_lambda;
  bool reconstructed = false;  // exact_lambda came from rationalize()
  double reconstruction_error = 0.0;
  bool matched = false;
  VerdictMode mode = VerdictMode::kExact;
  std::vector<Witness> witnesses;
  /// Not matched in exact mode. Numeric non-matches never set this.
  bool obstruction = false;
  std::string note;
};

/// Exact membership of (k, lambda); throws std::invalid_argument when k = 0.
TableVerdict check_pair_exact(std::int64_t k, const Rational& lambda, const TableOptions& options = {});

/// Reconstructs lambda as a rational and checks exactly; otherwise solves
/// each row for p in floating point, rounds, and back-substitutes at tol.
TableVerdict check_pair_numeric(std::int64_t k, Complex lambda, double tol = kSpectrumTol,
                                const TableOptions& options = {}, std::int64_t max_den = kMaxDenominator);

/// Verdicts gathered at one Darboux point.
struct PointVerdicts {
  std::size_t point_index = 0;
  CVector point;
  bool diagonalizable = true;
  bool diagonalizable_uncertain = false;
  std::vector<TableVerdict> verdicts;
};

struct ObstructionWitness {
  std::size_t point_index = 0;
  CVector point;
  TableVerdict verdict;
};

enum class Outcome { kObstruction, kNoObstruction, kHypothesesUnverified, kNotApplicable };

struct Certificate {
  Outcome outcome = Outcome::kNotApplicable;
  std::string statement;
  std::vector<ObstructionWitness> witnesses;
  std::vector<std::string> notes;
};

std::string to_string(Outcome outcome);

/// Combines verdicts over all eigenvalues at all accepted Darboux points.
/// An exact-mode miss at a point with a verified diagonalizable Hessian
/// yields a non-integrability certificate.
Certificate certify(std::span<const PointVerdicts> points, bool allow_numeric_certificate = false);

}  // namespace algpot
