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
#include <vector>

#include "algpot/expr.hpp"
#include "algpot/numeric.hpp"

namespace algpot {

inline constexpr double kSpectrumTol = 1e-8;
inline constexpr std::int64_t kMaxDenominator = 1'000'000;

/// Continued-fraction reconstruction of a nearly rational real number.
/// Returns the first convergent p/q (q <= max_den) within tol of x, or
/// nullopt when |Im x| > tol or no convergent qualifies.
std::optional<Rational> rationalize(Complex x, double tol = kSpectrumTol,
                                    std::int64_t max_den = kMaxDenominator, double* error = nullptr);

/// One group of numerically coincident eigenvalues.
struct EigenCluster {
  Complex value;                 // mean of the members
  int multiplicity = 0;          // algebraic
  int geometric_multiplicity = 0;
  int gauge_count = 0;           // members attributed to symmetry directions
  std::optional<Rational> rational;
  double reconstruction_error = 0.0;
  // Singular values of H - value*I at positions multiplicity and
  // multiplicity+1 (ascending); the first must vanish for a semisimple cluster.
  double sigma_kernel = 0.0;
  double sigma_gap = 0.0;
};

struct Spectrum {
  std::vector<Complex> eigenvalues;  // n values, with multiplicity, sorted
  std::vector<EigenCluster> clusters;
  bool diagonalizable = true;
  /// Some cluster's kernel singular value lies within a factor 10 of the
  /// rank threshold, so diagonalizability is not established either way.
  bool uncertain = false;
  double diag_margin = 0.0;  // largest sigma_kernel / threshold over clusters
  double norm = 0.0;
  double tol = kSpectrumTol;
};

/// Eigenvalues of a complex square matrix clustered at relative tolerance
/// tol, with a numeric-rank diagonalizability check per cluster.
/// Throws std::runtime_error if the eigen iteration does not converge.
Spectrum eigen(const CMatrix& h, double tol = kSpectrumTol, std::int64_t max_den = kMaxDenominator);

}  // namespace algpot
