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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "algpot/expr.hpp"
#include "algpot/numeric.hpp"

namespace algpot {

/// z(z-1) X'' + (alpha z - beta) X' - gamma X = 0 with
/// alpha = (3k-2)/(2k), beta = (k-1)/k, gamma = lambda/(2k):
/// the normal form of one diagonal block of the variational equation
/// along the homothetic orbit, in the variable z = phi^d2.
struct HypergeomVE {
  std::int64_t k = 0;
  Complex lambda;
  std::optional<Rational> exact_lambda;

  Rational alpha;  // (3k-2)/(2k)
  Rational beta;   // (k-1)/k
  Complex gamma;   // lambda/(2k)
  std::optional<Rational> exact_gamma;

  std::array<Rational, 2> exponents_zero;  // {0, 1/k}
  std::array<Rational, 2> exponents_one;   // {0, 1/2}
  Rational infinity_sum;                   // a + b = (k-2)/(2k)
  Complex infinity_product;                // a b = -lambda/(2k)
  std::array<Complex, 2> exponents_infinity;

  /// Sum of all six exponents, computed exactly; equals 1.
  Rational fuchs_sum() const;
};

HypergeomVE build_ve(std::int64_t k, const Rational& lambda);
HypergeomVE build_ve(std::int64_t k, Complex lambda);

struct LoopMonodromy {
  std::string singularity;  // "0", "1", "infinity"
  CMatrix matrix;           // 2x2
  std::array<Complex, 2> eigenvalues;
  std::array<Complex, 2> expected;  // exp(2 pi i exponent)
  double error = 0.0;
  bool passed = false;
  std::string notice;
};

struct MonodromyReport {
  std::vector<LoopMonodromy> loops;
  double product_error = 0.0;  // max |M_inf M_0 M_1 - I|
  bool passed = false;
  int steps = 720;
  double radius = 0.5;
  Complex basepoint{0.5, 0.0};
  std::vector<std::string> notices;
};

/// Integrates the 2x2 first-order system around z = 0 and z = 1 (radius
/// 1/2, basepoint 1/2, 720 grid steps, adaptive Runge-Kutta-Fehlberg 7(8)
/// between grid points) and around both at once for infinity. Checks the
/// monodromy eigenvalues against exp(2 pi i exponent).
MonodromyReport monodromy_check(const HypergeomVE& ve, double tol = 1e-6);

}  // namespace algpot
