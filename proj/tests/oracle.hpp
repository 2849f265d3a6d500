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

#include <set>

#include "algpot/expr.hpp"

namespace testdata {

using algpot::Rational;

inline Rational ratio(long a, long b) {
  Rational x(a, b);
  x.canonicalize();
  return x;
}

// Brute force over the formulas written out independently of TableRow.
inline std::set<Rational> enumerate_table(long k, long pmax, const Rational& k4) {
  std::set<Rational> out;
  const Rational kk(k);
  for (long p = -pmax; p <= pmax; ++p) {
    const Rational pp(p);
    out.insert(Rational(pp * (pp * kk + kk - 2) / 2));
    out.insert(Rational((pp * kk + kk - 1) * (pp * kk + 1) / (2 * kk)));
    auto special = [&](Rational a, Rational b, Rational c, Rational d) {
      const Rational x = c + d * pp;
      out.insert(Rational(a + b * x * x));
    };
    switch (k) {
      case -5:
        special(ratio(49, 40), ratio(-1, 40), ratio(10, 3), ratio(10, 1));
        special(ratio(49, 40), ratio(-1, 40), ratio(4, 1), ratio(10, 1));
        break;
      case -4:
        special(ratio(9, 8), -k4, ratio(4, 3), ratio(4, 1));
        break;
      case -3:
        for (auto c : {ratio(2, 1), ratio(3, 2), ratio(6, 5), ratio(12, 5)}) special(ratio(25, 24), ratio(-1, 24), c, ratio(6, 1));
        break;
      case 3:
        for (auto c : {ratio(2, 1), ratio(3, 2), ratio(6, 5), ratio(12, 5)}) special(ratio(-1, 24), ratio(1, 24), c, ratio(6, 1));
        break;
      case 4:
        special(ratio(-1, 8), ratio(1, 8), ratio(4, 3), ratio(4, 1));
        break;
      case 5:
        special(ratio(-9, 40), ratio(1, 40), ratio(10, 3), ratio(10, 1));
        special(ratio(-9, 40), ratio(1, 40), ratio(4, 1), ratio(10, 1));
        break;
      default:
        break;
    }
  }
  return out;
}

}  // namespace testdata
