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

#include <string>
#include <string_view>
#include <vector>

#include "algpot/darboux.hpp"
#include "algpot/parser.hpp"

namespace algpot {

/// Tolerance used when decimal masses are turned into rationals.
inline constexpr double kMassTol = 1e-12;

struct NBodyConfig {
  std::size_t n = 3;
  std::size_t d = 2;
  std::vector<Rational> masses;

  /// Throws std::invalid_argument on n < 2, d < 2 or non-positive masses.
  void check() const;
  BodyGauge gauge() const { return {n, d}; }
};

/// "1,1,1", "1/2,3", "0.25,2": rationals exactly, decimals rationalized at kMassTol.
std::vector<Rational> parse_masses(std::string_view text);

/// V = sum m_i m_j / r_ij on r_ij^2 = |q_i - q_j|^2. Variables q{i}_{a}, then r{i}_{j}.
AlgebraicSetup build(const NBodyConfig& cfg);

/// Problem-file text of build(cfg), with the configuration as a comment.
std::string problem_text(const NBodyConfig& cfg);

struct SeedSet {
  std::vector<CVector> seeds;
  std::vector<std::string> labels;
  std::string notice;
};

/// Opposition pair (n = 2), equilateral triangle and the three collinear
/// orderings (n = 3), centred at the origin, on the sheet r_ij = -|q_i - q_j|
/// where the Darboux equation has real solutions. Empty for other n.
SeedSet central_config_seeds(const NBodyConfig& cfg);

}  // namespace algpot
