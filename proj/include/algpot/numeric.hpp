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

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <span>

namespace algpot {

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline std::span<const std::complex<double>> as_span(const CVector& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

inline double max_abs(const CVector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

/// Independent deterministic stream for trial `index` of a run seeded with `seed`.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

/// Uniform sample from the complex disc of the given radius.
template <class Rng>
std::complex<double> random_in_disc(Rng& rng, double radius) {
  // Rejection keeps the sample uniform; generate_canonical is used because
  // its output is fixed by the standard across library implementations.
  while (true) {
    const double x = 2.0 * std::generate_canonical<double, 53>(rng) - 1.0;
    const double y = 2.0 * std::generate_canonical<double, 53>(rng) - 1.0;
    if (x * x + y * y <= 1.0) return {radius * x, radius * y};
  }
}

}  // namespace algpot
