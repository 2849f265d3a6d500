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

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "algpot/calculus.hpp"
#include "algpot/parser.hpp"
#include "algpot/variety.hpp"

namespace testdata {

inline const char* kRadialCubic =
    "vars q1 q2\n"
    "ext w1 : w1^2 - q1^2 - q2^2\n"
    "potential w1^3\n";

inline const char* kSqrtBranch =
    "vars q1 q2\n"
    "ext w1 : w1^2 - q1\n"
    "potential w1^5 + q2^2\n";

// Two chained extensions with a rational potential.
inline const char* kTwoExt =
    "vars q1 q2 q3\n"
    "ext w1 : w1^2 - q1 - q2^2\n"
    "ext w2 : w2^3 - w1*q2 - 1 - q3^2\n"
    "potential w1*w2/(q1 + 2) + q1*w2^2 + q3*w1\n";

using RealFn = std::function<double(const std::vector<double>&)>;

/// A setup together with an explicit real branch w(q) and V(q, w(q)).
struct Branch {
  algpot::AlgebraicSetup setup;
  std::function<std::vector<double>(const std::vector<double>&)> w;
  std::function<std::vector<double>(std::mt19937_64&)> sample_q;

  double v(const std::vector<double>& q) const {
    const auto ws = w(q);
    std::vector<algpot::Complex> x(q.begin(), q.end());
    x.insert(x.end(), ws.begin(), ws.end());
    return setup.potential.eval(x).real();
  }
  algpot::CVector point(const std::vector<double>& q) const {
    const auto ws = w(q);
    algpot::CVector x(static_cast<Eigen::Index>(q.size() + ws.size()));
    for (std::size_t i = 0; i < q.size(); ++i) x(static_cast<Eigen::Index>(i)) = q[i];
    for (std::size_t j = 0; j < ws.size(); ++j) x(static_cast<Eigen::Index>(q.size() + j)) = ws[j];
    return x;
  }
};

inline double uniform(std::mt19937_64& rng, double a, double b) {
  return a + (b - a) * std::generate_canonical<double, 53>(rng);
}

inline Branch radial_cubic_branch() {
  Branch b{algpot::parse_setup(kRadialCubic), nullptr, nullptr};
  b.w = [](const std::vector<double>& q) { return std::vector<double>{std::sqrt(q[0] * q[0] + q[1] * q[1])}; };
  b.sample_q = [](std::mt19937_64& rng) {
    return std::vector<double>{uniform(rng, 0.3, 1.5), uniform(rng, -1.5, 1.5)};
  };
  return b;
}

inline Branch sqrt_branch() {
  Branch b{algpot::parse_setup(kSqrtBranch), nullptr, nullptr};
  b.w = [](const std::vector<double>& q) { return std::vector<double>{std::sqrt(q[0])}; };
  b.sample_q = [](std::mt19937_64& rng) {
    return std::vector<double>{uniform(rng, 0.3, 2.0), uniform(rng, -1.5, 1.5)};
  };
  return b;
}

inline Branch two_ext_branch() {
  Branch b{algpot::parse_setup(kTwoExt), nullptr, nullptr};
  b.w = [](const std::vector<double>& q) {
    const double w1 = std::sqrt(q[0] + q[1] * q[1]);
    return std::vector<double>{w1, std::cbrt(w1 * q[1] + 1.0 + q[2] * q[2])};
  };
  b.sample_q = [](std::mt19937_64& rng) {
    return std::vector<double>{uniform(rng, 0.5, 1.5), uniform(rng, -0.8, 0.8), uniform(rng, -1.0, 1.0)};
  };
  return b;
}

/// Two bodies in the plane on the sheet r = -|q1 - q2|.
inline Branch two_body_branch() {
  Branch b{algpot::parse_setup("vars q1_1 q1_2 q2_1 q2_2\n"
                               "ext r1_2 : r1_2^2 - (q1_1 - q2_1)^2 - (q1_2 - q2_2)^2\n"
                               "potential 1/r1_2\n"),
           nullptr, nullptr};
  b.w = [](const std::vector<double>& q) { return std::vector<double>{-std::hypot(q[0] - q[2], q[1] - q[3])}; };
  b.sample_q = [](std::mt19937_64& rng) {
    return std::vector<double>{uniform(rng, 0.5, 1.5), uniform(rng, -1.0, 1.0), uniform(rng, -1.5, -0.5),
                               uniform(rng, -1.0, 1.0)};
  };
  return b;
}

inline double fd_first(const Branch& b, std::vector<double> q, std::size_t k, double h = 1e-5) {
  const double q0 = q[k];
  q[k] = q0 + h;
  const double fp = b.v(q);
  q[k] = q0 - h;
  const double fm = b.v(q);
  return (fp - fm) / (2.0 * h);
}

inline double fd_second(const Branch& b, std::vector<double> q, std::size_t i, std::size_t j, double h = 1e-4) {
  auto at = [&](double si, double sj) {
    auto x = q;
    x[i] += si * h;
    x[j] += sj * h;
    return b.v(x);
  };
  if (i == j) {
    const double f0 = b.v(q);
    return (at(1, 0) - 2.0 * f0 + at(-1, 0)) / (h * h);
  }
  return (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * h * h);
}

inline double rel_err(std::complex<double> got, double want) {
  return std::abs(got - want) / std::max(1.0, std::fabs(want));
}

}  // namespace testdata
