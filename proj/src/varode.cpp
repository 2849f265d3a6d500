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

#include "algpot/varode.hpp"

#include <Eigen/Eigenvalues>
#include <boost/numeric/odeint.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace algpot {

namespace {

namespace odeint = boost::numeric::odeint;

using State = std::array<Complex, 4>;  // columns of the 2x2 fundamental matrix

Rational ratio(std::int64_t num, std::int64_t den) {
  Rational r(static_cast<long>(num), static_cast<long>(den));
  r.canonicalize();
  return r;
}

void fill_common(HypergeomVE& ve) {
  const std::int64_t k = ve.k;
  ve.alpha = ratio(3 * k - 2, 2 * k);
  ve.beta = ratio(k - 1, k);
  ve.gamma = ve.lambda / (2.0 * static_cast<double>(k));
  // Indicial roots: {0, 1 - beta} at 0, {0, beta - alpha + 1} at 1, and
  // the roots of mu^2 - (alpha - 1) mu - gamma at infinity.
  ve.exponents_zero = {Rational(0), Rational(1) - ve.beta};
  ve.exponents_one = {Rational(0), ve.beta - ve.alpha + 1};
  ve.infinity_sum = ve.alpha - 1;
  ve.infinity_product = -ve.gamma;
  const Complex sum(ve.infinity_sum.get_d(), 0.0);
  const Complex disc = std::sqrt(sum * sum - 4.0 * ve.infinity_product);
  ve.exponents_infinity = {(sum + disc) / 2.0, (sum - disc) / 2.0};
}

// One path piece: z(theta) = center + radius * exp(i theta), or a segment.
struct Path {
  enum Kind { kArc, kSegment } kind;
  Complex center;
  double radius;
  double theta0;
  double theta1;
  Complex from;
  Complex to;

  Complex z(double t) const {
    if (kind == kArc) return center + radius * std::exp(Complex(0.0, theta0 + (theta1 - theta0) * t));
    return from + (to - from) * t;
  }
  Complex dz(double t) const {
    if (kind == kArc) {
      const double dtheta = theta1 - theta0;
      return Complex(0.0, dtheta) * radius * std::exp(Complex(0.0, theta0 + dtheta * t));
    }
    return to - from;
  }
};

CMatrix transport(const HypergeomVE& ve, const std::vector<Path>& pieces, int steps) {
  const Complex a(ve.alpha.get_d(), 0.0);
  const Complex b(ve.beta.get_d(), 0.0);
  const Complex g = ve.gamma;
  State y = {Complex(1.0), Complex(0.0), Complex(0.0), Complex(1.0)};
  for (const Path& piece : pieces) {
    auto rhs = [&](const State& s, State& ds, double t) {
      const Complex z = piece.z(t);
      const Complex dz = piece.dz(t);
      const Complex denom = z * (z - 1.0);
      for (int col = 0; col < 2; ++col) {
        const Complex x = s[static_cast<std::size_t>(2 * col)];
        const Complex xp = s[static_cast<std::size_t>(2 * col + 1)];
        ds[static_cast<std::size_t>(2 * col)] = xp * dz;
        ds[static_cast<std::size_t>(2 * col + 1)] = (g * x - (a * z - b) * xp) / denom * dz;
      }
    };
    auto stepper = odeint::make_controlled<odeint::runge_kutta_fehlberg78<State>>(1e-13, 1e-13);
    const double dt = 1.0 / steps;
    for (int i = 0; i < steps; ++i) {
      odeint::integrate_adaptive(stepper, rhs, y, i * dt, (i + 1) * dt, dt);
    }
  }
  CMatrix m(2, 2);
  m << y[0], y[2], y[1], y[3];
  for (const auto& v : y) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw std::runtime_error("integration failure");
  }
  return m;
}

double match_error(const std::array<Complex, 2>& got, const std::array<Complex, 2>& want) {
  const double direct = std::max(std::abs(got[0] - want[0]), std::abs(got[1] - want[1]));
  const double swapped = std::max(std::abs(got[0] - want[1]), std::abs(got[1] - want[0]));
  return std::min(direct, swapped);
}

Complex exp2pii(Complex rho) { return std::exp(Complex(0.0, 2.0 * std::numbers::pi) * rho); }

LoopMonodromy analyze_loop(const std::string& name, const CMatrix& m, std::array<Complex, 2> rho, double tol) {
  LoopMonodromy loop;
  loop.singularity = name;
  loop.matrix = m;
  Eigen::ComplexEigenSolver<CMatrix> es(m, false);
  loop.eigenvalues = {es.eigenvalues()(0), es.eigenvalues()(1)};
  loop.expected = {exp2pii(rho[0]), exp2pii(rho[1])};
  loop.error = match_error(loop.eigenvalues, loop.expected);
  loop.passed = loop.error <= tol;
  const Complex diff = rho[0] - rho[1];
  if (std::abs(diff.imag()) < 1e-12 && std::abs(diff.real() - std::round(diff.real())) < 1e-12) {
    loop.notice = "integer exponent difference: logarithmic solutions possible, eigenvalues compared only";
  }
  return loop;
}

}  // namespace

Rational HypergeomVE::fuchs_sum() const {
  return exponents_zero[0] + exponents_zero[1] + exponents_one[0] + exponents_one[1] + infinity_sum;
}

HypergeomVE build_ve(std::int64_t k, const Rational& lambda) {
  if (k == 0) throw std::invalid_argument("the variational equation needs k != 0");
  HypergeomVE ve;
  ve.k = k;
  ve.lambda = {lambda.get_d(), 0.0};
  ve.exact_lambda = lambda;
  Rational g = lambda / (2 * Rational(static_cast<long>(k)));
  g.canonicalize();
  ve.exact_gamma = g;
  fill_common(ve);
  return ve;
}

HypergeomVE build_ve(std::int64_t k, Complex lambda) {
  if (k == 0) throw std::invalid_argument("the variational equation needs k != 0");
  HypergeomVE ve;
  ve.k = k;
  ve.lambda = lambda;
  fill_common(ve);
  return ve;
}

MonodromyReport monodromy_check(const HypergeomVE& ve, double tol) {
  MonodromyReport report;
  const int steps = report.steps;
  const double r = report.radius;
  const double pi = std::numbers::pi;

  // Counterclockwise loops from the basepoint 1/2.
  const std::vector<Path> around_zero = {{Path::kArc, 0.0, r, 0.0, 2.0 * pi, {}, {}}};
  const std::vector<Path> around_one = {{Path::kArc, 1.0, r, pi, 3.0 * pi, {}, {}}};
  // Clockwise circle of radius 3/2 about 1/2 encloses 0 and 1: positive
  // orientation about infinity. Reached along a segment from the basepoint.
  const Complex bottom(0.5, -1.5);
  const std::vector<Path> around_infinity = {
      {Path::kSegment, {}, 0.0, 0.0, 0.0, report.basepoint, bottom},
      {Path::kArc, report.basepoint, 1.5, -0.5 * pi, -2.5 * pi, {}, {}},
      {Path::kSegment, {}, 0.0, 0.0, 0.0, bottom, report.basepoint},
  };

  const CMatrix m0 = transport(ve, around_zero, steps);
  const CMatrix m1 = transport(ve, around_one, steps);
  const CMatrix minf = transport(ve, around_infinity, steps);

  const std::array<Complex, 2> rho0 = {Complex(ve.exponents_zero[0].get_d()), Complex(ve.exponents_zero[1].get_d())};
  const std::array<Complex, 2> rho1 = {Complex(ve.exponents_one[0].get_d()), Complex(ve.exponents_one[1].get_d())};
  report.loops.push_back(analyze_loop("0", m0, rho0, tol));
  report.loops.push_back(analyze_loop("1", m1, rho1, tol));
  report.loops.push_back(analyze_loop("infinity", minf, ve.exponents_infinity, tol));
  for (const auto& loop : report.loops) {
    if (!loop.notice.empty()) report.notices.push_back(loop.singularity + ": " + loop.notice);
  }

  // Columns are continued solutions, so loop matrices act on the right and
  // the relation reads M_inf M_0 M_1 = I.
  report.product_error = (minf * m0 * m1 - CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff();
  report.passed = report.loops[0].passed && report.loops[1].passed && report.product_error <= 10.0 * tol;
  return report;
}

}  // namespace algpot
