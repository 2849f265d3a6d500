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

#include "algpot/spectrum.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace algpot {

std::optional<Rational> rationalize(Complex x, double tol, std::int64_t max_den, double* error) {
  if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return std::nullopt;
  if (std::abs(x.imag()) > tol) return std::nullopt;
  const long double target = x.real();
  if (std::fabs(target) > 9.0e15L) return std::nullopt;

  // Convergents h/k of the continued fraction of target.
  long double y = target;
  std::int64_t h_prev = 1;
  std::int64_t h = static_cast<std::int64_t>(std::floor(y));
  std::int64_t k_prev = 0;
  std::int64_t k = 1;
  for (int iter = 0; iter < 64; ++iter) {
    const long double approx = static_cast<long double>(h) / static_cast<long double>(k);
    const double err = static_cast<double>(std::fabs(approx - target));
    if (err <= tol) {
      if (error != nullptr) *error = std::hypot(err, x.imag());
      return Rational(Integer(std::to_string(h)), Integer(std::to_string(k)));
    }
    const long double frac = y - std::floor(y);
    if (frac == 0.0L) break;
    y = 1.0L / frac;
    if (y > 9.0e15L) break;
    const auto a = static_cast<std::int64_t>(std::floor(y));
    const long double k_next = static_cast<long double>(a) * k + k_prev;
    if (k_next > static_cast<long double>(max_den)) break;
    const std::int64_t h_next = a * h + h_prev;
    h_prev = h;
    k_prev = k;
    h = h_next;
    k = static_cast<std::int64_t>(k_next);
  }
  return std::nullopt;
}

namespace {

bool complex_less(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

Spectrum eigen(const CMatrix& h, double tol, std::int64_t max_den) {
  if (h.rows() != h.cols()) throw std::invalid_argument("eigen: matrix is not square");
  if (!h.allFinite()) throw std::invalid_argument("eigen: matrix has non-finite entries");
  Spectrum sp;
  sp.tol = tol;
  const auto n = h.rows();
  if (n == 0) return sp;
  sp.norm = h.norm();

  Eigen::ComplexEigenSolver<CMatrix> solver(h, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigen iteration failed to converge");
  std::vector<Complex> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  std::sort(ev.begin(), ev.end(), complex_less);
  sp.eigenvalues = ev;

  // Single-linkage clustering at radius tol * max(1, |H|).
  const double radius = tol * std::max(1.0, sp.norm);
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[static_cast<std::size_t>(i)] != i) i = parent[static_cast<std::size_t>(i)];
    return i;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(ev[static_cast<std::size_t>(i)] - ev[static_cast<std::size_t>(j)]) <= radius) {
        parent[static_cast<std::size_t>(find(j))] = find(i);
      }
    }
  }
  std::vector<int> roots;
  for (int i = 0; i < n; ++i) {
    const int r = find(i);
    if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
  }

  const double threshold = tol * std::max(sp.norm, 1e-300);
  for (const int r : roots) {
    EigenCluster c;
    Complex sum(0.0);
    for (int i = 0; i < n; ++i) {
      if (find(i) == r) {
        sum += ev[static_cast<std::size_t>(i)];
        ++c.multiplicity;
      }
    }
    c.value = sum / static_cast<double>(c.multiplicity);
    const CMatrix shifted = h - c.value * CMatrix::Identity(n, n);
    Eigen::JacobiSVD<CMatrix> svd(shifted);
    Eigen::VectorXd sv = svd.singularValues();  // descending
    std::vector<double> asc(sv.data(), sv.data() + sv.size());
    std::reverse(asc.begin(), asc.end());
    c.sigma_kernel = asc[static_cast<std::size_t>(c.multiplicity - 1)];
    c.sigma_gap = c.multiplicity < n ? asc[static_cast<std::size_t>(c.multiplicity)] : 0.0;
    c.geometric_multiplicity =
        static_cast<int>(std::count_if(asc.begin(), asc.end(), [&](double s) { return s <= threshold; }));
    c.geometric_multiplicity = std::min(c.geometric_multiplicity, c.multiplicity);
    if (c.multiplicity > 1) {
      if (c.geometric_multiplicity < c.multiplicity) sp.diagonalizable = false;
      if (c.sigma_kernel > threshold / 10.0 && c.sigma_kernel < threshold * 10.0) sp.uncertain = true;
      sp.diag_margin = std::max(sp.diag_margin, c.sigma_kernel / threshold);
    }
    double err = 0.0;
    c.rational = rationalize(c.value, tol, max_den, &err);
    if (c.rational) c.reconstruction_error = err;
    sp.clusters.push_back(std::move(c));
  }
  std::sort(sp.clusters.begin(), sp.clusters.end(),
            [](const EigenCluster& a, const EigenCluster& b) { return complex_less(a.value, b.value); });
  return sp;
}

}  // namespace algpot
