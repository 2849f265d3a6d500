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

#include "algpot/calculus.hpp"
#include "algpot/mrtable.hpp"
#include "algpot/spectrum.hpp"
#include "algpot/variety.hpp"

namespace algpot {

/// q-coordinates laid out body-major: q[i * dim + a] is coordinate a of body i.
/// Used to pin the translation/rotation symmetry of many-body potentials.
struct BodyGauge {
  std::size_t bodies = 0;
  std::size_t dim = 0;
};

/// Symmetry direction in q-space and the Hessian eigenvalue it carries at
/// any Darboux point (0 for translations, 1 for rotations).
struct GaugeDirection {
  CVector vector;
  double eigenvalue;
  std::string kind;
};

std::vector<GaugeDirection> gauge_directions(const BodyGauge& gauge, const CVector& q);

struct DarbouxOptions {
  std::vector<CVector> seeds;  // full (q, w) starts
  int n_random = 16;
  std::uint64_t seed = 1;
  double random_radius = 2.0;
  double tol = 1e-9;             // acceptance residual
  double converge_tol = 1e-12;
  int max_iter = 200;
  int max_halvings = 30;
  double sigma_tol = kCriticalTol;
  double zero_tol = 1e-8;
  double dedupe_tol = 1e-6;
  std::optional<BodyGauge> gauge;
};

struct DarbouxReport {
  VarietyPoint point;
  double grad_residual = 0.0;  // max |dV/dq_i(c) - c_i|
  double residual = 0.0;       // max |F(c)| over the full square system
  bool sigma_flag = false;
  bool degenerate = false;     // pi(c) = 0 with c != 0
  bool accepted = false;
  std::string diagnostic;
  std::string origin;          // "seed i" or "random i"
  int iterations = 0;
  int nullity = 0;             // numerical corank of the system Jacobian at c
  CMatrix hessian;
  std::optional<Spectrum> spectrum;
  std::vector<TableVerdict> verdicts;
};

struct DarbouxResult {
  std::vector<DarbouxReport> accepted;
  std::vector<DarbouxReport> rejected;
  int starts = 0;
  int converged = 0;
  int abandoned = 0;
  std::vector<std::string> notes;
};

/// Outcome of one damped Newton run on F(q, w) = (grad_q V - q, G).
struct NewtonRun {
  CVector x;
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;
  std::string failure;
};

NewtonRun darboux_newton(const PotentialDerivatives& pd, CVector start, const DarbouxOptions& options);

/// F(q, w) at a point.
CVector darboux_system(const PotentialDerivatives& pd, std::span<const Complex> x);

/// Multi-start damped Newton for Darboux points grad_q V(c) = pi(c) on S.
/// Candidates in Sigma(V) and the origin are rejected with a diagnostic;
/// accepted reports carry the Hessian in q-derivations. Deterministic in
/// (setup, seeds, n_random, seed).
DarbouxResult solve_darboux(const AlgebraicSetup& setup, const JacobianData& jd,
                            const PotentialDerivatives& pd, const DarbouxOptions& options);

}  // namespace algpot
