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

#include <optional>
#include <string>
#include <vector>

#include "algpot/calculus.hpp"

namespace algpot {

/// Point of phase space M = C^n x (S \ Sigma(V)) with its diagnostics.
struct TrajectoryState {
  double t = 0.0;
  CVector q;
  CVector p;
  CVector w;
  Complex energy;                    // 1/2 sum p_i^2 + V(q, w)
  double constraint_residual = 0.0;  // max |G_i|
  double critical_value = 0.0;       // |det J|
};

/// Fills energy and residuals from (t, q, p, w).
TrajectoryState make_state(const PotentialDerivatives& pd, double t, CVector q, CVector p, CVector w);

/// (q', p', w') = (p, -grad_q V, dw/dq . p). Throws std::domain_error
/// "state in critical set" when |det J| <= tol.
CVector vector_field(const PotentialDerivatives& pd, const TrajectoryState& state, double tol = kCriticalTol);

struct IntegrateOptions {
  double abs_tol = 1e-13;
  double rel_tol = 1e-13;
  bool project = false;
  double critical_tol = kCriticalTol;
  int samples = 101;  // output grid, including both ends
};

struct Trajectory {
  std::vector<TrajectoryState> samples;
  bool completed = false;
  std::string diagnostic;
  double energy_drift = 0.0;      // max |H(t) - H(0)|
  double constraint_drift = 0.0;  // max constraint residual
  long steps = 0;
  long rejected_steps = 0;
};

/// Adaptive Runge-Kutta-Fehlberg 7(8) integration of the constrained system
/// along real time. Stops early at the critical set or on step underflow,
/// returning the partial trajectory with a diagnostic.
Trajectory integrate(const PotentialDerivatives& pd, const TrajectoryState& init, double t_end,
                     const IntegrateOptions& options = {});

struct HomotheticOrbit {
  std::vector<TrajectoryState> samples;
  std::vector<Complex> phi;
  double max_residual = 0.0;  // max |x'(t) - f(x(t))| over the grid
  double energy_drift = 0.0;
  Complex energy;             // (c.c) * energy_constant
  bool truncated = false;
  std::string notice;
};

struct OrbitOptions {
  double t_end = 0.5;
  int samples = 51;
  double energy_constant = 1.0;
  int branch = 1;  // sign of phi'(0)
  double tol = 1e-13;
};

/// Gamma: q = phi^d1 pi(c), w_j = phi^k_j c_wj, p = q'. phi solves
/// phi'' = -phi^(d2-2d1+1)/d1 - (d1-1) phi'^2/phi with phi^d2(0) = 1/2 and
/// phi'(0) fixed by 1/2 d1^2 phi'^2 phi^(2d1-2) = -(d1/d2) phi^d2 + E.
HomotheticOrbit homothetic_orbit(const PotentialDerivatives& pd, const Homogeneity& h, const CVector& c,
                                 const OrbitOptions& options = {});

}  // namespace algpot
