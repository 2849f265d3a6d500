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

#include "algpot/dynamics.hpp"

#include <Eigen/LU>
#include <boost/numeric/odeint.hpp>

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace algpot {

namespace {

std::string fmt_g(double x, int digits) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

namespace odeint = boost::numeric::odeint;

using Idx = Eigen::Index;
using State = std::vector<Complex>;

CVector join_qw(const CVector& q, const CVector& w) {
  CVector x(q.size() + w.size());
  x << q, w;
  return x;
}

double critical_value(const PotentialDerivatives& pd, const CVector& x) {
  if (pd.setup().s == 0) return 1.0;
  return std::abs(eval(pd.setup(), pd.jacobian().detJ, as_span(x)));
}

struct Layout {
  Idx n;
  Idx s;
  State pack(const TrajectoryState& st) const {
    State x(static_cast<std::size_t>(2 * n + s));
    for (Idx i = 0; i < n; ++i) {
      x[static_cast<std::size_t>(i)] = st.q(i);
      x[static_cast<std::size_t>(n + i)] = st.p(i);
    }
    for (Idx j = 0; j < s; ++j) x[static_cast<std::size_t>(2 * n + j)] = st.w(j);
    return x;
  }
  void unpack(const State& x, CVector& q, CVector& p, CVector& w) const {
    q.resize(n);
    p.resize(n);
    w.resize(s);
    for (Idx i = 0; i < n; ++i) {
      q(i) = x[static_cast<std::size_t>(i)];
      p(i) = x[static_cast<std::size_t>(n + i)];
    }
    for (Idx j = 0; j < s; ++j) w(j) = x[static_cast<std::size_t>(2 * n + j)];
  }
};

// Two Newton corrections of G(q, w) = 0 in w.
void project_w(const PotentialDerivatives& pd, const CVector& q, CVector& w) {
  if (w.size() == 0) return;
  for (int it = 0; it < 2; ++it) {
    const CVector x = join_qw(q, w);
    const CVector g = eval_generators(pd.setup(), as_span(x));
    if (max_abs(g) == 0.0) return;
    w -= pd.jacobian().eval_J(as_span(x)).partialPivLu().solve(g);
  }
}

}  // namespace

TrajectoryState make_state(const PotentialDerivatives& pd, double t, CVector q, CVector p, CVector w) {
  TrajectoryState st;
  st.t = t;
  st.q = std::move(q);
  st.p = std::move(p);
  st.w = std::move(w);
  const CVector x = join_qw(st.q, st.w);
  st.constraint_residual = max_abs(eval_generators(pd.setup(), as_span(x)));
  st.critical_value = critical_value(pd, x);
  st.energy = 0.5 * st.p.cwiseProduct(st.p).sum() + eval(pd.setup(), pd.setup().potential, as_span(x));
  return st;
}

CVector vector_field(const PotentialDerivatives& pd, const TrajectoryState& state, double tol) {
  const Idx n = state.q.size();
  const Idx s = state.w.size();
  const CVector x = join_qw(state.q, state.w);
  if (s > 0 && critical_value(pd, x) <= tol) throw std::domain_error("state in critical set");
  CVector d(2 * n + s);
  d.head(n) = state.p;
  d.segment(n, n) = -pd.grad_at(as_span(x));
  if (s > 0) d.tail(s) = pd.dwdq_at(as_span(x)) * state.p;
  return d;
}

Trajectory integrate(const PotentialDerivatives& pd, const TrajectoryState& init, double t_end,
                     const IntegrateOptions& options) {
  const AlgebraicSetup& setup = pd.setup();
  if (init.q.size() != static_cast<Idx>(setup.n) || init.p.size() != static_cast<Idx>(setup.n) ||
      init.w.size() != static_cast<Idx>(setup.s)) {
    throw std::invalid_argument("initial state does not match the setup dimensions");
  }
  const Layout layout{static_cast<Idx>(setup.n), static_cast<Idx>(setup.s)};
  Trajectory traj;
  TrajectoryState first = make_state(pd, init.t, init.q, init.p, init.w);
  const Complex h0 = first.energy;
  traj.samples.push_back(first);
  traj.constraint_drift = first.constraint_residual;
  if (setup.s > 0 && first.critical_value <= options.critical_tol) {
    traj.diagnostic = "initial state in critical set Sigma(I): |det J| = " + fmt_g(first.critical_value, 3);
    return traj;
  }

  auto rhs = [&](const State& x, State& dx, double t) {
    TrajectoryState st;
    st.t = t;
    layout.unpack(x, st.q, st.p, st.w);
    const CVector d = vector_field(pd, st, options.critical_tol);
    dx.assign(d.data(), d.data() + d.size());
  };

  auto stepper = odeint::make_controlled<odeint::runge_kutta_fehlberg78<State>>(options.abs_tol, options.rel_tol);
  State x = layout.pack(first);
  double t = init.t;
  const double span = t_end - init.t;
  const int intervals = std::max(1, options.samples - 1);
  double dt = span / intervals / 8.0;
  const double min_dt = 1e-14 * (1.0 + std::fabs(t_end));

  try {
    for (int k = 1; k <= intervals; ++k) {
      const double target = init.t + span * k / intervals;
      while (t < target) {
        double h = std::min(dt, target - t);
        const double h_try = h;
        const auto result = stepper.try_step(rhs, x, t, h);
        if (result == odeint::fail) {
          ++traj.rejected_steps;
          dt = h;
          if (dt < min_dt) {
            traj.diagnostic = "step size underflow at t = " + fmt_g(t, 6);
            return traj;
          }
          continue;
        }
        ++traj.steps;
        // Keep the proposed size unless clamped to the grid.
        dt = h_try < dt ? std::max(dt, h) : h;
        if (target - t < 1e-15 * (1.0 + std::fabs(target))) t = target;
        CVector q, p, w;
        layout.unpack(x, q, p, w);
        if (options.project) {
          project_w(pd, q, w);
          for (Idx j = 0; j < w.size(); ++j) x[static_cast<std::size_t>(2 * layout.n + j)] = w(j);
        }
        if (setup.s > 0) {
          const double cv = critical_value(pd, join_qw(q, w));
          if (cv <= options.critical_tol) {
            traj.samples.push_back(make_state(pd, t, q, p, w));
            traj.diagnostic = "approached critical set Sigma(I) at t = " + fmt_g(t, 6) +
                              ": |det J| = " + fmt_g(cv, 3);
            return traj;
          }
        }
      }
      CVector q, p, w;
      layout.unpack(x, q, p, w);
      TrajectoryState st = make_state(pd, target, q, p, w);
      traj.energy_drift = std::max(traj.energy_drift, std::abs(st.energy - h0));
      traj.constraint_drift = std::max(traj.constraint_drift, st.constraint_residual);
      traj.samples.push_back(std::move(st));
    }
  } catch (const std::domain_error& e) {
    traj.diagnostic = std::string(e.what()) + " near t = " + fmt_g(t, 6);
    return traj;
  } catch (const PoleError& e) {
    traj.diagnostic = std::string("pole of the potential near t = ") + fmt_g(t, 6) + ": " + e.what();
    return traj;
  }
  traj.completed = true;
  return traj;
}

HomotheticOrbit homothetic_orbit(const PotentialDerivatives& pd, const Homogeneity& h, const CVector& c,
                                 const OrbitOptions& options) {
  const AlgebraicSetup& setup = pd.setup();
  const auto n = static_cast<Idx>(setup.n);
  const auto s = static_cast<Idx>(setup.s);
  if (c.size() != n + s) throw std::invalid_argument("Darboux point has the wrong length");
  if (h.d2 == 0) throw std::invalid_argument("homothetic orbit needs d2 != 0");
  const int d1 = static_cast<int>(h.d1);
  const int d2 = static_cast<int>(h.d2);
  const double e = options.energy_constant;
  const CVector cq = c.head(n);
  const CVector cw = c.tail(s);

  HomotheticOrbit orbit;
  orbit.energy = cq.cwiseProduct(cq).sum() * e;

  const Complex phi0 = std::pow(Complex(0.5), 1.0 / d2);
  const Complex rhs0 = 2.0 * (e - (static_cast<double>(d1) / d2) * std::pow(phi0, d2)) /
                       (static_cast<double>(d1 * d1) * std::pow(phi0, 2 * d1 - 2));
  const Complex dphi0 = static_cast<double>(options.branch >= 0 ? 1 : -1) * std::sqrt(rhs0);

  using Phi = std::array<Complex, 2>;
  auto accel = [d1, d2](Complex f, Complex df) {
    return -std::pow(f, d2 - 2 * d1 + 1) / static_cast<double>(d1) - static_cast<double>(d1 - 1) * df * df / f;
  };
  auto rhs = [&](const Phi& y, Phi& dy, double) {
    if (std::abs(y[0]) < 1e-8) throw std::domain_error("phi reached 0");
    dy[0] = y[1];
    dy[1] = accel(y[0], y[1]);
  };

  auto assemble = [&](double t, Complex f, Complex df) {
    const Complex fd1 = std::pow(f, d1);
    CVector q = fd1 * cq;
    CVector p = static_cast<double>(d1) * std::pow(f, d1 - 1) * df * cq;
    CVector w(s);
    for (Idx j = 0; j < s; ++j) w(j) = std::pow(f, static_cast<int>(h.kw[static_cast<std::size_t>(j)])) * cw(j);
    return make_state(pd, t, std::move(q), std::move(p), std::move(w));
  };

  auto stepper = odeint::make_controlled<odeint::runge_kutta_fehlberg78<Phi>>(options.tol, options.tol);
  Phi y = {phi0, dphi0};
  const int intervals = std::max(1, options.samples - 1);
  try {
    for (int k = 0; k <= intervals; ++k) {
      const double t = options.t_end * k / intervals;
      if (k > 0) {
        const double t0 = options.t_end * (k - 1) / intervals;
        odeint::integrate_adaptive(stepper, rhs, y, t0, t, (t - t0) / 8.0);
      }
      if (std::abs(y[0]) < 1e-8) throw std::domain_error("phi reached 0");
      TrajectoryState st = assemble(t, y[0], y[1]);
      // Derivative of the assembled curve against the vector field.
      const Complex f = y[0];
      const Complex df = y[1];
      const Complex ddf = accel(f, df);
      CVector dx(2 * n + s);
      dx.head(n) = st.p;
      dx.segment(n, n) = static_cast<double>(d1) *
                         (static_cast<double>(d1 - 1) * std::pow(f, d1 - 2) * df * df + std::pow(f, d1 - 1) * ddf) *
                         cq;
      for (Idx j = 0; j < s; ++j) {
        const int kj = static_cast<int>(h.kw[static_cast<std::size_t>(j)]);
        dx(2 * n + j) = static_cast<double>(kj) * std::pow(f, kj - 1) * df * cw(j);
      }
      const CVector field = vector_field(pd, st);
      orbit.max_residual = std::max(orbit.max_residual, max_abs(dx - field));
      orbit.energy_drift = std::max(orbit.energy_drift, std::abs(st.energy - orbit.energy));
      orbit.phi.push_back(f);
      orbit.samples.push_back(std::move(st));
    }
  } catch (const std::domain_error& err) {
    orbit.truncated = true;
    orbit.notice = std::string("orbit truncated: ") + err.what() + " (Gamma meets Sigma(V))";
  } catch (const PoleError& err) {
    orbit.truncated = true;
    orbit.notice = std::string("orbit truncated at a pole: ") + err.what();
  }
  return orbit;
}

}  // namespace algpot
