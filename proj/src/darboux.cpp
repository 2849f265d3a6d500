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

#include "algpot/darboux.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <limits>

namespace algpot {

namespace {

using Idx = Eigen::Index;

struct LinearRows {
  CMatrix a;  // rows x (n+s)
  CVector b;
};

LinearRows gauge_rows(const BodyGauge& gauge, const CVector& start, std::size_t n, std::size_t nv) {
  std::vector<CVector> rows;
  std::vector<Complex> rhs;
  const CVector q = start.head(static_cast<Idx>(n));
  for (const auto& dir : gauge_directions(gauge, q)) {
    CVector row = CVector::Zero(static_cast<Idx>(nv));
    row.head(static_cast<Idx>(n)) = dir.vector;
    // Translations: pin the centroid at 0. Rotations: stay on the slice
    // through the start orthogonal to the rotation orbit.
    rhs.push_back(dir.kind == "translation" ? Complex(0.0) : dir.vector.cwiseProduct(q).sum());
    rows.push_back(std::move(row));
  }
  LinearRows out{CMatrix(static_cast<Idx>(rows.size()), static_cast<Idx>(nv)),
                 CVector(static_cast<Idx>(rows.size()))};
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out.a.row(static_cast<Idx>(r)) = rows[r].transpose();
    out.b(static_cast<Idx>(r)) = rhs[r];
  }
  return out;
}

CMatrix system_jacobian(const PotentialDerivatives& pd, std::span<const Complex> x) {
  const AlgebraicSetup& setup = pd.setup();
  const JacobianData& jd = pd.jacobian();
  const auto n = static_cast<Idx>(setup.n);
  const auto s = static_cast<Idx>(setup.s);
  CMatrix jac(n + s, n + s);
  jac.topRows(n) = pd.at(x, false).grad_jacobian;
  jac.topLeftCorner(n, n) -= CMatrix::Identity(n, n);
  if (s > 0) {
    jac.bottomLeftCorner(s, n) = jd.eval_dGdq(x);
    jac.bottomRightCorner(s, s) = jd.eval_J(x);
  }
  return jac;
}

double inf_norm(const CVector& v) { return max_abs(v); }

bool finite(const CVector& v) { return v.allFinite(); }

int numerical_nullity(const CMatrix& jac) {
  if (jac.size() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(jac);
  const auto& sv = svd.singularValues();
  const double thr = 1e-8 * std::max(sv(0), 1e-300);
  int count = 0;
  for (Idx i = 0; i < sv.size(); ++i) count += sv(i) <= thr ? 1 : 0;
  return count;
}

}  // namespace

std::vector<GaugeDirection> gauge_directions(const BodyGauge& gauge, const CVector& q) {
  std::vector<GaugeDirection> dirs;
  const auto n = static_cast<Idx>(gauge.bodies * gauge.dim);
  if (q.size() != n) throw std::invalid_argument("gauge layout does not match the q-vector length");
  for (std::size_t a = 0; a < gauge.dim; ++a) {
    CVector t = CVector::Zero(n);
    for (std::size_t i = 0; i < gauge.bodies; ++i) t(static_cast<Idx>(i * gauge.dim + a)) = 1.0;
    dirs.push_back({t, 0.0, "translation"});
  }
  const double scale = 1.0 + q.norm();
  for (std::size_t a = 0; a < gauge.dim; ++a) {
    for (std::size_t b = a + 1; b < gauge.dim; ++b) {
      CVector r = CVector::Zero(n);
      for (std::size_t i = 0; i < gauge.bodies; ++i) {
        r(static_cast<Idx>(i * gauge.dim + a)) = -q(static_cast<Idx>(i * gauge.dim + b));
        r(static_cast<Idx>(i * gauge.dim + b)) = q(static_cast<Idx>(i * gauge.dim + a));
      }
      if (r.norm() > 1e-12 * scale) dirs.push_back({r, 1.0, "rotation"});
    }
  }
  return dirs;
}

CVector darboux_system(const PotentialDerivatives& pd, std::span<const Complex> x) {
  const AlgebraicSetup& setup = pd.setup();
  const auto n = static_cast<Idx>(setup.n);
  const auto s = static_cast<Idx>(setup.s);
  CVector f(n + s);
  const CVector g = pd.grad_at(x);
  for (Idx i = 0; i < n; ++i) f(i) = g(i) - x[static_cast<std::size_t>(i)];
  if (s > 0) f.tail(s) = eval_generators(setup, x);
  return f;
}

NewtonRun darboux_newton(const PotentialDerivatives& pd, CVector start, const DarbouxOptions& options) {
  const AlgebraicSetup& setup = pd.setup();
  const std::size_t nv = setup.nvars();
  std::optional<LinearRows> extra;
  if (options.gauge) extra = gauge_rows(*options.gauge, start, setup.n, nv);

  auto residual_of = [&](const CVector& x) -> std::optional<CVector> {
    try {
      CVector f = darboux_system(pd, as_span(x));
      if (extra) {
        CVector full(f.size() + extra->b.size());
        full << f, extra->a * x - extra->b;
        f = std::move(full);
      }
      if (!finite(f)) return std::nullopt;
      return f;
    } catch (const std::exception&) {
      return std::nullopt;
    }
  };

  NewtonRun run;
  run.x = std::move(start);
  auto f = residual_of(run.x);
  if (!f) {
    run.failure = "pole at start";
    return run;
  }
  double r = inf_norm(*f);
  bool step_small = false;
  for (int it = 0; it < options.max_iter; ++it) {
    run.iterations = it;
    if (r <= options.converge_tol && step_small) break;
    CMatrix jac;
    try {
      jac = system_jacobian(pd, as_span(run.x));
      if (extra) {
        CMatrix full(jac.rows() + extra->a.rows(), jac.cols());
        full << jac, extra->a;
        jac = std::move(full);
      }
    } catch (const std::exception&) {
      if (r <= options.tol) break;
      run.failure = "pole in Jacobian at iterate";
      return run;
    }
    if (!jac.allFinite()) {
      if (r <= options.tol) break;
      run.failure = "non-finite Jacobian at iterate";
      return run;
    }
    Eigen::CompleteOrthogonalDecomposition<CMatrix> cod(jac);
    const CVector step = cod.solve(*f);
    if (cod.rank() == 0 || !finite(step)) {
      if (r <= options.tol) break;
      run.failure = "Jacobian singular at iterate";
      return run;
    }
    step_small = inf_norm(step) <= 1e-13 * (1.0 + inf_norm(run.x));
    double alpha = 1.0;
    bool moved = false;
    for (int h = 0; h <= options.max_halvings; ++h, alpha *= 0.5) {
      CVector trial = run.x - alpha * step;
      auto ft = residual_of(trial);
      if (!ft) continue;
      const double rt = inf_norm(*ft);
      if (rt < r || (rt <= options.converge_tol && r <= options.converge_tol)) {
        run.x = std::move(trial);
        f = std::move(ft);
        r = rt;
        moved = true;
        break;
      }
    }
    if (!moved) {
      if (r <= options.tol) break;
      run.failure = "damping failed to reduce the residual";
      return run;
    }
    if (step_small && r <= options.converge_tol) break;
  }
  run.residual = r;
  run.converged = r <= options.tol;
  if (!run.converged) run.failure = "no convergence within " + std::to_string(options.max_iter) + " iterations";
  return run;
}

DarbouxResult solve_darboux(const AlgebraicSetup& setup, const JacobianData& jd,
                            const PotentialDerivatives& pd, const DarbouxOptions& options) {
  DarbouxResult result;
  const auto n = static_cast<Idx>(setup.n);
  const auto nv = static_cast<Idx>(setup.nvars());

  std::vector<std::pair<CVector, std::string>> starts;
  for (std::size_t i = 0; i < options.seeds.size(); ++i) {
    if (options.seeds[i].size() != nv) {
      throw std::invalid_argument("seed " + std::to_string(i) + " has " + std::to_string(options.seeds[i].size()) +
                                  " components, expected " + std::to_string(nv));
    }
    starts.emplace_back(options.seeds[i], "seed " + std::to_string(i));
  }
  for (int i = 0; i < options.n_random; ++i) {
    auto rng = make_stream(options.seed, static_cast<std::uint64_t>(i));
    CVector x(nv);
    for (Idx j = 0; j < nv; ++j) x(j) = random_in_disc(rng, options.random_radius);
    starts.emplace_back(std::move(x), "random " + std::to_string(i));
  }
  result.starts = static_cast<int>(starts.size());

  std::vector<DarbouxReport> found;
  for (auto& [start, origin] : starts) {
    NewtonRun run = darboux_newton(pd, start, options);
    if (!run.converged) {
      ++result.abandoned;
      continue;
    }
    ++result.converged;
    const CVector& x = run.x;
    bool duplicate = false;
    for (const auto& prev : found) {
      const double scale = 1.0 + std::max(inf_norm(prev.point.coords), inf_norm(x));
      if (inf_norm(prev.point.coords - x) < options.dedupe_tol * scale) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;

    DarbouxReport rep;
    rep.origin = origin;
    rep.iterations = run.iterations;
    rep.point = make_point(setup, jd, x);
    rep.residual = inf_norm(darboux_system(pd, as_span(x)));
    rep.grad_residual = inf_norm(darboux_system(pd, as_span(x)).head(n));
    try {
      rep.nullity = numerical_nullity(system_jacobian(pd, as_span(x)));
    } catch (const std::exception&) {
      rep.nullity = -1;
    }
    rep.sigma_flag = in_sigma_v(setup.potential, jd, rep.point, options.sigma_tol);
    if (rep.sigma_flag) {
      rep.diagnostic = "rejected: Darboux point in Sigma(V)";
    } else if (x.norm() < options.zero_tol) {
      rep.diagnostic = "rejected: excluded point c = 0";
    } else if (rep.residual > options.tol || !rep.point.on_variety(options.tol)) {
      rep.diagnostic = "rejected: residual above acceptance tolerance";
    } else {
      rep.accepted = true;
      rep.degenerate = x.head(n).norm() < options.zero_tol;
      if (rep.degenerate) rep.diagnostic = "degenerate: pi(c) = 0, no verdict";
      try {
        rep.hessian = pd.at(as_span(x)).hessian;
      } catch (const std::exception& e) {
        rep.accepted = false;
        rep.diagnostic = std::string("rejected: Hessian evaluation failed: ") + e.what();
      }
    }
    found.push_back(std::move(rep));
  }
  for (auto& rep : found) {
    (rep.accepted ? result.accepted : result.rejected).push_back(std::move(rep));
  }
  if (result.accepted.empty()) result.notes.emplace_back("no Darboux points found");
  return result;
}

}  // namespace algpot
