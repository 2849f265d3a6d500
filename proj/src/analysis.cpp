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

#include "algpot/analysis.hpp"

#include <Eigen/SVD>

#include <chrono>
#include <map>

namespace algpot {

namespace {

using Idx = Eigen::Index;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int numeric_rank(const CMatrix& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& sv = svd.singularValues();
  int r = 0;
  for (Idx i = 0; i < sv.size(); ++i) r += sv(i) > tol * std::max(1.0, sv(0)) ? 1 : 0;
  return r;
}

Json point_json(const AlgebraicSetup& setup, const CVector& x) {
  Json j = Json::object();
  for (std::size_t i = 0; i < setup.nvars(); ++i) j[setup.names[i]] = complex_json(x(static_cast<Idx>(i)));
  return j;
}

Json matrix_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Idx i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Idx k = 0; k < m.cols(); ++k) row.push_back(complex_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json report_json(const AlgebraicSetup& setup, const DarbouxReport& r, std::size_t index, bool hessian) {
  Json j;
  j["index"] = index;
  j["origin"] = r.origin;
  j["point"] = point_json(setup, r.point.coords);
  j["residual"] = r.residual;
  j["grad_residual"] = r.grad_residual;
  j["constraint_residual"] = r.point.constraint_residual;
  j["det_j"] = r.point.critical_value;
  j["in_sigma_v"] = r.sigma_flag;
  j["degenerate"] = r.degenerate;
  j["accepted"] = r.accepted;
  j["iterations"] = r.iterations;
  j["nullity"] = r.nullity;
  j["diagnostic"] = r.diagnostic;
  if (hessian && r.hessian.size() > 0) j["hessian"] = matrix_json(r.hessian);
  if (r.spectrum) j["spectrum"] = spectrum_json(*r.spectrum);
  if (!r.verdicts.empty()) {
    Json vs = Json::array();
    for (const auto& v : r.verdicts) vs.push_back(verdict_json(v));
    j["verdicts"] = std::move(vs);
  }
  return j;
}

// Surfaces a module failure with the module name in front.
template <class F>
auto stage(const char* module, F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string(module) + ": " + e.what());
  }
}

}  // namespace

// + 0.0 turns -0.0 into 0.0.
Json complex_json(Complex z) { return Json::array({z.real() + 0.0, z.imag() + 0.0}); }

Json rational_json(const std::optional<Rational>& r) {
  if (!r) return nullptr;
  return to_string(*r);
}

Json verdict_json(const TableVerdict& v) {
  Json j;
  j["k"] = v.k;
  j["lambda"] = complex_json(v.lambda);
  j["lambda_exact"] = rational_json(v.exact_lambda);
  j["reconstructed"] = v.reconstructed;
  j["reconstruction_error"] = v.reconstruction_error;
  j["mode"] = v.mode == VerdictMode::kExact ? "exact" : "numeric";
  j["matched"] = v.matched;
  j["obstruction"] = v.obstruction;
  Json ws = Json::array();
  for (const auto& w : v.witnesses) {
    Json wj;
    wj["row"] = w.row;
    wj["p"] = w.p ? Json(w.p->get_str()) : Json(nullptr);
    ws.push_back(std::move(wj));
  }
  j["witnesses"] = std::move(ws);
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

Json spectrum_json(const Spectrum& s) {
  Json j;
  j["tol"] = s.tol;
  j["norm"] = s.norm;
  j["diagonalizable"] = s.diagonalizable;
  j["diagonalizable_uncertain"] = s.uncertain;
  j["diag_margin"] = s.diag_margin;
  Json ev = Json::array();
  for (const auto& z : s.eigenvalues) ev.push_back(complex_json(z));
  j["eigenvalues"] = std::move(ev);
  Json cl = Json::array();
  for (const auto& c : s.clusters) {
    Json cj;
    cj["value"] = complex_json(c.value);
    cj["multiplicity"] = c.multiplicity;
    cj["geometric_multiplicity"] = c.geometric_multiplicity;
    cj["gauge_count"] = c.gauge_count;
    cj["rational"] = rational_json(c.rational);
    cj["reconstruction_error"] = c.reconstruction_error;
    cj["sigma_kernel"] = c.sigma_kernel;
    cj["sigma_gap"] = c.sigma_gap;
    cl.push_back(std::move(cj));
  }
  j["clusters"] = std::move(cl);
  return j;
}

void flag_gauge(Spectrum& spectrum, const CMatrix& hessian, const BodyGauge& gauge, const CVector& q, double tol) {
  const double scale = std::max(1.0, spectrum.norm);
  std::map<double, std::vector<CVector>> by_value;
  for (const auto& dir : gauge_directions(gauge, q)) {
    const CVector v = dir.vector / dir.vector.norm();
    if ((hessian * v - dir.eigenvalue * v).norm() <= 1e3 * tol * scale) by_value[dir.eigenvalue].push_back(v);
  }
  for (auto& [value, vecs] : by_value) {
    CMatrix m(q.size(), static_cast<Idx>(vecs.size()));
    for (std::size_t i = 0; i < vecs.size(); ++i) m.col(static_cast<Idx>(i)) = vecs[i];
    int rank = numeric_rank(m, 1e-8);
    for (auto& c : spectrum.clusters) {
      if (rank == 0) break;
      if (std::abs(c.value - value) > 1e3 * tol * scale) continue;
      c.gauge_count = std::min(c.multiplicity, rank);
      rank -= c.gauge_count;
    }
  }
}

AnalysisReport analyze(const AlgebraicSetup& setup, const AnalyzeOptions& options, std::string source) {
  AnalysisReport rep;
  rep.setup = setup;
  rep.source = std::move(source);
  rep.options = options;

  auto t0 = Clock::now();
  const JacobianData jd = stage("variety", [&] { return jacobian(setup); });
  rep.validation = stage("variety", [&] { return validate(setup, jd, options.validate_trials, options.seed); });
  if (!rep.validation.detj_nonzero) {
    rep.warnings.emplace_back(rep.validation.inconclusive ? "validation inconclusive: no usable sample points"
                                                          : "det J vanishes at every sample: setup degenerate");
  }
  rep.timings.emplace_back("validate", seconds_since(t0));

  t0 = Clock::now();
  rep.homogeneity = stage("calculus", [&] { return detect_homogeneity(setup, jd, options.seed); });
  rep.timings.emplace_back("homogeneity", seconds_since(t0));

  t0 = Clock::now();
  const PotentialDerivatives pd = stage("calculus", [&] { return PotentialDerivatives(setup, jd, options.mode); });
  DarbouxOptions dopt;
  dopt.seeds = options.seeds;
  dopt.n_random = options.n_random;
  dopt.seed = options.seed;
  dopt.tol = options.tol;
  dopt.gauge = options.gauge;
  rep.darboux = stage("darboux", [&] { return solve_darboux(setup, jd, pd, dopt); });
  rep.timings.emplace_back("darboux", seconds_since(t0));

  const bool any_sigma = std::any_of(rep.darboux.rejected.begin(), rep.darboux.rejected.end(),
                                     [](const DarbouxReport& r) { return r.sigma_flag; });
  if (rep.darboux.accepted.empty() && any_sigma) {
    rep.warnings.emplace_back("all candidate Darboux points lie in Sigma(V); criterion not applicable");
  }

  std::optional<std::int64_t> k;
  if (!rep.homogeneity.homogeneity) {
    rep.warnings.push_back("potential is not weighted homogeneous (" + rep.homogeneity.message +
                           "); criterion not applicable");
  } else {
    k = rep.homogeneity.homogeneity->integer_degree();
    if (!k) {
      rep.warnings.push_back("homogeneity degree " + to_string(rep.homogeneity.homogeneity->degree) +
                             " is not an integer; criterion not applicable");
    } else if (*k == 0) {
      rep.warnings.emplace_back("homogeneity degree 0; criterion not applicable");
      k.reset();
    }
    if (!rep.homogeneity.homogeneity->unique) {
      rep.warnings.emplace_back("weight solution space has dimension > 1; using the first solution");
    }
  }

  const std::int64_t degree = k.value_or(0);
  t0 = Clock::now();
  std::vector<PointVerdicts> points;
  for (std::size_t i = 0; i < rep.darboux.accepted.size(); ++i) {
    DarbouxReport& dr = rep.darboux.accepted[i];
    if (dr.hessian.size() == 0) continue;
    Spectrum sp = stage("spectrum", [&] { return eigen(dr.hessian, options.spectrum_tol, options.max_den); });
    if (options.gauge) {
      flag_gauge(sp, dr.hessian, *options.gauge, dr.point.coords.head(static_cast<Idx>(setup.n)),
                 options.spectrum_tol);
    }
    dr.spectrum = sp;
    if (!k || dr.degenerate || options.stop_after_darboux) continue;
    PointVerdicts pv;
    pv.point_index = i;
    pv.point = dr.point.coords;
    pv.diagonalizable = sp.diagonalizable;
    pv.diagonalizable_uncertain = sp.uncertain;
    for (const auto& c : sp.clusters) {
      if (c.gauge_count >= c.multiplicity && !options.include_gauge_eigenvalues) continue;
      TableVerdict v = check_pair_numeric(degree, c.value, options.spectrum_tol, options.table, options.max_den);
      if (c.gauge_count > 0) {
        v.note += std::string(v.note.empty() ? "" : "; ") + std::to_string(c.gauge_count) + " of " +
                  std::to_string(c.multiplicity) + " copies along gauge directions";
      }
      dr.verdicts.push_back(v);
      pv.verdicts.push_back(std::move(v));
    }
    points.push_back(std::move(pv));
  }
  if (!options.stop_after_darboux) {
    Certificate cert = certify(points, options.allow_numeric_certificate);
    if (!k) {
      cert.outcome = Outcome::kNotApplicable;
      cert.statement = "criterion not applicable: no integer homogeneity degree";
      cert.witnesses.clear();
    }
    rep.exit_code = cert.outcome == Outcome::kObstruction ? 10 : 0;
    rep.certificate = std::move(cert);
  }
  rep.timings.emplace_back("spectrum_table", seconds_since(t0));
  return rep;
}

Json to_json(const AnalysisReport& rep, bool timings) {
  const AlgebraicSetup& setup = rep.setup;
  Json j;
  j["tool"] = {{"name", "algpot"}, {"version", kVersion}};
  Json s;
  s["source"] = rep.source;
  s["n"] = setup.n;
  s["s"] = setup.s;
  s["q"] = std::vector<std::string>(setup.q_names().begin(), setup.q_names().end());
  s["w"] = std::vector<std::string>(setup.w_names().begin(), setup.w_names().end());
  Json gens = Json::array();
  for (const auto& g : setup.generators) gens.push_back(to_string(g, setup.names));
  s["generators"] = std::move(gens);
  s["potential"] = to_string(setup.potential, setup.names);
  j["setup"] = std::move(s);

  const AnalyzeOptions& o = rep.options;
  Json opts;
  opts["seed"] = o.seed;
  opts["random_starts"] = o.n_random;
  opts["user_seeds"] = o.seeds.size();
  opts["darboux_tol"] = o.tol;
  opts["spectrum_tol"] = o.spectrum_tol;
  opts["max_den"] = o.max_den;
  opts["k4_coefficient"] = to_string(o.table.k4_coefficient);
  opts["gauge"] = o.gauge ? Json{{"bodies", o.gauge->bodies}, {"dim", o.gauge->dim}} : Json(nullptr);
  opts["include_gauge_eigenvalues"] = o.include_gauge_eigenvalues;
  opts["allow_numeric_certificate"] = o.allow_numeric_certificate;
  j["options"] = std::move(opts);

  const ValidationReport& v = rep.validation;
  j["validation"] = {{"detj_nonzero", v.detj_nonzero},       {"inconclusive", v.inconclusive},
                     {"primality_assumed", v.primality_assumed}, {"trials", v.trials},
                     {"samples_used", v.samples_used},       {"seed", v.seed},
                     {"max_abs_detj", v.max_abs_detj},       {"tol", v.tol},
                     {"messages", v.messages}};

  Json h;
  if (const auto& hom = rep.homogeneity.homogeneity) {
    h["homogeneous"] = true;
    h["d1"] = hom->d1;
    h["d2"] = hom->d2;
    Json kw = Json::object();
    for (std::size_t i = 0; i < setup.s; ++i) kw[setup.names[setup.n + i]] = hom->kw[i];
    h["weights"] = std::move(kw);
    h["degree"] = to_string(hom->degree);
    const auto kd = hom->integer_degree();
    h["integer_degree"] = kd ? Json(*kd) : Json(nullptr);
    h["unique"] = hom->unique;
  } else {
    h["homogeneous"] = false;
    h["message"] = rep.homogeneity.message;
  }
  j["homogeneity"] = std::move(h);

  const DarbouxResult& d = rep.darboux;
  Json dj;
  dj["starts"] = d.starts;
  dj["converged"] = d.converged;
  dj["abandoned"] = d.abandoned;
  dj["tol"] = {{"acceptance", o.tol}, {"sigma", kCriticalTol}, {"zero", 1e-8}, {"dedupe", 1e-6}};
  Json acc = Json::array();
  for (std::size_t i = 0; i < d.accepted.size(); ++i) {
    acc.push_back(report_json(setup, d.accepted[i], i, o.include_hessian));
  }
  dj["accepted"] = std::move(acc);
  Json rej = Json::array();
  for (std::size_t i = 0; i < d.rejected.size(); ++i) rej.push_back(report_json(setup, d.rejected[i], i, false));
  dj["rejected"] = std::move(rej);
  dj["notes"] = d.notes;
  j["darboux"] = std::move(dj);

  if (rep.certificate) {
    const Certificate& c = *rep.certificate;
    Json cj;
    cj["outcome"] = to_string(c.outcome);
    cj["statement"] = c.statement;
    Json ws = Json::array();
    for (const auto& w : c.witnesses) {
      Json wj;
      wj["point_index"] = w.point_index;
      wj["point"] = point_json(setup, w.point);
      wj["verdict"] = verdict_json(w.verdict);
      ws.push_back(std::move(wj));
    }
    cj["witnesses"] = std::move(ws);
    cj["notes"] = c.notes;
    j["certificate"] = std::move(cj);
  }
  j["warnings"] = rep.warnings;
  j["exit_code"] = rep.exit_code;
  if (timings) {
    Json t = Json::object();
    for (const auto& [name, sec] : rep.timings) t[name] = sec;
    j["timings"] = std::move(t);
  }
  return j;
}

namespace {

Json rationals_json(const std::array<Rational, 2>& r) { return Json::array({to_string(r[0]), to_string(r[1])}); }

}  // namespace

Json ve_json(const HypergeomVE& ve, const std::optional<MonodromyReport>& mono, double tol) {
  Json j;
  j["k"] = ve.k;
  j["lambda"] = complex_json(ve.lambda);
  j["lambda_exact"] = rational_json(ve.exact_lambda);
  j["equation"] = "z(z-1) X'' + (alpha z - beta) X' - gamma X = 0";
  j["coefficients"] = {{"alpha", to_string(ve.alpha)},
                       {"beta", to_string(ve.beta)},
                       {"gamma", complex_json(ve.gamma)},
                       {"gamma_exact", rational_json(ve.exact_gamma)}};
  j["exponents"] = {{"zero", rationals_json(ve.exponents_zero)},
                    {"one", rationals_json(ve.exponents_one)},
                    {"infinity", Json::array({complex_json(ve.exponents_infinity[0]),
                                              complex_json(ve.exponents_infinity[1])})},
                    {"infinity_sum", to_string(ve.infinity_sum)},
                    {"infinity_product", complex_json(ve.infinity_product)}};
  j["fuchs_sum"] = to_string(ve.fuchs_sum());
  if (mono) {
    Json m;
    m["tol"] = tol;
    m["steps"] = mono->steps;
    m["radius"] = mono->radius;
    m["basepoint"] = complex_json(mono->basepoint);
    m["integrator"] = "runge_kutta_fehlberg78, abs/rel tol 1e-13";
    Json loops = Json::array();
    for (const auto& l : mono->loops) {
      Json lj;
      lj["singularity"] = l.singularity;
      lj["eigenvalues"] = Json::array({complex_json(l.eigenvalues[0]), complex_json(l.eigenvalues[1])});
      lj["expected"] = Json::array({complex_json(l.expected[0]), complex_json(l.expected[1])});
      lj["error"] = l.error;
      lj["passed"] = l.passed;
      if (!l.notice.empty()) lj["notice"] = l.notice;
      loops.push_back(std::move(lj));
    }
    m["loops"] = std::move(loops);
    m["product_error"] = mono->product_error;
    m["passed"] = mono->passed;
    m["notices"] = mono->notices;
    j["monodromy"] = std::move(m);
  }
  return j;
}

Json state_json(const AlgebraicSetup& setup, const TrajectoryState& st) {
  Json j;
  j["t"] = st.t;
  Json x = Json::object();
  for (std::size_t i = 0; i < setup.n; ++i) x[setup.names[i]] = complex_json(st.q(static_cast<Eigen::Index>(i)));
  for (std::size_t i = 0; i < setup.n; ++i) {
    x["p_" + setup.names[i]] = complex_json(st.p(static_cast<Eigen::Index>(i)));
  }
  for (std::size_t i = 0; i < setup.s; ++i) {
    x[setup.names[setup.n + i]] = complex_json(st.w(static_cast<Eigen::Index>(i)));
  }
  j["state"] = std::move(x);
  j["energy"] = complex_json(st.energy);
  j["constraint_residual"] = st.constraint_residual;
  j["det_j"] = st.critical_value;
  return j;
}

Json trajectory_json(const AlgebraicSetup& setup, const Trajectory& traj, const IntegrateOptions& opts) {
  Json j;
  j["tolerances"] = {{"abs", opts.abs_tol}, {"rel", opts.rel_tol}, {"critical", opts.critical_tol}};
  j["completed"] = traj.completed;
  j["diagnostic"] = traj.diagnostic;
  j["steps"] = traj.steps;
  j["rejected_steps"] = traj.rejected_steps;
  j["samples"] = traj.samples.size();
  j["energy_drift"] = traj.energy_drift;
  j["constraint_drift"] = traj.constraint_drift;
  if (!traj.samples.empty()) {
    j["initial"] = state_json(setup, traj.samples.front());
    j["final"] = state_json(setup, traj.samples.back());
  }
  return j;
}

}  // namespace algpot
