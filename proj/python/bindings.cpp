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

// pybind11 entry points. Results cross the boundary as JSON text; the
// Python package turns them into dicts.
#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "algpot/analysis.hpp"
#include "algpot/complex_io.hpp"
#include "algpot/dynamics.hpp"
#include "algpot/nbody.hpp"
#include "algpot/parser.hpp"
#include "algpot/varode.hpp"

namespace py = pybind11;
using namespace algpot;

namespace {

Rational exact(const std::string& text) {
  Rational r;
  if (r.set_str(text, 10) != 0) throw std::invalid_argument("bad rational '" + text + "'");
  r.canonicalize();
  return r;
}

bool looks_exact(const std::string& text) { return text.find_first_of(".eEij(") == std::string::npos; }

CVector to_vector(const std::vector<Complex>& xs) {
  CVector v(static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) v(static_cast<Eigen::Index>(i)) = xs[i];
  return v;
}

std::vector<CVector> to_vectors(const std::vector<std::vector<Complex>>& xs) {
  std::vector<CVector> out;
  for (const auto& x : xs) out.push_back(to_vector(x));
  return out;
}

Json setup_json(const AlgebraicSetup& s) {
  Json j;
  j["n"] = s.n;
  j["s"] = s.s;
  j["names"] = s.names;
  Json gens = Json::array();
  for (const auto& g : s.generators) gens.push_back(to_string(g, s.names));
  j["generators"] = gens;
  j["potential"] = to_string(s.potential, s.names);
  return j;
}

std::string parse(const std::string& text) { return setup_json(parse_setup(text)).dump(); }

std::string run_analysis(const std::string& text, std::uint64_t seed, int n_random, double tol,
                         const std::vector<std::vector<Complex>>& seeds, bool stop_after_darboux,
                         bool include_hessian, bool allow_numeric_certificate, const std::string& source) {
  AnalyzeOptions o;
  o.seed = seed;
  o.n_random = n_random;
  o.tol = tol;
  o.seeds = to_vectors(seeds);
  o.stop_after_darboux = stop_after_darboux;
  o.include_hessian = include_hessian;
  o.allow_numeric_certificate = allow_numeric_certificate;
  return to_json(analyze(parse_setup(text), o, source)).dump();
}

std::string check_table(std::int64_t k, const std::string& lambda, bool numeric, double tol,
                        const std::string& k4_coefficient) {
  TableOptions opts;
  opts.k4_coefficient = exact(k4_coefficient);
  TableVerdict v;
  if (!looks_exact(lambda)) {
    v = check_pair_numeric(k, parse_complex(lambda), tol, opts);
  } else if (numeric) {
    v = check_pair_numeric(k, Complex(exact(lambda).get_d(), 0.0), tol, opts);
  } else {
    v = check_pair_exact(k, exact(lambda), opts);
  }
  return verdict_json(v).dump();
}

std::string variational(std::int64_t k, const std::string& lambda, bool monodromy, double tol) {
  const HypergeomVE ve = looks_exact(lambda) ? build_ve(k, exact(lambda)) : build_ve(k, parse_complex(lambda));
  std::optional<MonodromyReport> mono;
  if (monodromy) mono = monodromy_check(ve, tol);
  return ve_json(ve, mono, tol).dump();
}

std::string simulate(const std::string& text, const std::vector<Complex>& q, const std::vector<Complex>& p,
                     const std::optional<std::vector<Complex>>& w, double t_end, bool project, int samples) {
  const AlgebraicSetup setup = parse_setup(text);
  const JacobianData jd = jacobian(setup);
  const PotentialDerivatives pd(setup, jd);
  if (q.size() != setup.n || p.size() != setup.n) throw std::invalid_argument("q and p need n entries");
  CVector w0;
  if (w) {
    w0 = to_vector(*w);
  } else {
    auto solved = solve_extension(setup, jd, to_vector(q), CVector::Ones(static_cast<Eigen::Index>(setup.s)));
    if (!solved) throw std::runtime_error("could not solve G(q, w) = 0 for the initial w");
    w0 = solved->tail(static_cast<Eigen::Index>(setup.s));
  }
  if (static_cast<std::size_t>(w0.size()) != setup.s) throw std::invalid_argument("w needs s entries");
  IntegrateOptions opts;
  opts.project = project;
  opts.samples = samples;
  const Trajectory traj = integrate(pd, make_state(pd, 0.0, to_vector(q), to_vector(p), w0), t_end, opts);
  Json j = trajectory_json(setup, traj, opts);
  Json trace = Json::array();
  for (const auto& st : traj.samples) trace.push_back(state_json(setup, st));
  j["trace"] = std::move(trace);
  return j.dump();
}

NBodyConfig config(std::size_t n, std::size_t dim, const std::string& masses) {
  NBodyConfig cfg;
  cfg.n = n;
  cfg.d = dim;
  cfg.masses = masses.empty() ? std::vector<Rational>(n, Rational(1)) : parse_masses(masses);
  return cfg;
}

std::string nbody_problem(std::size_t n, std::size_t dim, const std::string& masses) {
  return problem_text(config(n, dim, masses));
}

std::string nbody_analyze(std::size_t n, std::size_t dim, const std::string& masses, std::uint64_t seed, int n_random) {
  const NBodyConfig cfg = config(n, dim, masses);
  AnalyzeOptions o;
  o.seed = seed;
  o.n_random = n_random;
  const SeedSet seeds = central_config_seeds(cfg);
  o.seeds = seeds.seeds;
  o.gauge = cfg.gauge();
  std::ostringstream src;
  src << "nbody n=" << n << " dim=" << dim;
  AnalysisReport rep = analyze(build(cfg), o, src.str());
  if (!seeds.notice.empty()) rep.warnings.push_back(seeds.notice);
  Json j = to_json(rep);
  j["seed_labels"] = seeds.labels;
  return j.dump();
}

std::optional<std::pair<std::string, std::string>> rationalize_py(Complex x, double tol, std::int64_t max_den) {
  const auto r = rationalize(x, tol, max_den);
  if (!r) return std::nullopt;
  return std::make_pair(r->get_num().get_str(), r->get_den().get_str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Compiled core of algpot";
  m.attr("__version__") = kVersion;
  m.attr("DEFAULT_SEED") = kDefaultSeed;

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  m.def("parse", &parse, py::arg("text"));
  m.def("analyze", &run_analysis, py::arg("text"), py::arg("seed") = kDefaultSeed, py::arg("n_random") = 16,
        py::arg("tol") = 1e-9, py::arg("seeds") = std::vector<std::vector<Complex>>{},
        py::arg("stop_after_darboux") = false, py::arg("include_hessian") = true,
        py::arg("allow_numeric_certificate") = false, py::arg("source") = "");
  m.def("check_table", &check_table, py::arg("k"), py::arg("lam"), py::arg("numeric") = false,
        py::arg("tol") = kSpectrumTol, py::arg("k4_coefficient") = "1/4");
  m.def("variational", &variational, py::arg("k"), py::arg("lam"), py::arg("monodromy") = false,
        py::arg("tol") = 1e-6);
  m.def("simulate", &simulate, py::arg("text"), py::arg("q"), py::arg("p"), py::arg("w") = py::none(),
        py::arg("t_end") = 1.0, py::arg("project") = false, py::arg("samples") = 101);
  m.def("nbody_problem", &nbody_problem, py::arg("n"), py::arg("dim") = 2, py::arg("masses") = "");
  m.def("nbody_analyze", &nbody_analyze, py::arg("n"), py::arg("dim") = 2, py::arg("masses") = "",
        py::arg("seed") = kDefaultSeed, py::arg("n_random") = 16);
  m.def("rationalize", &rationalize_py, py::arg("x"), py::arg("tol") = kSpectrumTol,
        py::arg("max_den") = kMaxDenominator);
}
