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

// algpot command-line front end.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "algpot/analysis.hpp"
#include "algpot/complex_io.hpp"
#include "algpot/dynamics.hpp"
#include "algpot/nbody.hpp"
#include "algpot/parser.hpp"
#include "algpot/varode.hpp"

using namespace algpot;

namespace {

struct Globals {
  std::uint64_t seed = kDefaultSeed;
  double tol = 1e-9;
  std::string out;
  bool json = false;
  bool compact = false;
  bool timings = false;
  bool allow_numeric_certificate = false;
};

void emit(const Globals& g, const Json& j) {
  const std::string text = (g.compact ? j.dump() : j.dump(2)) + "\n";
  if (g.out.empty() || g.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + g.out + "'");
  f << text;
}

Rational parse_rational(const std::string& text) {
  Rational r;
  if (text.find_first_of(".eE") != std::string::npos) {
    throw std::invalid_argument("expected an exact rational p/q, got '" + text + "'");
  }
  if (r.set_str(text, 10) != 0) throw std::invalid_argument("bad rational '" + text + "'");
  r.canonicalize();
  return r;
}

std::vector<CVector> load_seeds(const std::string& path, std::size_t nvars) {
  if (path.empty()) return {};
  auto seeds = parse_vectors(read_file(path));
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (static_cast<std::size_t>(seeds[i].size()) != nvars) {
      throw std::invalid_argument("seed line " + std::to_string(i + 1) + " has " + std::to_string(seeds[i].size()) +
                                  " values, expected " + std::to_string(nvars));
    }
  }
  return seeds;
}

void write_csv(std::ostream& os, const AlgebraicSetup& setup, const std::vector<TrajectoryState>& samples) {
  os << "t";
  auto cols = [&](const std::string& name) { os << ',' << name << "_re," << name << "_im"; };
  for (std::size_t i = 0; i < setup.n; ++i) cols(setup.names[i]);
  for (std::size_t i = 0; i < setup.n; ++i) cols("p_" + setup.names[i]);
  for (std::size_t i = 0; i < setup.s; ++i) cols(setup.names[setup.n + i]);
  os << ",H_re,H_im,constraint_residual\n";
  os.precision(17);
  for (const auto& st : samples) {
    os << st.t;
    auto put = [&](Complex z) { os << ',' << z.real() << ',' << z.imag(); };
    for (Eigen::Index i = 0; i < st.q.size(); ++i) put(st.q(i));
    for (Eigen::Index i = 0; i < st.p.size(); ++i) put(st.p(i));
    for (Eigen::Index i = 0; i < st.w.size(); ++i) put(st.w(i));
    put(st.energy);
    os << ',' << st.constraint_residual << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Darboux points, Hessian spectra and the (k, lambda) table for algebraic potentials"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_option("--tol", g.tol, "tolerance (Darboux acceptance; table tolerance for check-table)")
      ->capture_default_str();
  app.add_option("--out", g.out, "write JSON here instead of stdout");
  app.add_flag("--json", g.json, "print the JSON summary even where CSV is the main output");
  app.add_flag("--compact", g.compact, "single-line JSON");
  app.add_flag("--timings", g.timings, "include wall-clock timings (breaks byte-identical output)");
  app.add_flag("--allow-numeric-certificate", g.allow_numeric_certificate,
               "let numeric-mode table misses count as obstructions");

  // analyze / darboux
  std::string file;
  std::string seeds_file;
  int n_random = 16;
  std::string k4 = "1/4";
  bool include_gauge = false;
  bool no_hessian = false;
  std::string deriv_mode = "auto";

  auto* analyze_cmd = app.add_subcommand("analyze", "full pipeline on a problem file");
  auto* darboux_cmd = app.add_subcommand("darboux", "Darboux points with their spectra");
  for (auto* cmd : {analyze_cmd, darboux_cmd}) {
    cmd->add_option("file", file, "problem file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--seeds", seeds_file, "file with one start vector (q, w) per line")->check(CLI::ExistingFile);
    cmd->add_option("--random", n_random, "number of random starts")->capture_default_str();
    cmd->add_flag("--no-hessian", no_hessian, "omit Hessian matrices from the report");
    cmd->add_option("--derivatives", deriv_mode, "auto | symbolic | numeric")
        ->check(CLI::IsMember({"auto", "symbolic", "numeric"}));
  }
  analyze_cmd->add_option("--k4-coefficient", k4, "coefficient B of the k=-4 row is minus this")->capture_default_str();

  // check-table
  std::int64_t degree = 0;
  std::string lambda_text;
  std::string numeric_text;
  bool numeric_flag = false;
  auto* table_cmd = app.add_subcommand("check-table", "membership of (k, lambda) in the table");
  table_cmd->add_option("--degree,-k", degree, "homogeneity degree k")->required();
  auto* lam_opt = table_cmd->add_option("--lambda", lambda_text, "exact eigenvalue p/q");
  auto* num_opt = table_cmd->add_option("--numeric", numeric_text, "numeric eigenvalue, e.g. 1.0000002 or 0.5+0.5i");
  table_cmd->add_flag("--numeric-mode", numeric_flag, "route an exact --lambda through the numeric check");
  lam_opt->excludes(num_opt);
  table_cmd->add_option("--k4-coefficient", k4, "coefficient B of the k=-4 row is minus this")->capture_default_str();

  // ve
  bool monodromy = false;
  auto* ve_cmd = app.add_subcommand("ve", "hypergeometric variational equation");
  ve_cmd->add_option("--degree,-k", degree, "homogeneity degree k")->required();
  ve_cmd->add_option("--lambda", lambda_text, "eigenvalue: p/q, or complex like 0.5+2i")->required();
  ve_cmd->add_flag("--monodromy", monodromy, "numeric monodromy check around 0, 1 and infinity");

  // simulate
  std::string init_file;
  double t_end = 1.0;
  bool project = false;
  std::string csv_file;
  int samples = 101;
  auto* sim_cmd = app.add_subcommand("simulate", "integrate the constrained equations of motion");
  sim_cmd->add_option("file", file, "problem file")->required()->check(CLI::ExistingFile);
  sim_cmd->add_option("--init", init_file, "state file with lines 'q ...', 'p ...', 'w ...'")
      ->required()
      ->check(CLI::ExistingFile);
  sim_cmd->add_option("--t-end", t_end, "final time")->capture_default_str();
  sim_cmd->add_flag("--project", project, "Newton-project w back onto G = 0 after each step");
  sim_cmd->add_option("--csv", csv_file, "write samples as CSV ('-' for stdout)");
  sim_cmd->add_option("--samples", samples, "output grid size")->capture_default_str();

  // nbody
  std::size_t bodies = 3;
  std::size_t dim = 2;
  std::string masses_text;
  bool run_analysis = false;
  std::string problem_out;
  auto* nbody_cmd = app.add_subcommand("nbody", "generate the n-body problem file");
  nbody_cmd->add_option("--n", bodies, "number of bodies")->capture_default_str();
  nbody_cmd->add_option("--dim", dim, "spatial dimension")->capture_default_str();
  nbody_cmd->add_option("--masses", masses_text, "comma-separated masses (default all 1)");
  nbody_cmd->add_flag("--analyze", run_analysis, "run the full pipeline with central-configuration seeds");
  nbody_cmd->add_option("--problem", problem_out, "also write the problem file here");
  nbody_cmd->add_flag("--include-gauge-eigenvalues", include_gauge, "feed gauge eigenvalues to the table");
  nbody_cmd->add_option("--random", n_random, "number of random starts")->capture_default_str();
  nbody_cmd->add_flag("--no-hessian", no_hessian, "omit Hessian matrices from the report");
  nbody_cmd->add_option("--k4-coefficient", k4, "coefficient B of the k=-4 row is minus this")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  const char* module = "cli";
  try {
    auto base_options = [&]() {
      AnalyzeOptions o;
      o.seed = g.seed;
      o.tol = g.tol;
      o.n_random = n_random;
      o.allow_numeric_certificate = g.allow_numeric_certificate;
      o.include_gauge_eigenvalues = include_gauge;
      o.include_hessian = !no_hessian;
      o.table.k4_coefficient = parse_rational(k4);
      if (deriv_mode == "symbolic") o.mode = PotentialDerivatives::Mode::kSymbolic;
      if (deriv_mode == "numeric") o.mode = PotentialDerivatives::Mode::kNumeric;
      return o;
    };

    if (analyze_cmd->parsed() || darboux_cmd->parsed()) {
      module = "parser";
      const AlgebraicSetup setup = load_setup(file);
      module = "cli";
      AnalyzeOptions o = base_options();
      o.seeds = load_seeds(seeds_file, setup.nvars());
      o.stop_after_darboux = darboux_cmd->parsed();
      module = "analyze";
      const AnalysisReport rep = analyze(setup, o, file);
      emit(g, to_json(rep, g.timings));
      return rep.exit_code;
    }

    if (table_cmd->parsed()) {
      module = "mrtable";
      TableOptions opts;
      opts.k4_coefficient = parse_rational(k4);
      const double tol = app.get_option("--tol")->count() > 0 ? g.tol : kSpectrumTol;
      TableVerdict v;
      if (!numeric_text.empty()) {
        v = check_pair_numeric(degree, parse_complex(numeric_text), tol, opts);
      } else if (!lambda_text.empty()) {
        const Rational lam = parse_rational(lambda_text);
        v = numeric_flag ? check_pair_numeric(degree, Complex(lam.get_d(), 0.0), tol, opts)
                         : check_pair_exact(degree, lam, opts);
      } else {
        throw std::invalid_argument("give --lambda or --numeric");
      }
      Json j = verdict_json(v);
      j["tol"] = tol;
      j["k4_coefficient"] = to_string(opts.k4_coefficient);
      emit(g, j);
      return 0;
    }

    if (ve_cmd->parsed()) {
      module = "varode";
      const bool exact = lambda_text.find_first_of(".ei") == std::string::npos;
      const HypergeomVE ve = exact ? build_ve(degree, parse_rational(lambda_text))
                                   : build_ve(degree, parse_complex(lambda_text));
      const double tol = app.get_option("--tol")->count() > 0 ? g.tol : 1e-6;
      std::optional<MonodromyReport> mono;
      if (monodromy) mono = monodromy_check(ve, tol);
      emit(g, ve_json(ve, mono, tol));
      return 0;
    }

    if (sim_cmd->parsed()) {
      module = "parser";
      const AlgebraicSetup setup = load_setup(file);
      module = "dynamics";
      const JacobianData jd = jacobian(setup);
      const PotentialDerivatives pd(setup, jd);
      const StateInput in = parse_state(read_file(init_file));
      if (static_cast<std::size_t>(in.q.size()) != setup.n) throw std::invalid_argument("'q' has the wrong length");
      CVector w;
      if (in.w) {
        w = *in.w;
      } else {
        auto solved = solve_extension(setup, jd, in.q, CVector::Ones(static_cast<Eigen::Index>(setup.s)));
        if (!solved) throw std::runtime_error("could not solve G(q, w) = 0 for the initial w");
        w = solved->tail(static_cast<Eigen::Index>(setup.s));
      }
      if (static_cast<std::size_t>(w.size()) != setup.s) throw std::invalid_argument("'w' has the wrong length");
      IntegrateOptions opts;
      opts.project = project;
      opts.samples = samples;
      const TrajectoryState init = make_state(pd, 0.0, in.q, in.p, w);
      const Trajectory traj = integrate(pd, init, t_end, opts);
      if (!csv_file.empty()) {
        if (csv_file == "-") {
          write_csv(std::cout, setup, traj.samples);
        } else {
          std::ofstream f(csv_file);
          if (!f) throw std::runtime_error("cannot write '" + csv_file + "'");
          write_csv(f, setup, traj.samples);
        }
      }
      if (csv_file != "-" || g.json) {
        Json j;
        j["source"] = file;
        j["t_end"] = t_end;
        j["project"] = project;
        j.update(trajectory_json(setup, traj, opts));
        emit(g, j);
      }
      return 0;
    }

    if (nbody_cmd->parsed()) {
      module = "nbody";
      NBodyConfig cfg;
      cfg.n = bodies;
      cfg.d = dim;
      cfg.masses = masses_text.empty() ? std::vector<Rational>(bodies, Rational(1)) : parse_masses(masses_text);
      const std::string text = problem_text(cfg);
      if (!problem_out.empty()) {
        std::ofstream f(problem_out);
        if (!f) throw std::runtime_error("cannot write '" + problem_out + "'");
        f << text;
      }
      if (!run_analysis) {
        if (problem_out.empty()) std::cout << text;
        return 0;
      }
      const AlgebraicSetup setup = build(cfg);
      AnalyzeOptions o = base_options();
      const SeedSet seeds = central_config_seeds(cfg);
      o.seeds = seeds.seeds;
      o.gauge = cfg.gauge();
      module = "analyze";
      std::ostringstream src;
      src << "nbody n=" << cfg.n << " dim=" << cfg.d;
      AnalysisReport rep = analyze(setup, o, src.str());
      if (!seeds.notice.empty()) rep.warnings.push_back(seeds.notice);
      Json j = to_json(rep, g.timings);
      j["seed_labels"] = seeds.labels;
      emit(g, j);
      return rep.exit_code;
    }
  } catch (const ParseError& e) {
    std::cerr << "error [parser]: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error [" << module << "]: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
