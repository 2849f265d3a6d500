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

#include <json.hpp>

#include "algpot/calculus.hpp"
#include "algpot/darboux.hpp"
#include "algpot/dynamics.hpp"
#include "algpot/mrtable.hpp"
#include "algpot/spectrum.hpp"
#include "algpot/variety.hpp"
#include "algpot/varode.hpp"

namespace algpot {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr std::uint64_t kDefaultSeed = 20240601;

using Json = nlohmann::ordered_json;

struct AnalyzeOptions {
  std::uint64_t seed = kDefaultSeed;
  int n_random = 16;
  int validate_trials = 8;
  double tol = 1e-9;  // Darboux acceptance residual
  double spectrum_tol = kSpectrumTol;
  std::int64_t max_den = kMaxDenominator;
  std::vector<CVector> seeds;
  std::optional<BodyGauge> gauge;
  bool include_gauge_eigenvalues = false;
  bool allow_numeric_certificate = false;
  bool stop_after_darboux = false;
  bool include_hessian = true;
  TableOptions table;
  PotentialDerivatives::Mode mode = PotentialDerivatives::Mode::kAuto;
};

struct AnalysisReport {
  AlgebraicSetup setup;
  std::string source;  // file name or generator description
  AnalyzeOptions options;
  ValidationReport validation;
  HomogeneityResult homogeneity;
  DarbouxResult darboux;
  std::optional<Certificate> certificate;
  std::vector<std::string> warnings;
  int exit_code = 0;  // 0 ran, 10 obstruction certificate
  std::vector<std::pair<std::string, double>> timings;
};

/// parse -> validate -> homogeneity -> Darboux points -> spectra -> table -> certificate.
AnalysisReport analyze(const AlgebraicSetup& setup, const AnalyzeOptions& options, std::string source = {});

/// Marks eigenvalue clusters carried by translation or rotation directions.
void flag_gauge(Spectrum& spectrum, const CMatrix& hessian, const BodyGauge& gauge, const CVector& q, double tol);

Json complex_json(Complex z);
Json rational_json(const std::optional<Rational>& r);
Json verdict_json(const TableVerdict& v);
Json spectrum_json(const Spectrum& s);
Json to_json(const AnalysisReport& report, bool timings = false);

Json ve_json(const HypergeomVE& ve, const std::optional<MonodromyReport>& mono, double tol);
Json state_json(const AlgebraicSetup& setup, const TrajectoryState& st);
/// Run summary: tolerances, completion, drifts, first and last state.
Json trajectory_json(const AlgebraicSetup& setup, const Trajectory& traj, const IntegrateOptions& opts);

}  // namespace algpot
