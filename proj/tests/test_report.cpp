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

#include <doctest.h>

#include "algpot/analysis.hpp"
#include "algpot/nbody.hpp"
#include "support.hpp"

using namespace algpot;

TEST_SUITE("report") {
  TEST_CASE("radial cubic: no obstruction, exit 0") {
    const auto rep = analyze(parse_setup(testdata::kRadialCubic), {});
    CHECK(rep.exit_code == 0);
    REQUIRE(rep.certificate);
    CHECK(rep.certificate->outcome == Outcome::kNoObstruction);
    CHECK(rep.warnings.empty());
    const Json j = to_json(rep);
    CHECK(j["homogeneity"]["degree"] == "3");
    CHECK(j["exit_code"] == 0);
    CHECK_FALSE(j.contains("timings"));
  }

  TEST_CASE("identical options give identical JSON") {
    AnalyzeOptions o;
    o.seed = 5;
    for (const char* text : {testdata::kRadialCubic, testdata::kTwoExt, testdata::kSqrtBranch}) {
      const auto s = parse_setup(text);
      CHECK(to_json(analyze(s, o)).dump(2) == to_json(analyze(s, o)).dump(2));
    }
  }

  TEST_CASE("sqrt branch: not applicable with a warning") {
    const auto rep = analyze(parse_setup(testdata::kSqrtBranch), {});
    CHECK(rep.exit_code == 0);
    REQUIRE(rep.certificate);
    CHECK(rep.certificate->outcome == Outcome::kNotApplicable);
    bool warned = false;
    for (const auto& w : rep.warnings) warned = warned || w.find("not weighted homogeneous") != std::string::npos;
    CHECK(warned);
  }

  TEST_CASE("three-body obstruction: exit 10") {
    NBodyConfig cfg;
    cfg.masses = {1, 1, 1};
    AnalyzeOptions o;
    o.seeds = central_config_seeds(cfg).seeds;
    o.gauge = cfg.gauge();
    o.n_random = 0;
    const auto rep = analyze(build(cfg), o);
    CHECK(rep.exit_code == 10);
    REQUIRE(rep.certificate);
    CHECK(rep.certificate->outcome == Outcome::kObstruction);
    REQUIRE(!rep.certificate->witnesses.empty());
    CHECK(rep.certificate->witnesses[0].verdict.obstruction);
  }

  TEST_CASE("stop after Darboux") {
    AnalyzeOptions o;
    o.stop_after_darboux = true;
    const auto rep = analyze(parse_setup(testdata::kRadialCubic), o);
    CHECK_FALSE(rep.certificate);
    CHECK(rep.exit_code == 0);
  }
}
