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

#include "algpot/dynamics.hpp"
#include "support.hpp"

using namespace algpot;

namespace {

CVector vec(std::initializer_list<Complex> xs) {
  CVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const auto& x : xs) v(i++) = x;
  return v;
}

struct Fixture {
  AlgebraicSetup setup;
  JacobianData jd;
  PotentialDerivatives pd;
  explicit Fixture(const char* text) : setup(parse_setup(text)), jd(jacobian(setup)), pd(setup, jd) {}
};

const char* kTwoBody =
    "vars q1_1 q1_2 q2_1 q2_2\n"
    "ext r1_2 : r1_2^2 - (q1_1 - q2_1)^2 - (q1_2 - q2_2)^2\n"
    "potential 1/r1_2\n";

TrajectoryState radial_start(const Fixture& f) {
  const CVector q = vec({0.6, 0.3});
  return make_state(f.pd, 0.0, q, vec({-0.2, 0.5}), vec({std::sqrt(0.45)}));
}

TrajectoryState two_body_start(const Fixture& f) {
  return make_state(f.pd, 0.0, vec({1.0, 0.0, -1.0, 0.0}), vec({0.0, 0.5, 0.0, -0.5}), vec({-2.0}));
}

}  // namespace

TEST_SUITE("dynamics") {
  TEST_CASE("vector field examples") {
    Fixture f(testdata::kRadialCubic);
    const auto st = make_state(f.pd, 0.0, vec({1.0, 0.0}), vec({0.0, 1.0}), vec({1.0}));
    const CVector d = vector_field(f.pd, st);
    CHECK(std::abs(d(0)) < 1e-15);
    CHECK(std::abs(d(1) - 1.0) < 1e-15);
    CHECK(std::abs(d(2) + 3.0) < 1e-15);
    CHECK(std::abs(d(3)) < 1e-15);
    CHECK(std::abs(d(4)) < 1e-15);

    const auto rest = make_state(f.pd, 0.0, vec({0.3, 0.4}), vec({0.0, 0.0}), vec({0.5}));
    const CVector dr = vector_field(f.pd, rest);
    CHECK(dr.head(2).norm() == 0.0);
    CHECK(std::abs(dr(4)) == 0.0);

    Fixture g(testdata::kSqrtBranch);
    const auto crit = make_state(g.pd, 0.0, vec({0.0, 1.0}), vec({0.0, 0.0}), vec({0.0}));
    CHECK_THROWS_WITH_AS(vector_field(g.pd, crit), "state in critical set", std::domain_error);
  }

  TEST_CASE("energy and constraint conservation") {
    for (const char* text : {testdata::kRadialCubic, kTwoBody}) {
      Fixture f(text);
      const auto init = text == kTwoBody ? two_body_start(f) : radial_start(f);
      const auto plain = integrate(f.pd, init, 1.0);
      REQUIRE(plain.completed);
      CHECK(plain.energy_drift <= 1e-9 * (1.0 + std::abs(init.energy)));
      CHECK(plain.constraint_drift <= 1e-7);
      IntegrateOptions proj;
      proj.project = true;
      const auto projected = integrate(f.pd, init, 1.0, proj);
      REQUIRE(projected.completed);
      CHECK(projected.constraint_drift <= 1e-12);
      CHECK(projected.energy_drift <= 1e-9 * (1.0 + std::abs(init.energy)));
    }
  }

  TEST_CASE("time reversal closes") {
    for (const char* text : {testdata::kRadialCubic, kTwoBody}) {
      Fixture f(text);
      const auto init = text == kTwoBody ? two_body_start(f) : radial_start(f);
      const auto fwd = integrate(f.pd, init, 1.0);
      REQUIRE(fwd.completed);
      const auto& end = fwd.samples.back();
      const auto back = integrate(f.pd, make_state(f.pd, 0.0, end.q, -end.p, end.w), 1.0);
      REQUIRE(back.completed);
      const auto& fin = back.samples.back();
      CHECK((fin.q - init.q).cwiseAbs().maxCoeff() <= 1e-7);
      CHECK((fin.p + init.p).cwiseAbs().maxCoeff() <= 1e-7);
      CHECK((fin.w - init.w).cwiseAbs().maxCoeff() <= 1e-7);
    }
  }

  TEST_CASE("zero potential moves in straight lines") {
    Fixture f("vars q1 q2\next w1 : w1^2 - q1^2 - q2^2\npotential 0\n");
    const CVector q0 = vec({0.6, 0.8});
    const CVector p0 = vec({0.3, -0.1});
    const auto traj = integrate(f.pd, make_state(f.pd, 0.0, q0, p0, vec({1.0})), 1.0);
    REQUIRE(traj.completed);
    for (const auto& st : traj.samples) {
      CHECK((st.q - (q0 + st.t * p0)).cwiseAbs().maxCoeff() <= 1e-12);
      CHECK((st.p - p0).cwiseAbs().maxCoeff() <= 1e-15);
    }
  }

  TEST_CASE("orbit inside the critical set terminates at once") {
    Fixture f(testdata::kSqrtBranch);
    const auto init = make_state(f.pd, 0.0, vec({0.0, 1.0}), vec({0.0, 0.0}), vec({0.0}));
    const auto traj = integrate(f.pd, init, 1.0);
    CHECK_FALSE(traj.completed);
    CHECK(traj.diagnostic.find("critical set") != std::string::npos);
    CHECK(traj.samples.size() == 1);
  }

  TEST_CASE("approach to the critical set stops the integration") {
    // w1 = sqrt(q1) with q1 pushed toward 0 by its momentum.
    Fixture f("vars q1 q2\next w1 : w1^2 - q1\npotential q2^2\n");
    const auto init = make_state(f.pd, 0.0, vec({0.25, 0.0}), vec({-1.0, 0.0}), vec({0.5}));
    const auto traj = integrate(f.pd, init, 1.0);
    CHECK_FALSE(traj.completed);
    CHECK_FALSE(traj.diagnostic.empty());
    CHECK(traj.samples.back().t <= 0.25);
    IntegrateOptions coarse;
    coarse.critical_tol = 1e-3;
    const auto early = integrate(f.pd, init, 1.0, coarse);
    CHECK_FALSE(early.completed);
    CHECK(early.diagnostic.find("critical set") != std::string::npos);
    CHECK(early.samples.back().t <= 0.25);
  }

  TEST_CASE("homothetic orbit through the radial cubic Darboux point") {
    Fixture f(testdata::kRadialCubic);
    const auto h = detect_homogeneity(f.setup, f.jd);
    REQUIRE(h.homogeneity);
    const CVector c = vec({1.0 / 3.0, 0.0, 1.0 / 3.0});
    const auto orbit = homothetic_orbit(f.pd, *h.homogeneity, c);
    CHECK_FALSE(orbit.truncated);
    CHECK(orbit.samples.size() == 51);
    CHECK(orbit.max_residual <= 1e-8);
    CHECK(orbit.energy_drift <= 1e-9);
    CHECK(std::abs(orbit.energy - 1.0 / 9.0) < 1e-15);
    // w(t) = w(c) phi(t) against a direct solve of the constraint.
    for (std::size_t i = 0; i < orbit.samples.size(); ++i) {
      const auto& st = orbit.samples[i];
      CHECK(std::abs(st.w(0) - c(2) * orbit.phi[i]) <= 1e-15);
      const auto solved = solve_extension(f.setup, f.jd, st.q, st.w * 1.01);
      REQUIRE(solved);
      CHECK(std::abs((*solved)(2) - st.w(0)) <= 1e-9);
    }
    const auto first = orbit.samples.front();
    CHECK(std::abs(std::pow(orbit.phi.front(), 3) - 0.5) < 1e-15);
    CHECK(first.constraint_residual <= 1e-15);
  }

  TEST_CASE("homothetic orbit for a weight-2 setup") {
    // q weight 2, w weight 3: V = w1 q1 has degree (3 + 2) / 2, so use V = w1^2 with d2 = 6, k = 3.
    Fixture f("vars q1 q2\next w1 : w1^2 - q1^3 - q1*q2^2\npotential w1^2 + q2^3\n");
    const auto h = detect_homogeneity(f.setup, f.jd);
    REQUIRE(h.homogeneity);
    CHECK(h.homogeneity->d1 == 2);
    CHECK(h.homogeneity->integer_degree() == 3);
    // Darboux point: grad = (3 q1^2 + q2^2, 2 q1 q2 + 3 q2^2) = q on q2 = 0: q1 = 1/3.
    const CVector c = vec({1.0 / 3.0, 0.0, std::sqrt(1.0 / 27.0)});
    const auto orbit = homothetic_orbit(f.pd, *h.homogeneity, c);
    CHECK_FALSE(orbit.truncated);
    CHECK(orbit.max_residual <= 1e-8);
    CHECK(orbit.energy_drift <= 1e-9);
  }
}
