# Copyright 2026 The algpot Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

from fractions import Fraction

import pytest

import algpot

RADIAL_CUBIC = "vars q1 q2\next w1 : w1^2 - q1^2 - q2^2\npotential w1^3\n"
SQRT_BRANCH = "vars q1 q2\next w1 : w1^2 - q1\npotential w1^5 + q2^2\n"


def test_parse():
    s = algpot.parse(RADIAL_CUBIC)
    assert s["n"] == 2 and s["s"] == 1
    assert s["names"] == ["q1", "q2", "w1"]
    with pytest.raises(ValueError):
        algpot.parse("vars q1\npotential q1 +\n")


def test_radial_cubic_report():
    rep = algpot.analyze(RADIAL_CUBIC)
    assert rep["homogeneity"]["degree"] == "3"
    assert rep["certificate"]["outcome"] == "no_obstruction"
    assert rep["exit_code"] == 0
    for point in rep["darboux"]["accepted"]:
        assert abs(point["point"]["w1"][0] - 1 / 3) < 1e-10
        values = sorted(c["rational"] for c in point["spectrum"]["clusters"])
        assert values == ["1", "2"]


def test_analyze_is_deterministic():
    assert algpot.analyze(RADIAL_CUBIC, seed=3) == algpot.analyze(RADIAL_CUBIC, seed=3)


def test_sqrt_branch_warning():
    rep = algpot.analyze(SQRT_BRANCH)
    assert rep["certificate"]["outcome"] == "not_applicable"
    assert any("not weighted homogeneous" in w for w in rep["warnings"])


def test_check_table():
    assert algpot.check_table(3, 2)["matched"]
    assert algpot.check_table(-1, Fraction(-1, 2))["obstruction"]
    assert algpot.check_table(2, "7/13")["matched"]
    numeric = algpot.check_table(3, 2.0000000001)
    assert numeric["matched"] and numeric["reconstructed"]


def test_variational():
    ve = algpot.variational(3, 1, monodromy=True)
    assert ve["fuchs_sum"] == "1"
    assert ve["monodromy"]["passed"]
    assert ve["monodromy"]["product_error"] < 1e-6


def test_simulate():
    run = algpot.simulate(RADIAL_CUBIC, [0.6, 0.3], [-0.2, 0.5], project=True)
    assert run["completed"]
    assert run["energy_drift"] < 1e-9
    assert len(run["trace"]) == 101
    stuck = algpot.simulate(SQRT_BRANCH, [0, 1], [0, 0], [0])
    assert not stuck["completed"]
    assert "critical set" in stuck["diagnostic"]


def test_nbody():
    text = algpot.nbody_problem(3, 2, [1, 1, 1])
    assert text.startswith("# nbody")
    rep = algpot.nbody_analyze(3, 2, n_random=0)
    assert rep["exit_code"] == 10
    assert rep["certificate"]["outcome"] == "obstruction"
    with pytest.raises(ValueError, match="d=1"):
        algpot.nbody_problem(3, 1)


def test_rationalize():
    assert algpot.rationalize(0.3333333333333) == Fraction(1, 3)
    assert algpot.rationalize(2 ** 0.5, max_den=10) is None
