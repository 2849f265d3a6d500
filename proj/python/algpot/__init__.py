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

"""Algebraic potentials: Darboux points, Hessian spectra and the (k, lambda) table.

Every function returns plain Python data. Reports use the same JSON layout
as the ``algpot`` command-line tool; complex numbers are ``[re, im]`` pairs.
"""

import json
from fractions import Fraction

from . import _core
from ._core import DEFAULT_SEED, ParseError, __version__

__all__ = [
    "DEFAULT_SEED",
    "ParseError",
    "__version__",
    "analyze",
    "check_table",
    "nbody_analyze",
    "nbody_problem",
    "parse",
    "rationalize",
    "simulate",
    "variational",
]


def _lam(value):
    if isinstance(value, (Fraction, int)):
        return str(Fraction(value))
    if isinstance(value, complex):
        return f"({value.real!r},{value.imag!r})"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def parse(text):
    """Parse a problem file's text into names, generators and potential."""
    return json.loads(_core.parse(text))


def analyze(text, *, seed=DEFAULT_SEED, n_random=16, tol=1e-9, seeds=(), stop_after_darboux=False,
            include_hessian=True, allow_numeric_certificate=False, source=""):
    """Run the full pipeline on problem text; returns the report dict."""
    seeds = [[complex(x) for x in s] for s in seeds]
    return json.loads(_core.analyze(text, seed, n_random, tol, seeds, stop_after_darboux, include_hessian,
                                    allow_numeric_certificate, source))


def check_table(k, lam, *, numeric=False, tol=1e-8, k4_coefficient="1/4"):
    """Membership of (k, lam). Exact for int/Fraction/'p/q', numeric for floats and complex."""
    return json.loads(_core.check_table(int(k), _lam(lam), numeric, tol, _lam(k4_coefficient)))


def variational(k, lam, *, monodromy=False, tol=1e-6):
    """Coefficients and exponents of the hypergeometric variational equation."""
    return json.loads(_core.variational(int(k), _lam(lam), monodromy, tol))


def simulate(text, q, p, w=None, *, t_end=1.0, project=False, samples=101):
    """Integrate the constrained equations of motion; 'trace' holds the sampled states."""
    w = None if w is None else [complex(x) for x in w]
    return json.loads(_core.simulate(text, [complex(x) for x in q], [complex(x) for x in p], w, t_end, project,
                                     samples))


def nbody_problem(n, dim=2, masses=None):
    """Problem-file text for the n-body potential."""
    return _core.nbody_problem(n, dim, _masses(masses))


def nbody_analyze(n, dim=2, masses=None, *, seed=DEFAULT_SEED, n_random=16):
    """Full pipeline on the n-body potential with central-configuration seeds."""
    return json.loads(_core.nbody_analyze(n, dim, _masses(masses), seed, n_random))


def rationalize(x, tol=1e-8, max_den=1_000_000):
    """Continued-fraction reconstruction; a Fraction or None."""
    r = _core.rationalize(complex(x), tol, max_den)
    return None if r is None else Fraction(int(r[0]), int(r[1]))


def _masses(masses):
    if masses is None:
        return ""
    if isinstance(masses, str):
        return masses
    return ",".join(_lam(m) for m in masses)
