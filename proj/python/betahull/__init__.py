"""Convex-hull and Grassmannian invariants of monopole-class configurations.

Rational inputs may be ints, Fractions or "p/q" strings; exact outputs come
back as Fractions.
"""

import json
from fractions import Fraction

from . import _core
from ._core import InputError, ResourceError

__all__ = [
    "InputError",
    "ResourceError",
    "alpha_squared",
    "beta_squared",
    "canonical",
    "curvature_bounds",
    "monte_carlo_oracle",
    "pairing",
    "project_onto",
    "run",
    "signature",
]


def _q(x):
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError("exact inputs only: use int, Fraction or a 'p/q' string, got %r" % (x,))
    if isinstance(x, (int, Fraction)):
        f = Fraction(x)
        return "%d/%d" % (f.numerator, f.denominator)
    if isinstance(x, str):
        return x
    raise TypeError("cannot use %r as a rational" % (x,))


def _vec(v):
    return [_q(x) for x in v]


def _rows(m):
    return [_vec(r) for r in m]


def pairing(gram, a, b):
    return Fraction(_core.pairing(_rows(gram), _vec(a), _vec(b)))


def signature(gram):
    """(positive, negative, null) counts."""
    return _core.signature(_rows(gram))


def project_onto(gram, a, basis):
    """Q-orthogonal projection of a onto the span of the basis vectors."""
    return [Fraction(x) for x in _core.project_onto(_rows(gram), _vec(a), _rows(basis))]


def beta_squared(gram, classes, zonotope=False, cap=0, exact_only=False, seed=0):
    r = _core.beta_squared(_rows(gram), _rows(classes), zonotope, cap, exact_only, seed)
    r["value"] = Fraction(r["value"])
    r["point"] = [Fraction(x) for x in r["point"]]
    r["barycentric"] = [(label, Fraction(w)) for label, w in r["barycentric"]]
    return r


def alpha_squared(gram, classes, zonotope=False, starts=20, seed=0, threads=0):
    return _core.alpha_squared(_rows(gram), _rows(classes), zonotope, starts, seed, threads)


def monte_carlo_oracle(gram, classes, zonotope=False, samples=100000, seed=0):
    return _core.monte_carlo_oracle(_rows(gram), _rows(classes), zonotope, samples, seed)


def curvature_bounds(beta_sq):
    r = _core.curvature_bounds(_q(beta_sq))
    r["scalar_coefficient"] = Fraction(r["scalar_coefficient"])
    r["weyl_coefficient"] = Fraction(r["weyl_coefficient"])
    return r


def canonical(doc):
    """Canonical JSON text of an input document (dict or str)."""
    return _core.canonical(doc if isinstance(doc, str) else json.dumps(doc))


def run(command, doc, **flags):
    """Run a CLI command on an input document; returns the machine report as a dict.

    Flags mirror the command line: mode, samples, seed, starts, cap, tol,
    exact_only, allow_asymmetric. Warnings are under the "warnings" key.
    """
    text = doc if isinstance(doc, str) else json.dumps(doc)
    machine, _text, _warnings = _core.run(command, text, **flags)
    return json.loads(machine)
