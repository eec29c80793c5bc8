"""Exact cone-admissibility analysis of polyline curves.

Coordinates and parameters may be int, str ("p/q" or decimal) or
fractions.Fraction. Floats are rejected: convert them explicitly. Results are
the JSON documents the command-line tool writes, as dicts.
"""

import json
from fractions import Fraction

from . import _conecurve
from ._conecurve import ConecurveError, schema_version, version

__all__ = [
    "ConecurveError",
    "analyze",
    "box_dimension",
    "central_slope",
    "counterexample",
    "cover",
    "decompose",
    "find_cone",
    "lipschitz",
    "sample",
    "schema_version",
    "sequence_b",
    "verify",
    "version",
]


def _q(v):
    if isinstance(v, bool) or isinstance(v, float):
        raise TypeError(f"exact value expected, got {type(v).__name__}: use Fraction or str")
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, str):
        return v
    raise TypeError(f"cannot use {type(v).__name__} as an exact value")


def _pts(points):
    return [(_q(x), _q(y)) for x, y in points]


def _frac_pts(points):
    return [(Fraction(x), Fraction(y)) for x, y in points]


def verify(points, tan_phi, k, tan_rho=0, policy="chord", workers=1):
    return json.loads(_conecurve.verify(_pts(points), _q(tan_phi), k, _q(tan_rho), policy, workers))


def analyze(points, tan_phi, tan_rho=0, margin=Fraction(1, 20), policy="chord", workers=1):
    return json.loads(_conecurve.analyze(_pts(points), _q(tan_phi), _q(tan_rho), _q(margin), policy, workers))


def decompose(points, lam):
    return json.loads(_conecurve.decompose(_pts(points), _q(lam)))


def lipschitz(points):
    return json.loads(_conecurve.lipschitz(_pts(points)))


def counterexample(lam=1, depth=6, grid=32):
    """Breakpoints of the sampled counterexample as Fraction pairs."""
    return _frac_pts(_conecurve.counterexample(_q(lam), depth, grid))


def sample(spec):
    """Sample a function spec ({kind, params, domain, grid}) to Fraction pairs."""
    return _frac_pts(_conecurve.sample(json.dumps(spec)))


def sequence_b(k, lam=1):
    return Fraction(_conecurve.sequence_b(k, _q(lam)))


def central_slope(k, lam=1):
    return Fraction(_conecurve.central_slope(k, _q(lam)))


def cover(points, k, tan_theta, tan_rho, h, N=None):
    return json.loads(_conecurve.cover(_pts(points), k, _q(tan_theta), _q(tan_rho), _q(h), N))


def find_cone(points, point, tan_phi0, k, tan_rho=0, max_depth=8, policy="chord", workers=1):
    p = (_q(point[0]), _q(point[1]))
    return json.loads(
        _conecurve.find_cone(_pts(points), p, _q(tan_phi0), k, _q(tan_rho), max_depth, policy, workers)
    )


def box_dimension(points, exponents):
    return json.loads(_conecurve.box_dimension(_pts(points), list(exponents)))
