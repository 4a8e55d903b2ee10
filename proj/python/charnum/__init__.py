"""Exact characteristic numbers of elliptic and rational curves in P^r.

Constraints are given as a tangency count plus ``incidences``, where
``incidences[k - 1]`` is the number of general codimension-k linear
subspaces the curve must meet. Every count comes back as a Fraction.
"""

from fractions import Fraction

from . import _charnum
from ._charnum import CharnumError

__all__ = [
    "CharnumError",
    "audit",
    "cuspidal",
    "elliptic",
    "fixed_j",
    "nodal",
    "rational",
    "stack_count",
    "table",
    "verify",
]


def elliptic(r, d, tangents=0, incidences=()):
    return Fraction(_charnum.elliptic(r, d, tangents, list(incidences)))


def rational(r, d, tangents=0, incidences=()):
    return Fraction(_charnum.rational(r, d, tangents, list(incidences)))


def stack_count(kind, r, d, tangents=0, incidences=(), node=0):
    """Count on one of the stacks E, R, N, CU, J.

    ``node`` puts the marked node of N on a general codim-``node`` space.
    """
    return Fraction(_charnum.stack_count(kind, r, d, tangents, list(incidences), node))


def nodal(r, d, incidences=(), node=0):
    return stack_count("N", r, d, 0, incidences, node)


def cuspidal(r, d, incidences=()):
    return stack_count("CU", r, d, 0, incidences)


def fixed_j(r, d, tangents=0, incidences=()):
    return stack_count("J", r, d, tangents, incidences)


def table(r, d, jobs=1, incidence_only=False):
    """Rows ``((t, c2, ..., cr), value)`` for every balanced tuple."""
    return [(tuple(row), Fraction(v)) for row, v in _charnum.table(r, d, jobs, incidence_only)]


def audit(r, d, incidences, pivot):
    out = _charnum.audit(r, d, list(incidences), pivot)
    for key in ("lhs", "balance"):
        out[key] = Fraction(out[key])
    for term in out["terms"]:
        term["value"] = Fraction(term["value"])
    return out


def verify(name, r, d_min, d_max=None):
    """Run ``pivot-invariance`` or ``lemma51``; returns (instance, passed, detail) triples."""
    return _charnum.verify(name, r, d_min, d_min if d_max is None else d_max)
