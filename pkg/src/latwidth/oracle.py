"""Brute-force reference for lattice width directions.

Deliberately naive: every nonzero vector of the radius box is evaluated and
nothing is borrowed from the width engine except the support function.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import gcd

from .linalg import IntVec
from .polytope import VPolytope, support


def oracle_directions(S: VPolytope, radius: int) -> tuple[Fraction, frozenset[IntVec]]:
    """Minimum width over ``0 < ||v||_inf <= radius`` and its primitive minimisers."""
    if radius < 1:
        raise ValueError("radius must be at least 1")
    if not S.is_full_dimensional:
        raise ValueError("oracle needs a full-dimensional polytope")
    best = None
    argmin: set[IntVec] = set()
    for v in product(range(-radius, radius + 1), repeat=S.dim_ambient):
        if not any(v):
            continue
        w = support(S, v) + support(S, tuple(-a for a in v))
        if best is None or w < best:
            best, argmin = w, set()
        if w == best:
            g = 0
            for a in v:
                g = gcd(g, a)
            if g == 1:
                argmin.add(v)
    return best, frozenset(argmin)
