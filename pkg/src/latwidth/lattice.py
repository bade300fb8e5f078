"""Lattice points of rational polytopes."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import ceil, floor

from .linalg import IntVec, RatVec
from .polytope import VPolytope, relative_chart


@dataclass(frozen=True)
class LatticePointSet:
    ambient_dim: int
    interior: tuple[IntVec, ...]
    boundary: tuple[IntVec, ...]

    @property
    def points(self) -> tuple[IntVec, ...]:
        return tuple(sorted(self.interior + self.boundary))

    def __len__(self) -> int:
        return len(self.interior) + len(self.boundary)


def _box(points) -> list[range]:
    lo = [min(p[j] for p in points) for j in range(len(points[0]))]
    hi = [max(p[j] for p in points) for j in range(len(points[0]))]
    return [range(ceil(a), floor(b) + 1) for a, b in zip(lo, hi)]


def _scan_full(P: VPolytope):
    """Yield ``(point, strictly_inside)`` for the integer points of a full-dimensional P."""
    D = P._scaled[1]
    facets = [(f.outer_normal, int(f.height * D)) for f in P.facets]
    for x in product(*_box(P.vertices)):
        inside = True
        strict = True
        for n, h in facets:
            val = D * sum(a * b for a, b in zip(n, x))
            if val > h:
                inside = False
                break
            if val == h:
                strict = False
        if inside:
            yield x, strict


def enumerate_lattice_points(P: VPolytope) -> LatticePointSet:
    """All points of ``Z^d`` in ``P``, split into relative interior and relative boundary."""
    interior, boundary = [], []
    if P.is_full_dimensional:
        for x, strict in _scan_full(P):
            (interior if strict else boundary).append(tuple(x))
    else:
        ch, Q = relative_chart(P)
        if ch.dim == 0:
            v = P.vertices[0]
            if all(a.denominator == 1 for a in v):
                interior.append(tuple(int(a) for a in v))
        else:
            # scan pivot coordinates only; off-hull points are never produced
            for y, strict in _scan_full(Q):
                x = ch.lift(y)
                if all(a.denominator == 1 for a in x):
                    (interior if strict else boundary).append(tuple(int(a) for a in x))
    return LatticePointSet(P.dim_ambient, tuple(sorted(interior)), tuple(sorted(boundary)))


def lattice_points(P: VPolytope) -> tuple[IntVec, ...]:
    return enumerate_lattice_points(P).points


def is_centrally_symmetric(P: VPolytope) -> tuple[bool, RatVec | None]:
    """Whether ``2c - V == V`` for the forced candidate centre ``c``."""
    lo, hi = P.vertices[0], P.vertices[-1]
    c = tuple((a + b) / 2 for a, b in zip(lo, hi))
    verts = set(P.vertices)
    if all(tuple(2 * ci - vi for ci, vi in zip(c, v)) in verts for v in P.vertices):
        return True, c
    return False, None


def is_symmetric_about_origin(P: VPolytope) -> bool:
    ok, c = is_centrally_symmetric(P)
    return ok and not any(c)


def interior_is_origin(pts: LatticePointSet) -> bool:
    return pts.interior == ((0,) * pts.ambient_dim,)


def as_fraction_point(x: IntVec) -> RatVec:
    return tuple(Fraction(a) for a in x)
