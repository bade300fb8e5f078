"""Lattice width and the complete set of lattice width directions.

Pipeline for a rational polytope or polyhedron ``S``:

1. ``direction_space``: the functionals bounded on ``S`` and their lattice
   ``L(S)``, with a projection ``pi`` whose image lattice is ``Z^e``.
2. ``project_to_quotient``: ``pi(S)``, a polytope in ``R^e``.
3. If ``pi(S)`` is full-dimensional the minimum width is attained inside a
   finite box whose radius comes from an inscribed vertex simplex; the box is
   scanned shell by shell and the radius shrinks as the minimum improves.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Iterator, Sequence, Union

import numpy as np

from . import linalg as la
from . import lp
from .errors import DimensionError, EmptyPolyhedronError, HypothesisError, WidthInfiniteError
from .lattice import enumerate_lattice_points, is_symmetric_about_origin
from .linalg import IntMat, IntVec, RatVec
from .polytope import (
    HPolyhedron,
    SimplexWitness,
    VPolytope,
    affine_hull,
    h_vertices,
    hull_canonicalize,
    inscribed_simplex,
    recession_cone,
    support,
    to_vpolytope,
)
from .report import VerifierReport

log = logging.getLogger(__name__)

Body = Union[VPolytope, HPolyhedron]

FULL_DIM_POSITIVE = "FULL_DIM_POSITIVE"
LOWER_DIM_ZERO_RATIONAL = "LOWER_DIM_ZERO_RATIONAL"
WIDTH_INFINITE = "WIDTH_INFINITE"
ZERO = "ZERO"
INFINITE = "INFINITE"

_INT64_SAFE = 2**62


@dataclass(frozen=True)
class DirectionSpace:
    """Bounded functionals ``D(S)``, their lattice ``L(S)`` and the quotient map.

    ``projection_map`` has the rows of ``L_basis``: ``x -> (b . x)_b`` maps
    ``Z^d`` onto ``Z^e`` because ``L(S)`` is saturated, and it kills
    ``V = span Rec(S)``.
    """

    D_basis: tuple[RatVec, ...]
    L_basis: IntMat
    rank_e: int
    projection_map: IntMat

    def lift_direction(self, w: Sequence[int]) -> IntVec:
        """The functional on ``R^d`` that ``w in (Z^e)*`` stands for."""
        d = len(self.projection_map[0]) if self.projection_map else 0
        out = [0] * d
        for wj, b in zip(w, self.projection_map):
            if wj:
                out = [o + wj * x for o, x in zip(out, b)]
        return tuple(out)


@dataclass(frozen=True)
class WidthCertificate:
    width_value: Union[Fraction, str]
    directions: tuple[IntVec, ...]
    enumeration_radius: int
    simplex_witness: SimplexWitness | None
    classification: str
    direction_lattice: IntMat = ()
    scanned_radius: int = 0
    initial_bound: Fraction | None = None
    ambient_dim: int = 0

    @property
    def width(self) -> Fraction | None:
        """Numeric width; 0 in the ZERO case, None when infinite."""
        if self.width_value == ZERO:
            return Fraction(0)
        if self.width_value == INFINITE:
            return None
        return self.width_value


@dataclass(frozen=True)
class DualBodyReport:
    hull: VPolytope
    symmetric: bool
    interior_points: tuple[IntVec, ...]
    boundary_points: tuple[IntVec, ...]
    boundary_equals_Sprime: bool
    interior_is_origin: bool

    @property
    def passed(self) -> bool:
        return self.symmetric and self.interior_is_origin and self.boundary_equals_Sprime


def direction_space(S: Body) -> DirectionSpace:
    d = S.dim_ambient
    if isinstance(S, VPolytope):
        eye = la.identity(d)
        return DirectionSpace(tuple(la.to_ratvec(r) for r in eye), eye, d, eye)
    rc = recession_cone(S)  # raises on empty input
    span = rc.span_basis
    if not span:
        D_basis = tuple(la.to_ratvec(r) for r in la.identity(d))
        L = la.identity(d)
    else:
        D_basis = la.nullspace(span)
        L = la.integer_kernel(span)
    return DirectionSpace(tuple(D_basis), L, len(L), L)


def project_to_quotient(S: Body, ds: DirectionSpace) -> VPolytope:
    """``pi(S)`` in the coordinates of ``Lambda = Z^e``."""
    if ds.rank_e == 0:
        raise WidthInfiniteError("width infinite: no bounded lattice functional")
    pts = S.vertices if isinstance(S, VPolytope) else h_vertices(S)
    B = ds.projection_map
    return hull_canonicalize([la.matvec(B, p) for p in pts])


def width_in_direction(S: Body, v: Sequence[int]) -> Fraction | None:
    """``sup v(S) - inf v(S)``; None when ``v`` is unbounded on ``S``."""
    v = tuple(int(a) for a in v)
    if isinstance(S, VPolytope):
        return support(S, v) + support(S, tuple(-a for a in v))
    A = [[-a for a in n] for n, _ in S.constraints]
    b = [-c for _, c in S.constraints]
    hi = lp.maximize(v, A, b)
    lo = lp.maximize([-a for a in v], A, b)
    if hi.status == lp.INFEASIBLE:
        raise EmptyPolyhedronError("empty polyhedron")
    if hi.status == lp.UNBOUNDED or lo.status == lp.UNBOUNDED:
        return None
    return hi.value + lo.value


def _canonical_slabs(e: int, R: int) -> Iterator[np.ndarray]:
    """Integer vectors in ``[-R, R]^e`` whose first nonzero entry is positive, in chunks."""
    if e == 0:
        return
    rng = np.arange(-R, R + 1, dtype=np.int64)
    for a in range(1, R + 1):
        if e == 1:
            yield np.array([[a]], dtype=np.int64)
            continue
        rest = np.stack(np.meshgrid(*([rng] * (e - 1)), indexing="ij"), axis=-1).reshape(-1, e - 1)
        yield np.hstack([np.full((len(rest), 1), a, dtype=np.int64), rest])
    for sub in _canonical_slabs(e - 1, R):
        yield np.hstack([np.zeros((len(sub), 1), dtype=np.int64), sub])


def _min_width_scan(ipts: list[IntVec], e: int, r_lo: int, r_hi: int):
    """Scan primitive canonical ``v`` with ``r_lo < ||v||_inf <= r_hi``.

    Widths are compared as integers on the scaled vertex set. Returns the
    minimum numerator found in the range and its argmin list.
    """
    big = max(abs(x) for p in ipts for x in p) * r_hi * e >= _INT64_SAFE
    V = np.array(ipts, dtype=object if big else np.int64)
    found_best, found = None, []
    for block in _canonical_slabs(e, r_hi):
        norm = np.abs(block).max(axis=1)
        block = block[norm > r_lo]
        if not len(block):
            continue
        g = np.gcd.reduce(block, axis=1)
        block = block[g == 1]
        if not len(block):
            continue
        B = block.astype(object) if big else block
        vals = V @ B.T
        w = vals.max(axis=0) - vals.min(axis=0)
        m = w.min()
        if found_best is None or m < found_best:
            found_best, found = m, []
        if m == found_best:
            found.extend(tuple(int(x) for x in row) for row in block[w == m])
    return found_best, found


def lattice_width(S: Body) -> WidthCertificate:
    d = S.dim_ambient
    if isinstance(S, HPolyhedron) and S.is_empty():
        raise EmptyPolyhedronError("empty polyhedron")
    ds = direction_space(S)
    if ds.rank_e == 0:
        return WidthCertificate(INFINITE, (), 0, None, WIDTH_INFINITE, ambient_dim=d)
    Q = project_to_quotient(S, ds)
    e = ds.rank_e
    aff = affine_hull(Q)
    if aff.dim < e:
        ker = la.integer_kernel(aff.direction_basis, e) if aff.direction_basis else la.identity(e)
        lifted = [ds.lift_direction(w) for w in ker]
        basis = la.hnf_basis(lifted, d)
        return WidthCertificate(ZERO, (), 0, None, LOWER_DIM_ZERO_RATIONAL,
                                direction_lattice=basis, ambient_dim=d)

    witness = inscribed_simplex(Q)
    ipts, D = Q._scaled
    # initial upper bound from the coordinate directions of Lambda
    coord = [max(p[j] for p in ipts) - min(p[j] for p in ipts) for j in range(e)]
    w_ub = Fraction(min(coord), D)
    target = ceil(w_ub * witness.bound_norm)
    best, argmin = None, []
    scanned = 0
    while scanned < target:
        r_new = min(target, max(1, 2 * scanned))
        m, found = _min_width_scan(ipts, e, scanned, r_new)
        if m is not None and (best is None or m < best):
            best, argmin = m, found
        elif m is not None and m == best:
            argmin.extend(found)
        scanned = r_new
        target = min(target, ceil(Fraction(best, D) * witness.bound_norm))
    width = Fraction(int(best), D)
    certified = ceil(width * witness.bound_norm)
    log.debug("width %s, certified radius %d, scanned %d", width, certified, scanned)

    dirs = set()
    for w in argmin:
        v = ds.lift_direction(w)
        dirs.add(v)
        dirs.add(tuple(-a for a in v))
    directions = tuple(sorted(dirs))
    for w in argmin:
        if width_in_direction(Q, w) != width:
            raise AssertionError(f"direction {w} does not attain the width")
    return WidthCertificate(width, directions, certified, witness, FULL_DIM_POSITIVE,
                            scanned_radius=scanned, initial_bound=w_ub, ambient_dim=d)


def dual_body(cert: WidthCertificate) -> DualBodyReport:
    """``conv S'`` and the three properties checked against it."""
    if cert.classification != FULL_DIM_POSITIVE:
        raise HypothesisError("theorem hypothesis 0 < width < infinity", cert.classification)
    hull = hull_canonicalize(cert.directions)
    pts = enumerate_lattice_points(hull)
    origin = (0,) * len(cert.directions[0])
    return DualBodyReport(
        hull=hull,
        symmetric=is_symmetric_about_origin(hull),
        interior_points=pts.interior,
        boundary_points=pts.boundary,
        boundary_equals_Sprime=pts.boundary == tuple(sorted(cert.directions)),
        interior_is_origin=pts.interior == (origin,),
    )


def check_direction_bound(S: Body) -> VerifierReport:
    """``|S'| <= 3^d - 1`` and equality exactly for regular lattice cross-polytopes."""
    from .minkowski import recognize_cross_polytope

    d = S.dim_ambient
    if isinstance(S, VPolytope):
        full = S.is_full_dimensional
    else:
        full = S.dim == d
    if not full:
        raise HypothesisError("full dimension", "dim(S) < d")
    cert = lattice_width(S)
    if cert.classification != FULL_DIM_POSITIVE:
        raise DimensionError(f"width is not finite and positive: {cert.classification}")
    bound = 3**d - 1
    rep = VerifierReport("check-main")
    n = len(cert.directions)
    rep.check("count <= 3^d - 1", n <= bound)
    body = S
    if isinstance(S, HPolyhedron):
        try:
            body = to_vpolytope(S)
        except DimensionError:
            body = None
    recog = recognize_cross_polytope(body) if body is not None else None
    accepted = bool(recog)
    rep.check("equality iff cross-polytope", (n == bound) == accepted)
    rep.witnesses.update(
        count=n,
        bound=bound,
        width=cert.width_value,
        directions=cert.directions,
        enumeration_radius=cert.enumeration_radius,
        equality=n == bound,
        cross_witness=recog if accepted else None,
        cross_rejection=None if accepted or recog is None else recog.reason,
    )
    rep.witnesses["certificate"] = cert
    return rep


__all__ = [
    "DirectionSpace",
    "WidthCertificate",
    "DualBodyReport",
    "direction_space",
    "project_to_quotient",
    "width_in_direction",
    "lattice_width",
    "dual_body",
    "check_direction_bound",
]
