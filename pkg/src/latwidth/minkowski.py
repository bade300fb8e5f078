"""Instance-level verifiers for the lattice point theorems of centrally
symmetric bodies with the origin as the only interior lattice point.

Every verifier re-checks its hypotheses and raises ``HypothesisError`` when
one fails; conclusions are recorded in a :class:`VerifierReport`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from . import linalg as la
from . import lp
from .errors import HypothesisError, TheoremViolation
from .lattice import LatticePointSet, enumerate_lattice_points, is_centrally_symmetric
from .linalg import IntMat, IntVec, RatVec
from .polytope import Facet, VPolytope, face_lattice, hull_canonicalize, volume
from .report import VerifierReport


@dataclass(frozen=True)
class Rejection:
    reason: str

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class CubeWitness:
    """``P == conv{+-e_1 +- ... +- e_d}`` for the rows of ``basis``."""

    basis: IntMat


@dataclass(frozen=True)
class CrossWitness:
    """``P == conv{center +- scale * e_i}`` for the rows of ``basis``."""

    center: RatVec
    scale: Fraction
    basis: IntMat


@dataclass
class LayeringReport:
    facet: Facet
    u_F: RatVec
    interior_point_x: IntVec
    layers: tuple[tuple[IntVec, ...], tuple[IntVec, ...], tuple[IntVec, ...]]
    checks: dict[str, bool] = field(default_factory=dict)
    face_witnesses: dict[int, dict] = field(default_factory=dict)

    @property
    def bijection_ok(self) -> bool:
        return self.checks.get("translation bijections", False)

    @property
    def prism_ok(self) -> bool:
        return self.checks.get("prism P = conv(F, F - 2x)", False)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def _normalize_basis(vectors) -> IntMat:
    out = []
    for v in vectors:
        v = tuple(int(a) for a in v)
        lead = next(a for a in v if a)
        out.append(v if lead > 0 else tuple(-a for a in v))
    return tuple(sorted(out))


def standing_hypotheses(P: VPolytope) -> LatticePointSet:
    """Check full dimension, symmetry about 0, and ``P°_Z == {0}``; return ``P_Z``."""
    d = P.dim_ambient
    if not P.is_full_dimensional:
        raise HypothesisError("full dimension", f"dim {P.dim} < {d}")
    ok, c = is_centrally_symmetric(P)
    if not ok:
        raise HypothesisError("central symmetry")
    if any(c):
        raise HypothesisError("central symmetry", "centre is not the origin")
    pts = enumerate_lattice_points(P)
    if pts.interior != ((0,) * d,):
        raise HypothesisError("interior lattice points = {0}", f"found {len(pts.interior)}")
    return pts


def _mod3(x: Sequence[int]) -> IntVec:
    return tuple(a % 3 for a in x)


def verify_3d_bound(P: VPolytope) -> VerifierReport:
    """``|P_Z| <= 3^d`` together with injectivity of reduction mod 3."""
    pts = standing_hypotheses(P)
    d = P.dim_ambient
    points = pts.points
    residues = {}
    clash = None
    for x in points:
        r = _mod3(x)
        if r in residues and clash is None:
            clash = (residues[r], x)
        residues.setdefault(r, x)
    rep = VerifierReport("verify-3d")
    rep.check("count <= 3^d", len(points) <= 3**d)
    rep.check("mod-3 reduction injective", clash is None)
    rep.witnesses.update(count=len(points), bound=3**d, gamma_bijective=clash is None and len(points) == 3**d)
    if clash:
        rep.witnesses["collision"] = clash
    return rep


def verify_vertex_bound(P: VPolytope) -> VerifierReport:
    """``|P_Z| <= 2^(d+1) - 1`` when the boundary lattice points are in convex position."""
    pts = standing_hypotheses(P)
    d = P.dim_ambient
    boundary = list(pts.boundary)
    witnesses = []
    for i, b in enumerate(boundary):
        others = boundary[:i] + boundary[i + 1:]
        lam = lp.convex_combination(b, others)
        if lam is not None:
            support_pts = tuple(o for o, w in zip(others, lam) if w > 0)
            witnesses.append({"point": b, "combination_of": support_pts})
    rep = VerifierReport("verify-vertex-bound")
    applicable = not witnesses
    rep.witnesses.update(count=len(pts), bound=2 ** (d + 1) - 1, applicable=applicable)
    if not applicable:
        rep.witnesses["condition"] = "condition not applicable"
        rep.witnesses["witness"] = witnesses[0]
        rep.witnesses["all_witnesses"] = witnesses
        return rep
    # mod-2 fibres on the boundary: none over 0, at most an antipodal pair elsewhere
    fibres: dict[IntVec, list[IntVec]] = {}
    for b in boundary:
        fibres.setdefault(tuple(a % 2 for a in b), []).append(b)
    rep.check("no boundary point over 0 mod 2", (0,) * d not in fibres)
    rep.check("mod-2 fibres have size <= 2", all(len(f) <= 2 for f in fibres.values()))
    rep.check("count <= 2^(d+1) - 1", len(pts) <= 2 ** (d + 1) - 1)
    return rep


def _equality_points(P: VPolytope) -> LatticePointSet:
    pts = standing_hypotheses(P)
    d = P.dim_ambient
    if len(pts) != 3**d:
        raise HypothesisError("γ not bijective", f"|P_Z| = {len(pts)} != {3**d}")
    return pts


class Mod3Table:
    """Residue-class lookup for an equality-case point set."""

    def __init__(self, points: Sequence[IntVec]):
        self.points = tuple(points)
        self.by_residue = {_mod3(x): x for x in points}
        if len(self.by_residue) != len(self.points):
            raise TheoremViolation("mod-3 reduction is not injective")
        self.point_set = set(points)

    def complete(self, x: IntVec, y: IntVec) -> tuple[IntVec, IntVec]:
        if x not in self.point_set or y not in self.point_set:
            raise HypothesisError("x, y in P_Z")
        r = tuple((-a - b) % 3 for a, b in zip(x, y))
        z = self.by_residue.get(r)
        if z is None:
            raise TheoremViolation(f"no lattice point with residue {r}")
        w = tuple((a + b + c) // 3 for a, b, c in zip(x, y, z))
        if w not in self.point_set:
            raise TheoremViolation(f"w = {w} lies outside P")
        if x != y and (z == x or z == y):
            raise TheoremViolation("completion coincides with an input")
        return z, w


def mod3_complete(P: VPolytope, x: Sequence[int], y: Sequence[int]) -> tuple[IntVec, IntVec]:
    """The unique ``z in P_Z`` with ``x + y + z == 0 (mod 3)``, and ``w = (x+y+z)/3``."""
    pts = _equality_points(P)
    return Mod3Table(pts.points).complete(tuple(x), tuple(y))


def _face_polytope(P: VPolytope, idx) -> VPolytope:
    return VPolytope(P.dim_ambient, tuple(P.vertices[i] for i in sorted(idx)))


def facet_layering(P: VPolytope) -> LayeringReport:
    """Three-layer structure and prism shape over a facet with an interior lattice point."""
    pts = _equality_points(P)
    d = P.dim_ambient
    if d < 2:
        raise HypothesisError("d >= 2")
    if not P.is_lattice_polytope:
        raise HypothesisError("lattice polytope")
    P_Z = set(pts.points)

    candidates = []
    for f in P.facets:
        F = _face_polytope(P, f.vertex_indices)
        inner = enumerate_lattice_points(F).interior
        if inner:
            candidates.append((f, inner))
    if not candidates:
        raise TheoremViolation("no facet has a relative-interior lattice point")
    facet, inner = max(candidates, key=lambda c: (c[0].outer_normal, c[0].height))
    x = inner[0]
    n, h = facet.outer_normal, facet.height

    top = tuple(sorted(p for p in P_Z if la.dot(n, p) == h))
    mid = tuple(sorted(p for p in P_Z if la.dot(n, p) == 0))
    bot = tuple(sorted(p for p in P_Z if la.dot(n, p) == -h))
    neg = lambda S: {tuple(-a for a in p) for p in S}
    add = lambda S, v: {tuple(a + b for a, b in zip(p, v)) for p in S}

    rep = LayeringReport(facet, facet.u, x, (top, mid, bot))
    rep.checks["layers partition P_Z"] = len(top) + len(mid) + len(bot) == len(P_Z)
    rep.checks["bottom layer is -F_Z"] = set(bot) == neg(top)
    rep.checks["x + (P_Z minus F_Z) in P_Z"] = add(P_Z - set(top), x) <= P_Z
    rep.checks["translation bijections"] = add(bot, x) == set(mid) and add(mid, x) == set(top)
    verts = {tuple(int(a) for a in v) for v in P.vertices}
    rep.checks["vertices in F_Z or -F_Z"] = verts <= set(top) | set(bot)
    F_verts = [P.vertices[i] for i in facet.vertex_indices]
    shifted = [tuple(a - 2 * b for a, b in zip(v, x)) for v in F_verts]
    rep.checks["-F = F - 2x"] = hull_canonicalize(shifted) == hull_canonicalize(
        [tuple(-a for a in v) for v in F_verts])
    rep.checks["prism P = conv(F, F - 2x)"] = hull_canonicalize(F_verts + shifted) == P

    # faces of every dimension k = 1..d-1 with a relative-interior lattice point
    lattice = face_lattice(P)
    for k in range(1, d):
        hit = None
        for dim in range(k, d):
            for face in lattice.get(dim, []):
                inner_pts = enumerate_lattice_points(_face_polytope(P, face)).interior
                if inner_pts:
                    hit = {"dim": dim, "vertices": tuple(P.vertices[i] for i in sorted(face)),
                           "point": inner_pts[0]}
                    break
            if hit:
                break
        rep.face_witnesses[k] = hit
        rep.checks[f"face of dim >= {k} with interior lattice point"] = hit is not None
    return rep


def recognize_standard_cube(P: VPolytope) -> CubeWitness | Rejection:
    d = P.dim_ambient
    if not P.is_full_dimensional:
        return Rejection("not full-dimensional")
    ok, c = is_centrally_symmetric(P)
    if not ok or any(c):
        return Rejection("not centrally symmetric about 0")
    facets = P.facets
    if len(facets) != 2 * d:
        return Rejection(f"{len(facets)} facets, expected {2 * d}")
    gs = []
    for f in facets:
        g = f.u
        if any(a.denominator != 1 for a in g):
            return Rejection(f"facet normal {f.outer_normal} at height {f.height} is not integral at height 1")
        gs.append(tuple(int(a) for a in g))
    gset = set(gs)
    if any(tuple(-a for a in g) not in gset for g in gs):
        return Rejection("facet normals do not come in +- pairs")
    G = sorted(g for g in gs if g > tuple(-a for a in g))
    if not la.is_unimodular(G):
        return Rejection(f"normal matrix has determinant {la.det(G)}")
    E = la.transpose(la.inverse(G))  # rows are the columns of G^-1
    E = tuple(tuple(int(a) for a in r) for r in E)
    corners = [tuple(sum(s * e[j] for s, e in zip(signs, E)) for j in range(d))
               for signs in product((1, -1), repeat=d)]
    if hull_canonicalize(corners) != P:
        return Rejection("hull of cube corners differs from P")
    return CubeWitness(_normalize_basis(E))


def recognize_cross_polytope(P: VPolytope) -> CrossWitness | Rejection:
    d = P.dim_ambient
    if not P.is_full_dimensional:
        return Rejection("not full-dimensional")
    V = P.vertices
    if len(V) != 2 * d:
        return Rejection(f"{len(V)} vertices, expected {2 * d}")
    c = tuple(sum(v[j] for v in V) / len(V) for j in range(d))
    vset = set(V)
    reps = []
    for v in V:
        mirror = tuple(2 * a - b for a, b in zip(c, v))
        if mirror not in vset:
            return Rejection("vertices do not pair about the centroid")
        if v > mirror:
            reps.append(v)
    ws = [tuple(a - b for a, b in zip(v, c)) for v in sorted(reps)]
    e1, lam = la.rational_primitive(ws[0])
    basis = [e1]
    for w in ws[1:]:
        e = tuple(a / lam for a in w)
        if any(a.denominator != 1 for a in e):
            return Rejection(f"{w} is not an integral multiple of the scale {lam}")
        e = tuple(int(a) for a in e)
        if not la.is_primitive(e):
            return Rejection(f"{e} is not primitive")
        basis.append(e)
    D = la.det(basis)
    if abs(D) != 1:
        return Rejection(f"basis has determinant {D}")
    pts = [tuple(a + s * lam * b for a, b in zip(c, e)) for e in basis for s in (1, -1)]
    if hull_canonicalize(pts) != P:
        return Rejection("hull of centre +- scale * e_i differs from P")
    return CrossWitness(c, lam, _normalize_basis(basis))


def interiors_intersect(A: list[tuple[IntVec, Fraction]], n: int) -> Fraction:
    """Max slack of ``normal . x <= height`` rows; positive iff the open system is feasible."""
    return lp.max_slack([list(a) for a, _ in A], [h for _, h in A], n)


def verify_packing(P: VPolytope) -> VerifierReport:
    """Translates ``P + 2a`` (``a`` in ``P_Z``) lie in ``3P`` with disjoint interiors."""
    pts = standing_hypotheses(P)
    d = P.dim_ambient
    points = pts.points
    facets = [(f.outer_normal, f.height) for f in P.facets]
    rep = VerifierReport("verify-packing")

    outside = []
    for a in points:
        for v in P.vertices:
            x = tuple(b + 2 * t for b, t in zip(v, a))
            if any(la.dot(nrm, x) > 3 * h for nrm, h in facets):
                outside.append((a, x))
                break
    rep.check("translates contained in 3P", not outside)

    # interiors of P + 2a and P + 2b meet iff those of P and P + 2(b - a) do
    cache: dict[IntVec, bool] = {}
    overlaps = []
    for a, b in combinations(points, 2):
        delta = tuple(q - p for p, q in zip(a, b))
        if delta not in cache:
            rows = [(nrm, min(h, h + 2 * la.dot(nrm, delta))) for nrm, h in facets]
            t = interiors_intersect(rows, d)
            cache[delta] = t > 0
        if cache[delta]:
            overlaps.append((a, b))
    rep.check("interiors pairwise disjoint", not overlaps)

    vol = volume(P)
    rep.check("|P_Z| Vol(P) <= Vol(3P)", len(points) * vol <= 3**d * vol)
    rep.witnesses.update(
        count=len(points),
        volume=vol,
        volume_3P=3**d * vol,
        packed_volume=len(points) * vol,
        tiles=len(points) * vol == 3**d * vol,
    )
    if outside:
        rep.witnesses["outside"] = outside
    if overlaps:
        rep.witnesses["overlaps"] = overlaps
    return rep


def verify_mink_equality(P: VPolytope) -> VerifierReport:
    """``|P_Z| == 3^d`` exactly when ``P`` is a standard lattice cube, with the proof machinery."""
    d = P.dim_ambient
    base = verify_3d_bound(P)
    rep = VerifierReport("verify-equality", dict(base.checks), dict(base.witnesses))
    count = base.witnesses["count"]
    cube = recognize_standard_cube(P)
    equality = count == 3**d
    rep.witnesses["equality"] = equality
    if equality:
        rep.check("standard cube recognized", bool(cube))
        lay = facet_layering(P)
        rep.check("facet layering", lay.passed)
        table = Mod3Table(enumerate_lattice_points(P).points)
        total = True
        try:
            for x in table.points:
                for y in table.points:
                    table.complete(x, y)
        except TheoremViolation:
            total = False
        rep.check("mod-3 completion total", total)
        pack = verify_packing(P)
        rep.check("packing tiles 3P", pack.passed and pack.witnesses["tiles"])
        rep.witnesses["layering"] = lay
    else:
        rep.check("standard cube rejected", not cube)
    rep.witnesses["cube"] = cube if cube else None
    rep.witnesses["cube_rejection"] = None if cube else cube.reason
    return rep
