"""Exact rational polytopes and polyhedra.

A :class:`VPolytope` is the convex hull of a canonical (irredundant,
lexicographically sorted) vertex list; an :class:`HPolyhedron` is an
irredundant list of inequalities ``normal . x >= rhs`` with primitive
integer normals. Facets are found by exhaustive search over affinely
independent vertex subsets, which is plenty at the dimensions we target
(d <= 4, a few dozen vertices).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from math import comb, factorial, lcm
from typing import Iterable, Sequence

from . import linalg as la
from . import lp
from .errors import DimensionError, EmptyPolyhedronError
from .linalg import IntVec, RatVec


def _scale_to_int(points: Sequence[RatVec]) -> tuple[list[IntVec], int]:
    D = 1
    for p in points:
        for x in p:
            D = lcm(D, x.denominator)
    return [tuple(int(x * D) for x in p) for p in points], D


def _hyperplane_normal(pts: Sequence[IntVec]) -> IntVec | None:
    """Primitive normal of the hyperplane through ``d`` integer points, None if degenerate."""
    p0 = pts[0]
    diffs = [tuple(a - b for a, b in zip(p, p0)) for p in pts[1:]]
    d = len(p0)
    n = []
    for j in range(d):
        minor = [r[:j] + r[j + 1:] for r in diffs]
        c = la.det(minor) if minor else 1
        n.append(c if j % 2 == 0 else -c)
    if not any(n):
        return None
    return la.primitive_part(n)[0]


def _facets_of_int_points(pts: Sequence[IntVec]) -> list[tuple[IntVec, int, frozenset[int]]]:
    """Facets ``(outer_normal, height, incident indices)`` of a full-dimensional integer point set."""
    d = len(pts[0])
    found: dict[tuple[IntVec, int], frozenset[int]] = {}
    covered: set[frozenset[int]] = set()
    for idx in combinations(range(len(pts)), d):
        if any(frozenset(idx) <= s for s in covered):
            continue
        n = _hyperplane_normal([pts[i] for i in idx])
        if n is None:
            continue
        h = la.dot(n, pts[idx[0]])
        vals = [la.dot(n, p) for p in pts]
        if all(v <= h for v in vals):
            key = (n, h)
        elif all(v >= h for v in vals):
            key = (tuple(-x for x in n), -h)
        else:
            continue
        if key not in found:
            inc = frozenset(i for i, v in enumerate(vals) if v == h)
            found[key] = inc
            covered.add(inc)
    return [(n, h, inc) for (n, h), inc in found.items()]


@dataclass(frozen=True)
class _Chart:
    """Affine coordinates on the affine hull of a point set.

    Projection keeps the pivot coordinates, which is injective on the hull;
    ``lift`` is its inverse.
    """

    base: RatVec
    rows: tuple[RatVec, ...]
    pivots: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def project(self, x: Sequence) -> RatVec:
        return tuple(Fraction(x[p]) for p in self.pivots)

    def lift(self, y: Sequence) -> RatVec:
        x = list(self.base)
        for yj, p, r in zip(y, self.pivots, self.rows):
            t = Fraction(yj) - self.base[p]
            if t:
                x = [a + t * b for a, b in zip(x, r)]
        return tuple(x)


def _chart(points: Sequence[RatVec]) -> _Chart:
    base = points[0]
    diffs = [tuple(a - b for a, b in zip(p, base)) for p in points[1:]]
    rows, piv = la.rref(diffs) if diffs else ((), ())
    return _Chart(base, rows, piv)


def _vertex_indices(points: Sequence[RatVec]) -> list[int]:
    """Indices of the points that are vertices of their convex hull (points distinct)."""
    if len(points) == 1:
        return [0]
    ch = _chart(points)
    k = ch.dim
    if k == 0:
        return [0]
    proj = [ch.project(p) for p in points]
    ipts, _ = _scale_to_int(proj)
    facets = _facets_of_int_points(ipts)
    out = []
    for i in range(len(points)):
        normals = [n for n, _, inc in facets if i in inc]
        if len(normals) >= k and la.rank(normals) == k:
            out.append(i)
    return out


@dataclass(frozen=True)
class Facet:
    """A facet ``{x in P : outer_normal . x == height}`` of a full-dimensional polytope."""

    outer_normal: IntVec
    height: Fraction
    vertex_indices: tuple[int, ...]

    @property
    def u(self) -> RatVec:
        """The normal rescaled to read ``u . x == 1`` on the facet (needs height != 0)."""
        if self.height == 0:
            raise ValueError("facet passes through the origin")
        return tuple(Fraction(a) / self.height for a in self.outer_normal)


@dataclass(frozen=True)
class SimplexWitness:
    """A vertex simplex inside a polytope.

    ``edge_matrix`` holds the edge vectors ``vertex_k - base_vertex`` as rows.
    ``bound_norm`` is the max absolute row sum of the inverse edge matrix, so
    that ``width(P, v) >= max|v.edge| >= ||v||_inf / bound_norm``.
    """

    base_vertex: RatVec
    edge_matrix: tuple[RatVec, ...]
    bound_norm: Fraction


@dataclass(frozen=True)
class VPolytope:
    dim_ambient: int
    vertices: tuple[RatVec, ...]

    def __post_init__(self):
        if not self.vertices:
            raise ValueError("a polytope needs at least one vertex")
        if any(len(v) != self.dim_ambient for v in self.vertices):
            raise ValueError("vertex length does not match ambient dimension")

    @cached_property
    def _scaled(self) -> tuple[list[IntVec], int]:
        return _scale_to_int(self.vertices)

    @cached_property
    def chart(self) -> _Chart:
        return _chart(self.vertices)

    @property
    def dim(self) -> int:
        return self.chart.dim

    @property
    def is_full_dimensional(self) -> bool:
        return self.dim == self.dim_ambient

    @property
    def is_lattice_polytope(self) -> bool:
        return all(x.denominator == 1 for v in self.vertices for x in v)

    @cached_property
    def facets(self) -> tuple[Facet, ...]:
        if not self.is_full_dimensional:
            raise DimensionError(
                f"polytope has dimension {self.dim} < {self.dim_ambient}; "
                "use affine_hull/projection for lower-dimensional input"
            )
        ipts, D = self._scaled
        out = [
            Facet(n, Fraction(h, D), tuple(sorted(inc)))
            for n, h, inc in _facets_of_int_points(ipts)
        ]
        out.sort(key=lambda f: (f.outer_normal, f.height))
        return tuple(out)

    def contains(self, x: Sequence, strict: bool = False) -> bool:
        """Exact membership; ``strict`` asks for the (relative) interior."""
        x = la.to_ratvec(x)
        if not self.is_full_dimensional:
            return _relative_contains(self, x, strict)
        for f in self.facets:
            val = la.dot(f.outer_normal, x)
            if val > f.height or (strict and val == f.height):
                return False
        return True


def hull_canonicalize(points: Iterable[Sequence]) -> VPolytope:
    """Irredundant, lexicographically sorted vertex set of ``conv(points)``."""
    pts = sorted({la.to_ratvec(p) for p in points})
    if not pts:
        raise ValueError("hull of an empty point set")
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise ValueError("points of mixed dimension")
    keep = _vertex_indices(pts)
    return VPolytope(d, tuple(pts[i] for i in keep))


def polytope(points: Iterable[Sequence]) -> VPolytope:
    return hull_canonicalize(points)


def relative_chart(P: VPolytope) -> tuple[_Chart, VPolytope]:
    ch = P.chart
    Q = VPolytope(ch.dim, tuple(ch.project(v) for v in P.vertices))
    return ch, Q


def _relative_contains(P: VPolytope, x: RatVec, strict: bool) -> bool:
    ch, Q = relative_chart(P)
    y = ch.project(x)
    if ch.lift(y) != x:
        return False
    if ch.dim == 0:
        return True
    return Q.contains(y, strict)


@dataclass(frozen=True)
class HPolyhedron:
    """``{x : normal . x >= rhs for every constraint}``."""

    dim_ambient: int
    constraints: tuple[tuple[IntVec, Fraction], ...]

    @classmethod
    def from_constraints(cls, d: int, constraints: Iterable[tuple[Sequence, object]]) -> "HPolyhedron":
        """Normalise normals to primitive vectors, drop redundant rows, sort."""
        rows = set()
        for normal, rhs in constraints:
            normal = tuple(int(a) for a in normal)
            if len(normal) != d:
                raise ValueError("constraint normal has the wrong length")
            rhs = Fraction(rhs)
            if not any(normal):
                if rhs > 0:
                    rows.add(((0,) * d, Fraction(1)))
                continue
            p, c = la.primitive_part(normal)
            rows.add((p, rhs / c))
        rows = sorted(rows)
        if rows and rows[0][0] == (0,) * d:
            return cls(d, tuple(rows))  # 0 >= 1: keep as the certificate of emptiness
        kept = list(rows)
        A = [[-a for a in n] for n, _ in rows]
        if lp.feasible_point(A, [-c for _, c in rows], n=d) is None:
            return cls(d, tuple(rows))
        for row in rows:
            others = [r for r in kept if r != row]
            if _implied(d, others, row):
                kept = others
        return cls(d, tuple(kept))

    def _ub(self) -> tuple[list[list[int]], list[Fraction]]:
        # normal . x >= rhs  <=>  -normal . x <= -rhs
        return [[-a for a in n] for n, _ in self.constraints], [-c for _, c in self.constraints]

    def is_empty(self) -> bool:
        A, b = self._ub()
        if not A:
            return False
        return lp.feasible_point(A, b, n=self.dim_ambient) is None

    def contains(self, x: Sequence) -> bool:
        return all(la.dot(n, x) >= c for n, c in self.constraints)

    def implicit_equalities(self) -> list[int]:
        """Indices of constraints holding with equality on the whole polyhedron."""
        A, b = self._ub()
        out = []
        for i, (n, c) in enumerate(self.constraints):
            res = lp.maximize(n, A, b)
            if res.status == lp.OPTIMAL and res.value == c:
                out.append(i)
        return out

    @property
    def dim(self) -> int:
        if self.is_empty():
            return -1
        eq = [self.constraints[i][0] for i in self.implicit_equalities()]
        return self.dim_ambient - (la.rank(eq) if eq else 0)


def _implied(d: int, others: list[tuple[IntVec, Fraction]], row: tuple[IntVec, Fraction]) -> bool:
    if not others:
        return False
    n, c = row
    A = [[-a for a in m] for m, _ in others]
    b = [-r for _, r in others]
    res = lp.maximize([-a for a in n], A, b)
    if res.status == lp.INFEASIBLE:
        return True
    if res.status == lp.UNBOUNDED:
        return False
    return -res.value >= c


def v_to_h(P: VPolytope) -> tuple[HPolyhedron, tuple[Facet, ...]]:
    """Exact facet description of a full-dimensional polytope."""
    facets = P.facets
    cons = sorted((tuple(-a for a in f.outer_normal), -f.height) for f in facets)
    return HPolyhedron(P.dim_ambient, tuple(cons)), facets


def support(P: VPolytope, v: Sequence[int]) -> Fraction:
    """``max_{x in P} v . x``."""
    ipts, D = P._scaled
    return Fraction(max(la.dot(v, p) for p in ipts), D)


@dataclass(frozen=True)
class AffineHull:
    dim: int
    direction_basis: tuple[IntVec, ...]
    base_point: RatVec


def affine_hull(P: VPolytope) -> AffineHull:
    """Dimension, an integral direction basis and a base point of ``aff(P)``."""
    ch = P.chart
    basis = tuple(la.rational_primitive(r)[0] for r in ch.rows)
    return AffineHull(ch.dim, basis, ch.base)


@dataclass(frozen=True)
class RecessionCone:
    rays: tuple[IntVec, ...]
    lineality: tuple[IntVec, ...]
    cone_dim: int
    span_basis: tuple[RatVec, ...] = field(default=())  # rational basis of span(Rec)

    @property
    def lineality_dim(self) -> int:
        return len(self.lineality)

    @property
    def generators(self) -> tuple[IntVec, ...]:
        neg = tuple(tuple(-a for a in v) for v in self.lineality)
        return tuple(sorted(set(self.rays) | set(self.lineality) | set(neg)))


def recession_cone(Q: HPolyhedron) -> RecessionCone:
    """``{y : normal . y >= 0 for every constraint}`` as rays plus lineality space."""
    if Q.is_empty():
        raise EmptyPolyhedronError("empty polyhedron")
    d = Q.dim_ambient
    N = [n for n, _ in Q.constraints]
    lineality = la.integer_kernel(N, d) if N else la.identity(d)
    # span(Rec) is cut out by the implicit equalities of the cone
    A = [[-a for a in n] for n in N] if N else []
    implicit = []
    for n in N:
        res = lp.maximize(n, A + [list(n)], [0] * len(N) + [1])
        if res.status == lp.OPTIMAL and res.value == 0:
            implicit.append(n)
    span_basis = la.nullspace(implicit, d) if implicit else la.nullspace([], d)
    cone_dim = len(span_basis)

    # extreme rays of the pointed part C & lin^perp
    ell = len(lineality)
    rays: set[IntVec] = set()
    need = d - ell - 1
    if need >= 0 and cone_dim > ell:
        for sub in combinations(range(len(N)), need):
            eqs = [N[i] for i in sub] + [list(v) for v in lineality]
            ns = la.nullspace(eqs, d) if eqs else la.nullspace([], d)
            if len(ns) != 1:
                continue
            y = la.rational_primitive(ns[0])[0]
            for cand in (y, tuple(-a for a in y)):
                if all(la.dot(n, cand) >= 0 for n in N):
                    rays.add(cand)
    return RecessionCone(tuple(sorted(rays)), tuple(lineality), cone_dim, tuple(span_basis))


def h_vertices(Q: HPolyhedron) -> tuple[RatVec, ...]:
    """Vertices of ``Q & lineality^perp`` (the minimal-face representatives)."""
    if Q.is_empty():
        raise EmptyPolyhedronError("empty polyhedron")
    d = Q.dim_ambient
    N = [n for n, _ in Q.constraints]
    lineality = la.integer_kernel(N, d) if N else la.identity(d)
    need = d - len(lineality)
    out = set()
    for sub in combinations(range(len(N)), need):
        A = [list(N[i]) for i in sub] + [list(v) for v in lineality]
        b = [Q.constraints[i][1] for i in sub] + [0] * len(lineality)
        if la.rank(A) < d:
            continue
        x = la.solve(A, b)
        if Q.contains(x):
            out.add(x)
    if not out and need == 0:
        out.add(tuple(Fraction(0) for _ in range(d)))
    return tuple(sorted(out))


def to_vpolytope(Q: HPolyhedron) -> VPolytope:
    rc = recession_cone(Q)
    if rc.cone_dim:
        raise DimensionError("polyhedron is unbounded")
    return hull_canonicalize(h_vertices(Q))


def face_lattice(P: VPolytope) -> dict[int, list[frozenset[int]]]:
    """Nonempty faces of ``P`` by dimension, each as a set of vertex indices (``P`` itself included)."""
    n = len(P.vertices)
    if P.dim == 0:
        return {0: [frozenset({0})]}
    if P.is_full_dimensional:
        facet_sets = [frozenset(f.vertex_indices) for f in P.facets]
    else:
        _, Q = relative_chart(P)
        facet_sets = [frozenset(f.vertex_indices) for f in Q.facets]
    faces = set(facet_sets)
    frontier = set(facet_sets)
    while frontier:
        new = set()
        for a in frontier:
            for b in facet_sets:
                c = a & b
                if c and c not in faces:
                    new.add(c)
        faces |= new
        frontier = new
    faces.add(frozenset(range(n)))
    by_dim: dict[int, list[frozenset[int]]] = {}
    for f in faces:
        k = _chart([P.vertices[i] for i in sorted(f)]).dim
        by_dim.setdefault(k, []).append(f)
    for k in by_dim:
        by_dim[k].sort(key=sorted)
    return by_dim


def triangulate(P: VPolytope) -> list[tuple[int, ...]]:
    """Pulling triangulation: cone each facet's triangulation from the lowest vertex."""
    lattice = face_lattice(P)
    top = P.dim
    memo: dict[frozenset[int], list[tuple[int, ...]]] = {}

    def tri(face: frozenset[int], k: int) -> list[tuple[int, ...]]:
        if face in memo:
            return memo[face]
        if k == 0:
            res = [tuple(face)]
        else:
            v0 = min(face)
            res = []
            for g in lattice.get(k - 1, []):
                if g < face and v0 not in g:
                    res.extend((v0,) + s for s in tri(g, k - 1))
        memo[face] = res
        return res

    return tri(frozenset(range(len(P.vertices))), top)


def volume(P: VPolytope) -> Fraction:
    """Exact d-dimensional volume."""
    if not P.is_full_dimensional:
        raise DimensionError(f"volume needs a full-dimensional polytope (dim {P.dim} < {P.dim_ambient})")
    d = P.dim_ambient
    V = P.vertices
    total = Fraction(0)
    for s in triangulate(P):
        v0 = V[s[0]]
        M = [tuple(a - b for a, b in zip(V[i], v0)) for i in s[1:]]
        total += abs(la.det(M))
    return total / factorial(d)


def _gram_det(edges: list[RatVec]) -> Fraction:
    G = [[la.dot(a, b) for b in edges] for a in edges]
    return Fraction(la.det(G))


_EXHAUSTIVE_SIMPLICES = 600


def _simplex_bound(edges) -> Fraction:
    inv = la.inverse(edges)
    return max(sum(abs(x) for x in row) for row in inv)


def _greedy_edges(V, b: int, d: int):
    base = V[b]
    chosen, edges = [], []
    while len(edges) < d:
        scored = []
        for i in range(len(V)):
            if i == b or i in chosen:
                continue
            e = tuple(x - y for x, y in zip(V[i], base))
            scored.append((_gram_det(edges + [e]), -i, e))
        g, negi, e = max(scored)
        if g == 0:
            return None
        chosen.append(-negi)
        edges.append(e)
    return edges


def inscribed_simplex(P: VPolytope) -> SimplexWitness:
    """Vertex simplex with the smallest enumeration bound found.

    Small vertex sets are searched exhaustively; otherwise each vertex serves
    as the base of a greedy maximum-determinant simplex.
    """
    if not P.is_full_dimensional:
        raise DimensionError("inscribed simplex needs a full-dimensional polytope")
    V = P.vertices
    d = P.dim_ambient
    n = len(V)
    best = None
    if comb(n, d + 1) <= _EXHAUSTIVE_SIMPLICES:
        for sub in combinations(range(n), d + 1):
            base = V[sub[0]]
            edges = [tuple(x - y for x, y in zip(V[i], base)) for i in sub[1:]]
            det = la.det(edges)
            if det == 0:
                continue
            key = (_simplex_bound(edges), -abs(det))
            if best is None or key < best[0]:
                best = (key, base, edges)
    else:
        for b in range(n):
            edges = _greedy_edges(V, b, d)
            if edges is None:
                continue
            key = (_simplex_bound(edges), -abs(la.det(edges)))
            if best is None or key < best[0]:
                best = (key, V[b], edges)
    if best is None:
        raise DimensionError("no affinely independent vertex found")
    (bound, _), base, edges = best
    return SimplexWitness(base, tuple(edges), bound)


def affine_image(P: VPolytope, T: Sequence[Sequence] | None = None, t: Sequence | None = None,
                 scale: object = 1) -> VPolytope:
    """``scale * (T P + t)`` computed exactly; the vertex set is re-canonicalised."""
    lam = Fraction(scale)
    out = []
    for v in P.vertices:
        x = la.matvec(T, v) if T is not None else v
        if t is not None:
            x = tuple(a + b for a, b in zip(x, t))
        out.append(tuple(lam * a for a in x))
    return hull_canonicalize(out)


def cube(d: int, radius: int = 1) -> VPolytope:
    return hull_canonicalize(product((-radius, radius), repeat=d))


def cross_polytope(d: int, radius: object = 1) -> VPolytope:
    r = Fraction(radius)
    pts = []
    for i in range(d):
        for s in (1, -1):
            pts.append(tuple(s * r if j == i else Fraction(0) for j in range(d)))
    return hull_canonicalize(pts)


def simplex(d: int) -> VPolytope:
    return hull_canonicalize([(0,) * d] + list(la.identity(d)))
