"""Seeded instance generation.

Generation is a pure function of the :class:`CorpusSpec`: the same spec
yields byte-identical serialised corpora.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import linalg as la
from .lattice import enumerate_lattice_points
from .polytope import VPolytope, affine_image, cross_polytope, cube, hull_canonicalize

FAMILIES = ("cube", "cross", "random-symmetric", "random-general", "unimodular-orbit",
            "exhaustive-symmetric")


@dataclass(frozen=True)
class CorpusSpec:
    seed: int
    dim: int
    family: str
    bound: int = 2
    count: int = 1
    base: VPolytope | None = None
    translate: bool = False

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        if self.dim < 1 or self.bound < 1 or self.count < 0:
            raise ValueError("dim and bound must be positive, count non-negative")
        if self.family == "unimodular-orbit" and self.base is None:
            raise ValueError("unimodular-orbit needs a base instance")


def random_unimodular(rng: random.Random, d: int, bound: int, steps: int | None = None) -> la.IntMat:
    """Product of random shears, swaps and sign flips with entries bounded by ``bound``."""
    for _ in range(1000):
        M = [list(r) for r in la.identity(d)]
        for _ in range(steps if steps is not None else rng.randint(1, d + 1)):
            op = rng.randrange(3) if d > 1 else 2
            i = rng.randrange(d)
            if op == 0:
                j = rng.choice([k for k in range(d) if k != i])
                s = rng.choice((-1, 1))
                M[i] = [a + s * b for a, b in zip(M[i], M[j])]
            elif op == 1:
                j = rng.choice([k for k in range(d) if k != i])
                M[i], M[j] = M[j], M[i]
            else:
                M[i] = [-a for a in M[i]]
        if max(abs(a) for r in M for a in r) <= max(bound, 1):
            return la.to_intmat(M)
    return la.identity(d)


def _random_translation(rng: random.Random, d: int, bound: int) -> tuple[int, ...]:
    return tuple(rng.randint(-bound, bound) for _ in range(d))


def _random_symmetric(rng: random.Random, d: int, bound: int) -> VPolytope:
    box = [p for p in product(range(-bound, bound + 1), repeat=d) if any(p)]
    origin = (0,) * d
    while True:
        k = rng.randint(d, d + 3)
        chosen = rng.sample(box, k)
        pts = chosen + [tuple(-a for a in p) for p in chosen]
        P = hull_canonicalize(pts)
        if not P.is_full_dimensional:
            continue
        if enumerate_lattice_points(P).interior == (origin,):
            return P


def _random_general(rng: random.Random, d: int, bound: int) -> VPolytope:
    while True:
        n = rng.randint(d + 1, d + 4)
        pts = []
        for _ in range(n):
            q = rng.choice((1, 1, 2, 3))
            pts.append(tuple(Fraction(rng.randint(-bound * q, bound * q), q) for _ in range(d)))
        P = hull_canonicalize(pts)
        if P.is_full_dimensional:
            return P


def exhaustive_symmetric(d: int, bound: int) -> list[VPolytope]:
    """Every full-dimensional origin-symmetric lattice polytope with vertices in
    ``[-bound, bound]^d`` whose only interior lattice point is the origin."""
    origin = (0,) * d
    pairs = sorted(p for p in product(range(-bound, bound + 1), repeat=d) if p > tuple(-a for a in p))
    found: dict[tuple, VPolytope] = {}

    def grow(start: int, chosen: list) -> None:
        for i in range(start, len(pairs)):
            p = pairs[i]
            pts = chosen + [p, tuple(-a for a in p)]
            P = hull_canonicalize(pts)
            if P.is_full_dimensional:
                # interiors only grow with the point set, so a failure prunes the branch
                if enumerate_lattice_points(P).interior != (origin,):
                    continue
                found.setdefault(P.vertices, P)
            grow(i + 1, pts)

    grow(0, [])
    return [found[k] for k in sorted(found)]


def generate_corpus(spec: CorpusSpec) -> list[VPolytope]:
    d, b = spec.dim, spec.bound
    if spec.family == "exhaustive-symmetric":
        return exhaustive_symmetric(d, b)
    rng = random.Random(spec.seed)
    out = []
    for _ in range(spec.count):
        if spec.family == "cube":
            P = affine_image(cube(d), random_unimodular(rng, d, b))
            if spec.translate:
                P = affine_image(P, t=_random_translation(rng, d, b))
        elif spec.family == "cross":
            lam = Fraction(rng.randint(1, 3), rng.randint(1, 2))
            t = _random_translation(rng, d, b) if spec.translate else None
            P = affine_image(cross_polytope(d), random_unimodular(rng, d, b), t, lam)
        elif spec.family == "random-symmetric":
            P = _random_symmetric(rng, d, b)
        elif spec.family == "random-general":
            P = _random_general(rng, d, b)
        else:
            t = _random_translation(rng, d, b) if spec.translate else None
            P = affine_image(spec.base, random_unimodular(rng, d, b), t)
        out.append(P)
    return out
