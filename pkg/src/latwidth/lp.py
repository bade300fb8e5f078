"""Exact rational linear programming.

A dense two-phase tableau simplex over :class:`fractions.Fraction` with
Bland's anti-cycling rule. The problems solved here are tiny (a handful of
variables, a few dozen constraints), so clarity wins over speed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Fraction | None = None
    x: tuple[Fraction, ...] | None = None


def _pivot(T: list[list[Fraction]], basis: list[int], r: int, c: int) -> None:
    row = T[r]
    inv = 1 / row[c]
    if inv != 1:
        T[r] = row = [a * inv for a in row]
    nz = [j for j, a in enumerate(row) if a]
    for i, other in enumerate(T):
        if i != r:
            f = other[c]
            if f:
                for j in nz:
                    other[j] -= f * row[j]
    basis[r] = c


def _simplex(T: list[list[Fraction]], basis: list[int], allowed: int) -> bool:
    """Maximise the objective held in the last row; False if unbounded.

    The last row stores reduced costs ``-c_j``; columns ``>= allowed`` never enter.
    """
    m = len(T) - 1
    obj = T[m]
    while True:
        c = next((j for j in range(allowed) if obj[j] < 0), None)
        if c is None:
            return True
        best = None
        for i in range(m):
            a = T[i][c]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return False
        _pivot(T, basis, best[1], c)


def maximize(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
) -> LPResult:
    """Maximise ``c.x`` subject to ``A_ub x <= b_ub`` and ``A_eq x == b_eq``; ``x`` is free."""
    n = len(c)
    rows = [(list(map(Fraction, a)), Fraction(b), True) for a, b in zip(A_ub, b_ub)]
    rows += [(list(map(Fraction, a)), Fraction(b), False) for a, b in zip(A_eq, b_eq)]
    m = len(rows)
    n_slack = sum(1 for _, _, ub in rows if ub)
    # columns: x+ (n), x- (n), slacks, artificials, rhs
    n_art = m
    width = 2 * n + n_slack + n_art + 1
    T: list[list[Fraction]] = []
    basis: list[int] = []
    s = 0
    zero = Fraction(0)
    for i, (a, b, ub) in enumerate(rows):
        row = [zero] * width
        sign = -1 if b < 0 else 1
        for j in range(n):
            row[j] = sign * a[j]
            row[n + j] = -sign * a[j]
        if ub:
            row[2 * n + s] = Fraction(sign)
            s += 1
        row[2 * n + n_slack + i] = Fraction(1)
        row[-1] = sign * b
        T.append(row)
        basis.append(2 * n + n_slack + i)
    n_real = 2 * n + n_slack

    # phase 1: maximise minus the sum of artificials
    obj = [zero] * width
    for j in range(n_real, n_real + n_art):
        obj[j] = Fraction(1)
    for row in T:
        obj = [o - r for o, r in zip(obj, row)]
    T.append(obj)
    _simplex(T, basis, n_real)
    if T[-1][-1] != 0:
        return LPResult(INFEASIBLE)
    # drive remaining artificials out of the basis
    for i in range(m):
        if basis[i] >= n_real:
            c_in = next((j for j in range(n_real) if T[i][j] != 0), None)
            if c_in is not None:
                _pivot(T, basis, i, c_in)
    keep = [i for i in range(m) if basis[i] < n_real]
    T = [T[i][:n_real] + [T[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]

    # phase 2
    cost = [Fraction(x) for x in c] + [-Fraction(x) for x in c] + [zero] * n_slack
    obj = [-x for x in cost] + [zero]
    for i, b in enumerate(basis):
        f = obj[b]
        if f:
            obj = [o - f * r for o, r in zip(obj, T[i])]
    T.append(obj)
    if not _simplex(T, basis, n_real):
        return LPResult(UNBOUNDED)
    value = [zero] * n_real
    for i, b in enumerate(basis):
        value[b] = T[i][-1]
    x = tuple(value[j] - value[n + j] for j in range(n))
    return LPResult(OPTIMAL, T[-1][-1], x)


def feasible_point(
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    n: int | None = None,
) -> tuple[Fraction, ...] | None:
    if n is None:
        n = len(A_ub[0]) if A_ub else len(A_eq[0])
    res = maximize([0] * n, A_ub, b_ub, A_eq, b_eq)
    return res.x if res.status == OPTIMAL else None


def convex_combination(point: Sequence, points: Sequence[Sequence]) -> tuple[Fraction, ...] | None:
    """Weights ``lam >= 0`` summing to 1 with ``sum lam_i points_i == point``, or None."""
    k = len(points)
    if k == 0:
        return None
    d = len(point)
    A_eq = [[p[j] for p in points] for j in range(d)] + [[1] * k]
    b_eq = list(point) + [1]
    A_ub = [[-int(i == j) for j in range(k)] for i in range(k)]
    return feasible_point(A_ub, [0] * k, A_eq, b_eq, n=k)


def max_slack(A: Sequence[Sequence], b: Sequence, n: int) -> Fraction:
    """Largest ``t <= 1`` such that ``A x + t <= b`` is feasible.

    Positive iff some point satisfies every row strictly; negative iff the
    closed system ``A x <= b`` is infeasible.
    """
    A_ub = [list(a) + [1] for a in A] + [[0] * n + [1]]
    b_ub = list(b) + [1]
    return _optimal_value(maximize([0] * n + [1], A_ub, b_ub))


def _optimal_value(res: LPResult) -> Fraction:
    if res.status != OPTIMAL:
        raise ValueError(f"LP not optimal: {res.status}")
    return res.value
