"""Exact integer and rational linear algebra.

Vectors are tuples, matrices are tuples of row tuples. Integer data uses
Python ``int``; rational data uses :class:`fractions.Fraction`. Nothing in
here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

IntVec = tuple[int, ...]
IntMat = tuple[IntVec, ...]
RatVec = tuple[Fraction, ...]


def to_intmat(rows: Sequence[Sequence[int]]) -> IntMat:
    return tuple(tuple(int(x) for x in r) for r in rows)


def to_ratvec(v: Sequence) -> RatVec:
    return tuple(Fraction(x) for x in v)


def identity(n: int) -> IntMat:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> tuple:
    cols = list(zip(*B))
    return tuple(tuple(dot(r, c) for c in cols) for r in A)


def matvec(A: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(dot(r, v) for r in A)


def transpose(A: Sequence[Sequence]) -> tuple:
    return tuple(zip(*A))


def primitive_part(v: Sequence[int]) -> tuple[IntVec, int]:
    """Split a nonzero integer vector as ``v = c * p`` with ``gcd(p) == 1``.

    ``c`` is positive, so the sign of ``v`` is carried by ``p``.
    """
    v = tuple(int(x) for x in v)
    c = 0
    for x in v:
        c = gcd(c, x)
    if c == 0:
        raise ValueError("no primitive part: zero vector")
    return tuple(x // c for x in v), c


def is_primitive(v: Sequence[int]) -> bool:
    c = 0
    for x in v:
        c = gcd(c, int(x))
    return c == 1


def clear_denominators(v: Sequence[Fraction]) -> tuple[IntVec, int]:
    """Return ``(w, D)`` with ``w`` integral and ``v == w / D``, ``D > 0`` minimal."""
    D = 1
    for x in v:
        D = lcm(D, Fraction(x).denominator)
    return tuple(int(Fraction(x) * D) for x in v), D


def rational_primitive(v: Sequence[Fraction]) -> tuple[IntVec, Fraction]:
    """Factor a nonzero rational vector as ``scale * p`` with ``p`` primitive, ``scale > 0``."""
    w, D = clear_denominators(v)
    p, c = primitive_part(w)
    return p, Fraction(c, D)


def det(M: Sequence[Sequence]) -> Fraction | int:
    """Determinant by fraction-free Bareiss elimination.

    Integer input gives an ``int``; rational input gives a ``Fraction``.
    """
    n = len(M)
    if n == 0:
        return 1
    if any(len(r) != n for r in M):
        raise ValueError("determinant of a non-square matrix")
    if all(isinstance(x, int) for r in M for x in r):
        A = [list(r) for r in M]
        scale = 1
    else:
        rows = [to_ratvec(r) for r in M]
        D = 1
        for r in rows:
            for x in r:
                D = lcm(D, x.denominator)
        A = [[int(x * D) for x in r] for r in rows]
        scale = Fraction(1, D**n)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0 if scale == 1 else Fraction(0)
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    result = sign * A[n - 1][n - 1]
    return result if scale == 1 else result * scale


def is_unimodular(M: Sequence[Sequence[int]]) -> bool:
    """True iff ``M`` is a square integer matrix with determinant +1 or -1."""
    if any(len(r) != len(M) for r in M):
        raise ValueError("unimodularity of a non-square matrix")
    if not all(isinstance(x, int) or Fraction(x).denominator == 1 for r in M for x in r):
        return False
    return abs(det(to_intmat(M))) == 1


def rref(M: Sequence[Sequence]) -> tuple[tuple[RatVec, ...], tuple[int, ...]]:
    """Reduced row echelon form over Q; returns ``(nonzero_rows, pivot_columns)``."""
    A = [list(to_ratvec(r)) for r in M]
    if not A:
        return (), ()
    m, n = len(A), len(A[0])
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(m):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return tuple(tuple(row) for row in A[:r]), tuple(pivots)


def rank(M: Sequence[Sequence]) -> int:
    return len(rref(M)[1]) if M else 0


def nullspace(M: Sequence[Sequence], ncols: int | None = None) -> tuple[RatVec, ...]:
    """Rational basis of ``{x : M x = 0}``, one vector per free column."""
    if not M:
        if ncols is None:
            raise ValueError("column count needed for an empty matrix")
        return tuple(to_ratvec(r) for r in identity(ncols))
    n = len(M[0])
    R, piv = rref(M)
    basis = []
    for f in range(n):
        if f in piv:
            continue
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, p in zip(R, piv):
            x[p] = -row[f]
        basis.append(tuple(x))
    return tuple(basis)


def solve(A: Sequence[Sequence], b: Sequence) -> RatVec:
    """Solve a square nonsingular rational system ``A x = b``."""
    n = len(A)
    aug = [list(to_ratvec(r)) + [Fraction(bi)] for r, bi in zip(A, b)]
    R, piv = rref(aug)
    if piv != tuple(range(n)):
        raise ValueError("singular system")
    return tuple(R[i][n] for i in range(n))


def inverse(A: Sequence[Sequence]) -> tuple[RatVec, ...]:
    n = len(A)
    aug = [list(to_ratvec(r)) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(A)]
    R, piv = rref(aug)
    if piv != tuple(range(n)):
        raise ValueError("singular matrix")
    return tuple(tuple(R[i][n:]) for i in range(n))


def hnf(M: Sequence[Sequence[int]]) -> tuple[IntMat, IntMat]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U @ M == H``. ``H`` is in
    row echelon form with zero rows at the bottom, every pivot is positive
    and the entries above a pivot lie in ``[0, pivot)``.
    """
    if not M:
        raise ValueError("hnf of an empty matrix")
    H = [list(map(int, r)) for r in M]
    m, n = len(H), len(H[0])
    U = [list(r) for r in identity(m)]
    r = 0
    for c in range(n):
        if r == m:
            break
        # Euclid on column c among rows r..m-1
        while True:
            nz = [i for i in range(r, m) if H[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(H[i][c]))
            if p != r:
                H[r], H[p] = H[p], H[r]
                U[r], U[p] = U[p], U[r]
            done = True
            for i in range(r + 1, m):
                if H[i][c] != 0:
                    q = H[i][c] // H[r][c]
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[r])]
                    if H[i][c] != 0:
                        done = False
            if done:
                break
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-a for a in H[r]]
            U[r] = [-a for a in U[r]]
        piv = H[r][c]
        for i in range(r):
            q = H[i][c] // piv
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                U[i] = [a - q * b for a, b in zip(U[i], U[r])]
        r += 1
    return to_intmat(H), to_intmat(U)


def hnf_basis(rows: Sequence[Sequence[int]], ncols: int) -> IntMat:
    """HNF-canonical Z-basis of the lattice generated by ``rows`` (zero rows dropped)."""
    if not rows:
        return ()
    H, _ = hnf(rows)
    return tuple(r for r in H if any(r))


def integer_kernel(M: Sequence[Sequence], ncols: int | None = None) -> IntMat:
    """HNF-canonical Z-basis of ``{v in Z^d : M v = 0}``.

    ``M`` may be rational; rows are scaled to integers first.
    """
    if not M:
        if ncols is None:
            raise ValueError("column count needed for an empty matrix")
        return identity(ncols)
    d = len(M[0])
    rows = [clear_denominators(to_ratvec(r))[0] for r in M]
    # U @ M^T = H: rows of U facing zero rows of H span the left kernel of M^T
    H, U = hnf(transpose(rows))
    kern = [U[i] for i in range(d) if not any(H[i])]
    return hnf_basis(kern, d)


def lattice_coordinates(basis: Sequence[Sequence[int]], v: Sequence) -> RatVec | None:
    """Coefficients ``c`` with ``sum c_i basis_i == v``, or None if ``v`` is outside the span."""
    k = len(basis)
    if k == 0:
        return () if not any(v) else None
    d = len(v)
    aug = [[Fraction(basis[i][j]) for i in range(k)] + [Fraction(v[j])] for j in range(d)]
    R, piv = rref(aug)
    if k in piv:
        return None
    c = [Fraction(0)] * k
    for row, p in zip(R, piv):
        c[p] = row[k]
    return tuple(c)
