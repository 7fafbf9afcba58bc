"""Exact integer linear algebra.

Matrices are plain lists of rows of Python ints; rationals are
``fractions.Fraction``.  Nothing in here touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

IntMatrix = list[list[int]]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> IntMatrix:
    return [[0] * cols for _ in range(rows)]


def shape(A: Sequence[Sequence[int]]) -> tuple[int, int]:
    rows = len(A)
    cols = len(A[0]) if rows else 0
    return rows, cols


def transpose(A: Sequence[Sequence[int]]) -> IntMatrix:
    return [list(col) for col in zip(*A)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> IntMatrix:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    if len(A[0]) != inner:
        raise ValueError(f"shape mismatch {shape(A)} @ {shape(B)}")
    return [[sum(row[k] * B[k][j] for k in range(inner)) for j in range(cols)]
            for row in A]


def matvec(A: Sequence[Sequence[int]], x: Sequence[int]) -> list:
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def det(A: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (fraction-free Bareiss)."""
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    M = [list(row) for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


@dataclass(frozen=True)
class SnfResult:
    """``U @ A @ V == S`` with ``U``, ``V`` unimodular and ``S`` diagonal."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    invariant_factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def _pick_pivot(D: IntMatrix, t: int) -> Optional[tuple[int, int]]:
    # smallest nonzero |entry|, ties to the lowest (row, col)
    best = None
    for i in range(t, len(D)):
        for j in range(t, len(D[0])):
            v = abs(D[i][j])
            if v and (best is None or v < best[0]):
                best = (v, i, j)
    return None if best is None else (best[1], best[2])


def snf(A: Sequence[Sequence[int]]) -> SnfResult:
    """Smith normal form with transforms.

    Returns ``SnfResult(U, S, V, invariant_factors)`` where ``U A V = S``,
    the diagonal of ``S`` is nonnegative and each entry divides the next.
    Deterministic: pivots are chosen by smallest absolute value, ties broken
    by lowest (row, col).
    """
    rows, cols = shape(A)
    if rows and any(len(r) != cols for r in A):
        raise ValueError("ragged matrix")
    D = [list(map(int, r)) for r in A]
    U = identity(rows)
    V = identity(cols)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (D, V):
            for r in M:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        for M in (D, U):
            rd, rs = M[dst], M[src]
            for c in range(len(rd)):
                rd[c] += q * rs[c]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for M in (D, V):
            for r in M:
                r[dst] += q * r[src]

    for t in range(min(rows, cols)):
        while True:
            piv = _pick_pivot(D, t)
            if piv is None:
                break
            i, j = piv
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = D[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    dirty = dirty or D[i][t] != 0
            for j in range(t + 1, cols):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    dirty = dirty or D[t][j] != 0
            if dirty:
                continue
            # row and column clear; enforce divisibility on the remainder
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if D[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if D[t][t] < 0:
            for c in range(rows):
                U[t][c] = -U[t][c]
            D[t] = [-x for x in D[t]]
    factors = tuple(D[i][i] for i in range(min(rows, cols)) if D[i][i] != 0)
    return SnfResult(U=U, S=D, V=V, invariant_factors=factors)


def integer_kernel(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> IntMatrix:
    """A Z-basis of ``{x in Z^n : A x = 0}``, returned as a list of vectors.

    ``ncols`` is needed when ``A`` has no rows.
    """
    if not A:
        return identity(ncols or 0)
    res = snf(A)
    n = len(A[0])
    return [[res.V[i][j] for i in range(n)] for j in range(res.rank, n)]


def solve_integral(A: Sequence[Sequence[int]], b: Sequence[int]) -> Optional[list[int]]:
    """Some integer ``x`` with ``A x = b``, or ``None`` if there is none."""
    rows, cols = shape(A)
    if len(b) != rows:
        raise ValueError("dimension mismatch between A and b")
    if rows == 0:
        return [0] * cols
    res = snf(A)
    c = matvec(res.U, b)
    y = [0] * cols
    for i, s in enumerate(res.invariant_factors):
        if c[i] % s:
            return None
        y[i] = c[i] // s
    if any(c[i] for i in range(res.rank, rows)):
        return None
    x = matvec(res.V, y)
    assert matvec(A, x) == list(b)
    return x


def feasible_nonnegative(A: Sequence[Sequence], b: Sequence) -> Optional[list[Fraction]]:
    """Exact phase-one simplex: a point ``x >= 0`` with ``A x = b``, or None.

    Bland's rule throughout, so it terminates; all arithmetic in Fractions.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0:
        return [Fraction(0)] * n
    # tableau rows: [A | I | b] with b >= 0
    T = []
    for i in range(m):
        sgn = -1 if b[i] < 0 else 1
        row = [Fraction(sgn * a) for a in A[i]]
        row += [Fraction(int(i == j)) for j in range(m)]
        row.append(Fraction(sgn * b[i]))
        T.append(row)
    basis = [n + i for i in range(m)]
    width = n + m
    # reduced costs of the phase-one objective (sum of artificials)
    cost = [-sum(T[i][j] for i in range(m)) for j in range(n)] + [Fraction(0)] * m
    value = -sum(T[i][width] for i in range(m))
    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        leave = None
        for i in range(m):
            if T[i][enter] > 0:
                ratio = T[i][width] / T[i][enter]
                if (leave is None or ratio < leave[0]
                        or (ratio == leave[0] and basis[i] < basis[leave[1]])):
                    leave = (ratio, i)
        if leave is None:  # unbounded; cannot happen for phase one
            break
        r = leave[1]
        pv = T[r][enter]
        T[r] = [x / pv for x in T[r]]
        for i in range(m):
            if i != r and T[i][enter]:
                f = T[i][enter]
                T[i] = [x - f * y for x, y in zip(T[i], T[r])]
        f = cost[enter]
        cost = [x - f * y for x, y in zip(cost, T[r][:width])]
        value -= f * T[r][width]
        basis[r] = enter
    if value != 0:
        return None
    x = [Fraction(0)] * width
    for i, j in enumerate(basis):
        x[j] = T[i][width]
    if any(x[j] for j in range(n, width)):
        return None
    return x[:n]
