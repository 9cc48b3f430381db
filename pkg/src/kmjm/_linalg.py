"""Small exact linear algebra kernel over Fraction (dense, list-of-lists).

Everything here is O(n^3) Gaussian elimination with exact rationals; the
matrices involved (Cartan matrices, pi-system B matrices, coefficient
matrices of root collections) are tiny, so clarity wins over cleverness.
The realize module has its own sparse integer row reduction tuned for the
much larger free-Lie-algebra coordinates.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def _as_rows(mat: Sequence[Sequence]) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in mat]


def det_exact(mat: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction elimination with partial (first nonzero) pivoting."""
    a = _as_rows(mat)
    n = len(a)
    if n == 0:
        return Fraction(1)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = a[col][col]
        for r in range(col + 1, n):
            if a[r][col] != 0:
                f = a[r][col] / inv
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return det


def leading_principal_minors(mat: Sequence[Sequence]) -> list[Fraction]:
    """[det(A_1), det(A_2), ..., det(A_n)] for the leading blocks."""
    n = len(mat)
    return [det_exact([row[: k + 1] for row in mat[: k + 1]]) for k in range(n)]


def rank_exact(rows: Sequence[Sequence]) -> int:
    a = _as_rows(rows)
    if not a:
        return 0
    ncols = len(a[0])
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(a)) if a[r][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = a[rank][col]
        for r in range(len(a)):
            if r != rank and a[r][col] != 0:
                f = a[r][col] / inv
                for c in range(col, ncols):
                    a[r][c] -= f * a[rank][c]
        rank += 1
        if rank == len(a):
            break
    return rank


def solve_exact(mat: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """Solve mat @ x = rhs exactly; None if mat is singular (square only)."""
    n = len(mat)
    if n == 0:
        return []
    a = _as_rows(mat)
    b = [Fraction(x) for x in rhs]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        b[col], b[piv] = b[piv], b[col]
        inv = a[col][col]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col] / inv
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
                b[r] -= f * b[col]
    return [b[i] / a[i][i] for i in range(n)]
