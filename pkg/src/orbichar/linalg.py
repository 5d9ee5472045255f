"""Exact Gaussian elimination over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import NoSolutionError


def _echelon(rows: list[list[Fraction]], ncols: int) -> list[int]:
    """Reduce ``rows`` in place to reduced row-echelon form; return the
    pivot columns.  The pivot is the candidate with the largest absolute
    numerator."""
    pivots = []
    r = 0
    for c in range(ncols):
        cand = [i for i in range(r, len(rows)) if rows[i][c] != 0]
        if not cand:
            continue
        p = max(cand, key=lambda i: (abs(rows[i][c].numerator), -i))
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        rows[r] = [v / piv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def rank(matrix: Sequence[Sequence[int | Fraction]]) -> int:
    if not matrix:
        return 0
    rows = [[Fraction(v) for v in row] for row in matrix]
    return len(_echelon(rows, len(rows[0])))


def solve(matrix: Sequence[Sequence[int | Fraction]], rhs: Sequence[int | Fraction]) -> list[Fraction]:
    """The unique solution of ``matrix · x = rhs``.

    Raises ``NoSolutionError`` if the system is inconsistent or the solution
    is not unique.
    """
    if len(matrix) != len(rhs):
        raise ValueError("row count and right-hand side length differ")
    ncols = len(matrix[0]) if matrix else 0
    rows = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    pivots = _echelon(rows, ncols + 1)
    if ncols in pivots:
        raise NoSolutionError("inconsistent linear system")
    if len(pivots) < ncols:
        raise NoSolutionError(f"solution not unique (rank {len(pivots)} < {ncols})")
    x = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        x[c] = rows[r][ncols]
    return x


def kernel_basis(matrix: Sequence[Sequence[int | Fraction]], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right null space."""
    ncols = len(matrix[0]) if matrix else (ncols or 0)
    rows = [[Fraction(v) for v in row] for row in matrix]
    pivots = _echelon(rows, ncols) if rows else []
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -rows[r][f]
        basis.append(v)
    return basis


def mat_vec(matrix: Sequence[Sequence[int | Fraction]], v: Sequence[int | Fraction]) -> list:
    return [sum((a * b for a, b in zip(row, v)), 0) for row in matrix]
