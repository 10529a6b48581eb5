"""Exact linear algebra over Fraction and RatFn scalars.

All elimination is done in the fraction field itself, so a solved system
carries no tolerance: residuals are identically zero or the solve reports
failure.  Pivots are chosen by a size heuristic to keep rational-function
entries small during elimination.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence

from .poly import MPoly, RatFn, scalar_is_zero


class LinearSolveError(ArithmeticError):
    """Inconsistent or underdetermined exact linear system."""


def _size(x) -> int:
    if isinstance(x, RatFn):
        return len(x.num.terms) + len(x.den.terms)
    if isinstance(x, MPoly):
        return len(x.terms)
    return 1


def solve_exact(rows: Sequence[Sequence], rhs: Sequence) -> list:
    """Solve an overdetermined consistent system exactly.

    Raises LinearSolveError("inconsistent") when no solution exists and
    LinearSolveError("underdetermined") when the solution is not unique.
    """
    if len(rows) != len(rhs):
        raise ValueError("rows and rhs lengths differ")
    ncols = len(rows[0]) if rows else 0
    # Echelon rows: (pivot column, full row, rhs value).
    pivots: List[tuple] = []
    for row, b in zip(rows, rhs):
        r = list(row)
        v = b
        for col, prow, pval in pivots:
            if scalar_is_zero(r[col]):
                continue
            factor = r[col] / prow[col]
            for j in range(ncols):
                if not scalar_is_zero(prow[j]):
                    r[j] = r[j] - factor * prow[j]
            v = v - factor * pval
        live = [j for j in range(ncols) if not scalar_is_zero(r[j])]
        if not live:
            if not scalar_is_zero(v):
                raise LinearSolveError("inconsistent")
            continue
        col = min(live, key=lambda j: (_size(r[j]), j))
        pivots.append((col, r, v))
        if len(pivots) == ncols:
            break
    if len(pivots) < ncols:
        # Feed remaining rows through in case rank appears later.
        raise LinearSolveError("underdetermined")
    # Back-substitute in pivot order (each pivot row may still touch other
    # pivot columns; solve the triangular-by-construction system).
    solution: List[Optional[object]] = [None] * ncols
    for col, prow, pval in reversed(pivots):
        acc = pval
        for j in range(ncols):
            if j != col and not scalar_is_zero(prow[j]):
                if solution[j] is None:
                    raise LinearSolveError("underdetermined")
                acc = acc - prow[j] * solution[j]
        solution[col] = acc / prow[col]
    return solution


def residual_ok(rows: Sequence[Sequence], rhs: Sequence, solution: Sequence) -> bool:
    """Check A*x = b exactly for every row."""
    for row, b in zip(rows, rhs):
        acc = b
        for a, x in zip(row, solution):
            if not scalar_is_zero(a):
                acc = acc - a * x
        if not scalar_is_zero(acc):
            return False
    return True


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank of a matrix of Fractions."""
    mat = [list(map(Fraction, r)) for r in rows]
    ncols = len(mat[0]) if mat else 0
    rk = 0
    col_of = []
    for r in mat:
        for col, prow in col_of:
            if r[col]:
                f = r[col] / prow[col]
                for j in range(ncols):
                    if prow[j]:
                        r[j] -= f * prow[j]
        live = [j for j in range(ncols) if r[j]]
        if live:
            col_of.append((live[0], r))
            rk += 1
    return rk


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list:
    """Basis of the exact nullspace of a Fraction matrix (list of vectors)."""
    mat = [list(map(Fraction, r)) for r in rows]
    pivots = {}
    for r in mat:
        for col, prow in pivots.items():
            if r[col]:
                f = r[col] / prow[col]
                for j in range(ncols):
                    if prow[j]:
                        r[j] -= f * prow[j]
        live = [j for j in range(ncols) if r[j]]
        if live:
            pivots[live[0]] = r
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for j in free:
        vec = [Fraction(0)] * ncols
        vec[j] = Fraction(1)
        for col in sorted(pivots, reverse=True):
            prow = pivots[col]
            acc = Fraction(0)
            for t in range(col + 1, ncols):
                if prow[t]:
                    acc += prow[t] * vec[t]
            vec[col] = -acc / prow[col]
        basis.append(vec)
    return basis


def det(matrix: Sequence[Sequence]) -> object:
    """Determinant by cofactor expansion; entries may be Fraction or RatFn."""
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return matrix[0][0]
    if n == 2:
        return matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]
    out = None
    for j in range(n):
        a = matrix[0][j]
        if scalar_is_zero(a):
            continue
        minor = [[row[t] for t in range(n) if t != j] for row in matrix[1:]]
        term = a * det(minor)
        if j % 2:
            term = -term
        out = term if out is None else out + term
    if out is None:
        return matrix[0][0] - matrix[0][0]
    return out
