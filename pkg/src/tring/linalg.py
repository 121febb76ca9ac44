"""Exact linear algebra over Q via fraction-free (Bareiss) elimination.

Rows are cleared of denominators first, so the elimination runs on
integers with exact divisions only; back substitution reintroduces
fractions at the end.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm


def _integer_rows(matrix: list[list[Fraction]], rhs: list[Fraction] | None) -> list[list[int]]:
    rows = []
    for i, row in enumerate(matrix):
        entries = [Fraction(e) for e in row]
        if rhs is not None:
            entries.append(Fraction(rhs[i]))
        scale = lcm(*(e.denominator for e in entries)) if entries else 1
        rows.append([int(e * scale) for e in entries])
    return rows


def _bareiss_forward(rows: list[list[int]]) -> int:
    """Eliminate in place; returns the rank.  Exact integer divisions only."""
    if not rows:
        return 0
    height = len(rows)
    width = len(rows[0])
    prev = 1
    rank = 0
    for col in range(width):
        if rank == height:
            break
        pivot_row = next((i for i in range(rank, height) if rows[i][col]), None)
        if pivot_row is None:
            continue
        if pivot_row != rank:
            rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        pivot = rows[rank][col]
        for i in range(rank + 1, height):
            factor = rows[i][col]
            row_i = rows[i]
            row_k = rows[rank]
            for j in range(col + 1, width):
                row_i[j] = (row_i[j] * pivot - factor * row_k[j]) // prev
            row_i[col] = 0
        prev = pivot
        rank += 1
    return rank


def rank(matrix: list[list[Fraction]]) -> int:
    return _bareiss_forward(_integer_rows(matrix, None))


def is_invertible(matrix: list[list[Fraction]]) -> bool:
    n = len(matrix)
    return n == 0 or (len(matrix[0]) == n and rank(matrix) == n)


def solve_exact(
    matrix: list[list[Fraction]], rhs: list[Fraction]
) -> list[Fraction] | None:
    """Solve a square system exactly; None when the matrix is singular."""
    n = len(matrix)
    if n == 0:
        return []
    if len(matrix[0]) != n or len(rhs) != n:
        raise ValueError("solve_exact expects a square system")
    rows = _integer_rows(matrix, rhs)
    if _bareiss_forward(rows) != n:
        return None
    solution = [Fraction(0)] * n
    for i in reversed(range(n)):
        acc = Fraction(rows[i][n])
        for j in range(i + 1, n):
            acc -= rows[i][j] * solution[j]
        solution[i] = acc / rows[i][i]
    return solution
