"""Fraction-free exact linear algebra over the rationals.

Only what the verification scenarios need: the rank of a small matrix of
exact rationals, computed by clearing denominators row by row and running
Bareiss one-step fraction-free elimination over the integers.  Every
division in the Bareiss update is exact, so no rational arithmetic (and no
rounding of any kind) occurs during elimination.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for row in rows:
        scale = 1
        for entry in row:
            scale = scale * entry.denominator // math.gcd(scale, entry.denominator)
        out.append([int(entry * scale) for entry in row])
    return out


def exact_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank of a matrix of rationals, exactly.

    Row scaling by the lcm of denominators preserves rank; Bareiss
    elimination then keeps all intermediates integral.
    """
    if not rows:
        return 0
    m = _integer_rows(rows)
    n_rows = len(m)
    n_cols = len(m[0])
    if any(len(row) != n_cols for row in m):
        raise ValueError("ragged matrix")

    rank = 0
    prev = 1
    for col in range(n_cols):
        pivot_row = None
        for r in range(rank, n_rows):
            if m[r][col] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        m[rank], m[pivot_row] = m[pivot_row], m[rank]
        pivot = m[rank][col]
        for r in range(rank + 1, n_rows):
            factor = m[r][col]
            for c in range(col, n_cols):
                # Bareiss update: exact integer division by the previous pivot.
                m[r][c] = (pivot * m[r][c] - factor * m[rank][c]) // prev
        prev = pivot
        rank += 1
        if rank == n_rows:
            break
    return rank
