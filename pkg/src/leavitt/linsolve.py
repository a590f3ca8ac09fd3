"""Exact Gaussian elimination for sparse rational systems.

Rows are dicts column -> Fraction.  `echelonize` runs Gauss-Jordan over
the matrix alone and records every row operation, so one factorization
can be replayed cheaply against many right-hand sides (`solve_with`).
Pivots are chosen per column to minimize the bit size of the pivot
entry's numerator*denominator, breaking ties toward the lowest row
index; the whole procedure is deterministic.

Free columns are assigned 0, so the returned solution has canonical
minimal support.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence


@dataclass
class Echelon:
    ncols: int
    rows: list  # reduced rows, same indexing as the input
    pivots: list  # (column, row index) in elimination order
    ops: list  # ("sub", target_row, source_row, factor) replay log
    pivot_rows: set


def _pivot_size(value: Fraction) -> int:
    return (abs(value.numerator) * value.denominator).bit_length()


def echelonize(rows: Sequence[dict], ncols: int) -> Echelon:
    work = [dict(row) for row in rows]
    by_col: dict[int, set] = {}
    for idx, row in enumerate(work):
        for col in row:
            by_col.setdefault(col, set()).add(idx)
    ops = []
    pivots = []
    pivot_rows: set[int] = set()
    for col in range(ncols):
        holders = by_col.get(col)
        if not holders:
            continue
        candidates = [idx for idx in holders if idx not in pivot_rows]
        if not candidates:
            continue
        pivot = min(candidates, key=lambda idx: (_pivot_size(work[idx][col]), idx))
        pivots.append((col, pivot))
        pivot_rows.add(pivot)
        pivot_row = work[pivot]
        pivot_value = pivot_row[col]
        for idx in sorted(holders - {pivot}):
            row = work[idx]
            factor = row[col] / pivot_value
            ops.append(("sub", idx, pivot, factor))
            for c, value in pivot_row.items():
                acc = row.get(c, 0) - factor * value
                if acc:
                    row[c] = acc
                    by_col.setdefault(c, set()).add(idx)
                else:
                    del row[c]
                    by_col[c].discard(idx)
    return Echelon(ncols, work, pivots, ops, pivot_rows)


def solve_with(echelon: Echelon, rhs: Sequence[Fraction]) -> Optional[list[Fraction]]:
    """Replay the recorded operations on rhs; None if inconsistent."""
    b = [Fraction(x) for x in rhs]
    for _, target, source, factor in echelon.ops:
        b[target] -= factor * b[source]
    # Non-pivot rows are fully eliminated by Gauss-Jordan, so a nonzero
    # transformed rhs there is an inconsistency.
    for idx in range(len(echelon.rows)):
        if idx not in echelon.pivot_rows and b[idx]:
            return None
    solution = [Fraction(0)] * echelon.ncols
    for col, idx in echelon.pivots:
        # Gauss-Jordan leaves only the pivot and free columns in the row;
        # free columns are 0, so the solve is a single division.
        solution[col] = b[idx] / echelon.rows[idx][col]
    return solution


def solve_linear_system(rows: Sequence[dict], rhs: Sequence[Fraction],
                        ncols: int) -> Optional[list[Fraction]]:
    return solve_with(echelonize(rows, ncols), rhs)
