"""Exact strict-feasibility kernel for homogeneous linear systems.

Decides whether ``{x : a_k . x > 0 for all k}`` is nonempty for integer rows
``a_k``.  By Gordan's alternative the system is infeasible exactly when some
``y >= 0`` with ``sum(y) = 1`` satisfies ``A^T y = 0``.  That standard-form
problem is solved by a phase-1 simplex on an all-integer (fraction-free)
tableau with Bland's rule, and on success the optimal dual multipliers give
an integer witness ``x``.
"""

from __future__ import annotations

from math import gcd
from typing import Optional, Sequence


class LPStats:
    """Running counters, mostly for benchmarking the chamber search."""

    calls = 0
    pivots = 0

    @classmethod
    def reset(cls) -> None:
        cls.calls = 0
        cls.pivots = 0


def _primitive(vec: list[int]) -> list[int]:
    g = 0
    for v in vec:
        g = gcd(g, v)
    if g > 1:
        return [v // g for v in vec]
    return vec


def strict_witness(rows: Sequence[Sequence[int]], dim: int) -> Optional[list[int]]:
    """Return an integer ``x`` with ``row . x > 0`` for every row, or None.

    ``rows`` must be integer vectors of length ``dim``.  With no rows the
    all-ones vector is returned.
    """
    LPStats.calls += 1
    m = len(rows)
    if m == 0:
        return [1] * dim
    n1 = dim + 1
    ncols = m + n1  # y columns, then artificials
    rhs = ncols

    # constraint rows: coordinate equations, then the normalisation sum(y) = 1
    tab = []
    for i in range(dim):
        row = [rows[k][i] for k in range(m)] + [0] * n1 + [0]
        row[m + i] = 1
        tab.append(row)
    last = [1] * m + [0] * n1 + [1]
    last[m + dim] = 1
    tab.append(last)
    basis = [m + i for i in range(n1)]

    # reduced costs of min sum(artificials); rhs entry holds minus the objective
    obj = [0] * (ncols + 1)
    for row in tab:
        for j in range(m):
            obj[j] -= row[j]
    obj[rhs] = -1

    den = 1
    pivots = 0
    while True:
        enter = -1
        for j in range(ncols):
            if obj[j] < 0:
                enter = j
                break
        if enter < 0:
            break
        leave = -1
        best_num = best_den = 0
        for i in range(n1):
            a = tab[i][enter]
            if a > 0:
                b = tab[i][rhs]
                if leave < 0:
                    leave, best_num, best_den = i, b, a
                    continue
                lhs_v = b * best_den
                rhs_v = best_num * a
                if lhs_v < rhs_v or (lhs_v == rhs_v and basis[i] < basis[leave]):
                    leave, best_num, best_den = i, b, a
        if leave < 0:  # cannot happen: the phase-1 objective is bounded below
            raise ArithmeticError("unbounded phase-1 problem")
        prow = tab[leave]
        p = prow[enter]
        for row in tab:
            if row is prow:
                continue
            f = row[enter]
            if f == 0:
                if p != den:
                    for c in range(ncols + 1):
                        row[c] = row[c] * p // den
            else:
                for c in range(ncols + 1):
                    row[c] = (row[c] * p - f * prow[c]) // den
        f = obj[enter]
        for c in range(ncols + 1):
            obj[c] = (obj[c] * p - f * prow[c]) // den
        den = p
        basis[leave] = enter
        pivots += 1

    LPStats.pivots += pivots
    if obj[rhs] == 0:
        return None
    # dual multiplier w_i = 1 - obj[m+i]/den; witness x = -w[:dim] (scaled by den)
    x = _primitive([obj[m + i] - den for i in range(dim)])
    return x


def is_strictly_feasible(rows: Sequence[Sequence[int]], dim: int) -> bool:
    return strict_witness(rows, dim) is not None
