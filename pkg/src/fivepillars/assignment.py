"""Minimum-cost rectangular assignment with a deterministic tie-break.

The solver runs the shortest-augmenting-path algorithm on a square matrix
obtained by padding rectangular inputs with a cost strictly larger than any
real entry ((max entry + 1) * max(rows, cols)); padded pairs are discarded
afterwards. Among equally optimal matchings the lexicographically smallest
pair list is returned so metric output never depends on iteration order.

``brute_force_lap`` enumerates every injection and is the test oracle for
``solve_lap``; it is only usable for min(rows, cols) <= 8.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

_REL_TOL = 1e-9
_BRUTE_FORCE_LIMIT = 8


@dataclass(frozen=True)
class CostMatrix:
    """Row-major non-negative finite costs; rows are predictions, cols ground truths."""

    rows: int
    cols: int
    values: tuple

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("matrix must have at least one row and one column")
        if len(self.values) != self.rows * self.cols:
            raise ValueError("values length does not match rows*cols")
        for v in self.values:
            if not math.isfinite(v) or v < 0:
                raise ValueError(f"cost entries must be finite and >= 0, got {v!r}")
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[float]]) -> "CostMatrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        if any(len(row) != c for row in rows):
            raise ValueError("ragged cost matrix")
        return cls(r, c, tuple(v for row in rows for v in row))

    def at(self, i: int, j: int) -> float:
        return self.values[i * self.cols + j]


@dataclass(frozen=True)
class Matching:
    """An optimal set of (row, col) pairs and its total cost."""

    pairs: Tuple[Tuple[int, int], ...]
    total_cost: float


def _solve_square(cost, n: int) -> list:
    """Shortest augmenting path on an n x n matrix; returns col->row assignment."""
    INF = float("inf")
    u = [0.0] * (n + 1)
    v = [0.0] * (n + 1)
    p = [0] * (n + 1)  # p[j] = row (1-based) assigned to column j; 0 = free
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = [INF] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = p[j0]
            delta = INF
            j1 = 0
            for j in range(1, n + 1):
                if used[j]:
                    continue
                cur = cost[i0 - 1][j - 1] - u[i0] - v[j]
                if cur < minv[j]:
                    minv[j] = cur
                    way[j] = j0
                if minv[j] < delta:
                    delta = minv[j]
                    j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while j0 != 0:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
    return [p[j] - 1 for j in range(1, n + 1)]  # 0-based row per column


def _pad_square(c: CostMatrix):
    n = max(c.rows, c.cols)
    pad = (max(c.values) + 1.0) * n
    grid = [[pad] * n for _ in range(n)]
    for i in range(c.rows):
        for j in range(c.cols):
            grid[i][j] = c.at(i, j)
    return grid, n


def _optimal_cost(c: CostMatrix) -> float:
    grid, n = _pad_square(c)
    col_row = _solve_square(grid, n)
    total = 0.0
    for j, i in enumerate(col_row):
        if i < c.rows and j < c.cols:
            total += c.at(i, j)
    return total


def _sub_optimal_cost(c: CostMatrix, rows: Sequence[int], cols: Sequence[int]) -> float:
    """Optimal cost of the submatrix restricted to the given rows/cols."""
    if not rows or not cols:
        return 0.0
    sub = CostMatrix.from_rows([[c.at(i, j) for j in cols] for i in rows])
    return _optimal_cost(sub)


def solve_lap(c: CostMatrix) -> Matching:
    """Globally minimum-cost maximal matching, lexicographically smallest pairs."""
    opt = _optimal_cost(c)
    scale = max(1.0, abs(opt), max(c.values))
    eps = _REL_TOL * scale
    k = min(c.rows, c.cols)
    rows_left = list(range(c.rows))
    cols_left = list(range(c.cols))
    pairs = []
    spent = 0.0
    for _ in range(k):
        chosen = None
        for ri, row in enumerate(rows_left):
            # Pairs are emitted in ascending row order, so once this row is
            # matched every earlier remaining row stays unmatched; that is
            # only feasible when enough rows remain after it.
            if len(rows_left) - ri - 1 < (k - len(pairs) - 1):
                break
            for ci, col in enumerate(cols_left):
                rest = _sub_optimal_cost(c, rows_left[ri + 1:], cols_left[:ci] + cols_left[ci + 1:])
                if spent + c.at(row, col) + rest <= opt + eps:
                    chosen = (ri, ci)
                    break
            if chosen:
                break
        if chosen is None:  # numerically impossible; guard against drift
            raise RuntimeError("tie-break refinement failed to extend the matching")
        ri, ci = chosen
        row, col = rows_left[ri], cols_left[ci]
        spent += c.at(row, col)
        pairs.append((row, col))
        rows_left = rows_left[ri + 1:]
        cols_left = cols_left[:ci] + cols_left[ci + 1:]
    return Matching(tuple(pairs), sum(c.at(i, j) for i, j in pairs))


def brute_force_lap(c: CostMatrix) -> Matching:
    """Exhaustive oracle over all injections; refuses matrices beyond 8x8."""
    k = min(c.rows, c.cols)
    if k > _BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force limited to min dimension {_BRUTE_FORCE_LIMIT}")
    best_pairs = None
    best_cost = float("inf")
    if c.rows <= c.cols:
        row_sets = [tuple(range(c.rows))]
    else:
        row_sets = itertools.combinations(range(c.rows), k)
    for rows in row_sets:
        for cols in itertools.permutations(range(c.cols), k):
            total = 0.0
            for i, j in zip(rows, cols):
                total += c.at(i, j)
            pairs = tuple(zip(rows, cols))
            if total < best_cost or (total == best_cost and pairs < best_pairs):
                best_cost = total
                best_pairs = pairs
    return Matching(best_pairs, best_cost)
