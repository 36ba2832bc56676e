"""Independent oracles used only by tests.

These deliberately avoid the production code paths they check: the METEOR
alignment oracle enumerates every maximum matching; the haversine oracle
uses chord length through 3D coordinates; date distances come straight
from ``datetime``.
"""

from __future__ import annotations

import datetime
import functools
import math

EARTH_RADIUS_KM = 6371.0


def day_distance_years(a: tuple, b: tuple) -> float:
    """(y, m, d) triples -> |difference| in years with 365.25-day years."""
    da = datetime.date(*a)
    db = datetime.date(*b)
    return abs((da - db).days) / 365.25


def chord_haversine_km(p1, p2) -> float:
    """Great-circle distance via 3D chord length (independent formula)."""
    def to_xyz(lat, lon):
        phi = math.radians(lat)
        lam = math.radians(lon)
        return (
            math.cos(phi) * math.cos(lam),
            math.cos(phi) * math.sin(lam),
            math.sin(phi),
        )

    x1 = to_xyz(*p1)
    x2 = to_xyz(*p2)
    chord = math.dist(x1, x2)
    return 2 * EARTH_RADIUS_KM * math.asin(min(1.0, chord / 2))


def meteor_oracle(pred_tokens, ref_tokens, stem_fn) -> tuple:
    """(matches, min_chunks) over ALL maximum exact-or-stem alignments.

    Exhaustive: usable only for short token lists.
    """
    allowed = []
    for i, p in enumerate(pred_tokens):
        for j, r in enumerate(ref_tokens):
            if p == r or stem_fn(p) == stem_fn(r):
                allowed.append((i, j))

    best_matches = 0
    best_chunks = 0

    def chunks_of(pairs):
        pairs = sorted(pairs)
        count = 0
        prev = None
        for i, j in pairs:
            if prev is None or i != prev[0] + 1 or j != prev[1] + 1:
                count += 1
            prev = (i, j)
        return count

    n = len(allowed)

    def search(idx, used_i, used_j, chosen):
        nonlocal best_matches, best_chunks
        if idx == n:
            if len(chosen) > best_matches or (
                len(chosen) == best_matches and (best_matches == 0 or chunks_of(chosen) < best_chunks)
            ):
                best_matches = len(chosen)
                best_chunks = chunks_of(chosen) if chosen else 0
            return
        # prune: even taking every remaining edge cannot beat best
        if len(chosen) + (n - idx) < best_matches:
            return
        i, j = allowed[idx]
        if i not in used_i and j not in used_j:
            search(idx + 1, used_i | {i}, used_j | {j}, chosen + [(i, j)])
        search(idx + 1, used_i, used_j, chosen)

    search(0, frozenset(), frozenset(), [])
    return best_matches, best_chunks


def meteor_score_from(matches, chunks, pred_len, ref_len,
                      alpha=0.9, beta=3.0, gamma=0.5) -> float:
    if matches == 0 or pred_len == 0 or ref_len == 0:
        return 0.0
    precision = matches / pred_len
    recall = matches / ref_len
    f_mean = precision * recall / (alpha * precision + (1 - alpha) * recall)
    penalty = gamma * (chunks / matches) ** beta
    return f_mean * (1 - penalty)


def lcs_recursive(a, b) -> int:
    """Memoized recursion, structurally different from the DP table."""
    @functools.lru_cache(maxsize=None)
    def go(i, j):
        if i == len(a) or j == len(b):
            return 0
        if a[i] == b[j]:
            return 1 + go(i + 1, j + 1)
        return max(go(i + 1, j), go(i, j + 1))

    return go(0, 0)
