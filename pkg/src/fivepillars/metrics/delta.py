"""Assignment-based closeness scores and date comparison kernels.

``delta_score`` is the shared core of the Date, coordinate, and hierarchy
scores: predictions are matched one-to-one against ground truths by a
minimum-cost assignment and each matched pair contributes 1/(1+d), averaged
over the number of ground truths (unmatched ground truths contribute 0).
"""

from __future__ import annotations

from typing import Callable, Sequence

from ..assignment import CostMatrix, solve_lap
from ..types import DateValue

DAYS_PER_YEAR = 365.25
MONTHS_PER_YEAR = 12.0

GRANULARITY_ORDER = {"year": 0, "month": 1, "day": 2}


def delta_score(preds: Sequence, gts: Sequence, dist: Callable) -> float:
    """Mean of 1/(1+d) over the optimal prediction-ground truth matching."""
    if not gts:
        raise ValueError("ground truth list must be non-empty")
    if not preds:
        return 0.0
    matrix = CostMatrix.from_rows([[float(dist(p, g)) for g in gts] for p in preds])
    matching = solve_lap(matrix)
    return sum(1.0 / (1.0 + matrix.at(i, j)) for i, j in matching.pairs) / len(gts)


def date_distance(a: DateValue, b: DateValue) -> float:
    """|a-b| in fractional years at the granularity the pair shares.

    A component missing on one side is imputed as the mid-period value
    (month 7, day 15) when the other side specifies it; components missing
    on both sides are ignored.
    """
    finest = max(a.granularity, b.granularity, key=GRANULARITY_ORDER.get)
    if finest == "day":
        return abs((a.as_date() - b.as_date()).days) / DAYS_PER_YEAR
    if finest == "month":
        months_a = a.year * 12 + (a.month or 7) - 1
        months_b = b.year * 12 + (b.month or 7) - 1
        return abs(months_a - months_b) / MONTHS_PER_YEAR
    return float(abs(a.year - b.year))


def date_em(pred: DateValue, gt: DateValue, granularity: str = "day") -> bool:
    """Exact match down to the granularity; missing components fail."""
    if granularity not in GRANULARITY_ORDER:
        raise ValueError(f"unknown granularity {granularity!r}")
    if pred.year != gt.year:
        return False
    if granularity == "year":
        return True
    if pred.month is None or gt.month is None or pred.month != gt.month:
        return False
    if granularity == "month":
        return True
    return pred.day is not None and gt.day is not None and pred.day == gt.day
