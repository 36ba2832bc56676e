"""Free-text date extraction into DateValue lists.

Handles the forms that show up in fact-check articles and model answers:
"August 17, 2013", "17 August 2013", "August 2013", bare years, and ISO
dates. Ranges like "between 2020 and 2022" fall out naturally because both
endpoints match on their own.
"""

from __future__ import annotations

import re

from .types import MAX_YEAR, MIN_YEAR, DateValue, ValidationError

_MONTHS = {
    "january": 1, "february": 2, "march": 3, "april": 4, "may": 5, "june": 6,
    "july": 7, "august": 8, "september": 9, "october": 10, "november": 11,
    "december": 12,
    "jan": 1, "feb": 2, "mar": 3, "apr": 4, "jun": 6, "jul": 7, "aug": 8,
    "sep": 9, "sept": 9, "oct": 10, "nov": 11, "dec": 12,
}

_MONTH = r"(" + "|".join(sorted(_MONTHS, key=len, reverse=True)) + r")\.?"
_YEAR = r"([12][0-9]{3})"
_DAY = r"([0-3]?[0-9])(?:st|nd|rd|th)?"

# Most specific first; later patterns cannot claim text already consumed.
_FORMS = [
    # August 17, 2013 / Aug. 17 2013
    ("mdy", re.compile(rf"\b{_MONTH}\s+{_DAY}\s*,?\s+{_YEAR}\b", re.IGNORECASE)),
    # 17 August 2013
    ("dmy", re.compile(rf"\b{_DAY}\s+{_MONTH}\s*,?\s+{_YEAR}\b", re.IGNORECASE)),
    # 2013-08-17 / 2013-08
    ("iso", re.compile(rf"\b{_YEAR}-([01]?[0-9])(?:-([0-3]?[0-9]))?\b")),
    # August 2013
    ("my", re.compile(rf"\b{_MONTH}\s*,?\s+{_YEAR}\b", re.IGNORECASE)),
    # bare year
    ("y", re.compile(rf"\b{_YEAR}\b")),
]


def _build(year, month=None, day=None):
    try:
        year = int(year)
        if not (MIN_YEAR <= year <= MAX_YEAR):
            return None
        return DateValue(year, int(month) if month else None, int(day) if day else None)
    except (ValidationError, ValueError):
        return None


def _month_num(name: str) -> int:
    return _MONTHS[name.lower().rstrip(".")]


def normalize_date_text(text: str) -> list:
    """Extract every recognizable date; empty list when none parse."""
    if not text:
        return []
    consumed = []  # (start, end) spans already claimed
    hits = []  # (start, DateValue)
    for form, pattern in _FORMS:
        for m in pattern.finditer(text):
            if any(m.start() < e and s < m.end() for s, e in consumed):
                continue
            g = m.groups()
            if form == "mdy":
                value = _build(g[2], _month_num(g[0]), g[1])
            elif form == "dmy":
                value = _build(g[2], _month_num(g[1]), g[0])
            elif form == "iso":
                value = _build(g[0], g[1], g[2])
            elif form == "my":
                value = _build(g[1], _month_num(g[0]))
            else:
                value = _build(g[0])
            if value is None:
                continue
            consumed.append((m.start(), m.end()))
            hits.append((m.start(), value))
    out = []
    for _, value in sorted(hits, key=lambda h: h[0]):
        if value not in out:
            out.append(value)
    return out
