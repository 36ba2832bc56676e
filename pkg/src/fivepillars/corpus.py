"""Corpus loading/saving (line-delimited JSON) and time-based splits."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List

from .types import ImageCase, Split, SplitSpec, ValidationError
from .util import atomic_write_text, canonical_json

log = logging.getLogger(__name__)


class CorpusError(Exception):
    """The corpus file itself is unusable (unreadable, duplicate ids, ...)."""


@dataclass(frozen=True)
class RecordError:
    line_number: int
    message: str


def load_corpus(path, *, errors: list = None) -> List[ImageCase]:
    """Read one ImageCase per JSON line.

    Invalid records are collected into ``errors`` (with their line numbers)
    instead of aborting; an unreadable file or duplicate ids raise
    CorpusError.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise CorpusError(f"cannot read corpus {path}: {exc}") from exc
    cases: List[ImageCase] = []
    collected = errors if errors is not None else []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
            cases.append(ImageCase.from_dict(record))
        except (json.JSONDecodeError, ValidationError, KeyError, TypeError, ValueError) as exc:
            collected.append(RecordError(lineno, str(exc)))
            log.warning("corpus %s line %d: %s", path.name, lineno, exc)
    seen = set()
    for case in cases:
        if case.id in seen:
            raise CorpusError(f"duplicate case id {case.id!r} in {path}")
        seen.add(case.id)
    return cases


def save_corpus(cases: Iterable[ImageCase], path) -> None:
    lines = [canonical_json(case.to_dict()) for case in cases]
    atomic_write_text(Path(path), "\n".join(lines) + ("\n" if lines else ""))


def assign_splits(cases: Iterable[ImageCase], spec: SplitSpec = None) -> List[ImageCase]:
    """Partition by fact-check publication date; boundaries are inclusive."""
    spec = spec or SplitSpec.default()
    out = []
    counts = {Split.TRAIN: 0, Split.VAL: 0, Split.TEST: 0}
    for case in cases:
        key = case.fc_publication_date.sort_key()
        if key <= spec.train_end.sort_key():
            split = Split.TRAIN
        elif key <= spec.val_end.sort_key():
            split = Split.VAL
        else:
            if key > spec.test_end.sort_key():
                log.warning(
                    "case %s dated %s is beyond the test end %s; assigned to test",
                    case.id, case.fc_publication_date, spec.test_end,
                )
            split = Split.TEST
        counts[split] += 1
        out.append(ImageCase.from_dict({**case.to_dict(), "split": split.value}))
    total = max(1, len(out))
    log.info(
        "split proportions: train %.1f%% / val %.1f%% / test %.1f%%",
        100 * counts[Split.TRAIN] / total,
        100 * counts[Split.VAL] / total,
        100 * counts[Split.TEST] / total,
    )
    return out
