"""Answer generation against the chat backend and parsing of raw outputs."""

from __future__ import annotations

import logging
import re
from typing import List, Optional, Sequence, Tuple

from ..backends import BackendError, b64encode
from ..dates import normalize_date_text
from ..types import LocationValue, Pillar, ValidationError

log = logging.getLogger(__name__)

# Any of these (case-insensitive) marks an abstained answer.
ABSTENTION_PHRASES = ("not enough information", "unknown", "cannot determine")

_LOCATION_SPLIT = re.compile(r"[;,]")


def generate_answer(prompt_text: str, images: Sequence[bytes], backend, cfg
                    ) -> Tuple[Optional[str], Optional[str]]:
    """One completion; returns (raw text, error tag).

    Transport retries live in the backend client; content-filter refusals
    surface as the distinct tag "refused" with no text.
    """
    messages = [{
        "role": "user",
        "text": prompt_text,
        "images": [b64encode(img) for img in images],
    }]
    try:
        result = backend.chat(
            messages,
            temperature=cfg.temperature,
            max_tokens=cfg.max_tokens,
            seed=cfg.seed,
        )
    except BackendError as exc:
        return None, f"chat backend failed: {exc}"
    if result.refused:
        return None, "refused"
    return result.text, None


def is_abstention(raw: str) -> bool:
    lowered = raw.strip().lower()
    return any(phrase in lowered for phrase in ABSTENTION_PHRASES)


def parse_answer(raw: Optional[str], pillar: Pillar):
    """Normalize a raw model answer into the pillar's value type.

    Returns None (or an empty tuple for list-valued pillars) for absent or
    abstained answers.
    """
    pillar = Pillar(pillar)
    empty = () if pillar in (Pillar.DATE, Pillar.LOCATION) else None
    if raw is None or not raw.strip() or is_abstention(raw):
        return empty
    text = raw.strip()
    if pillar is Pillar.DATE:
        return tuple(normalize_date_text(text))
    if pillar is Pillar.LOCATION:
        values: List[LocationValue] = []
        for part in _LOCATION_SPLIT.split(text):
            part = part.strip()
            if part:
                try:
                    values.append(LocationValue(text=part))
                except ValidationError:
                    continue
        return tuple(values)
    return text


def detect_manipulation(image: bytes, classifier) -> Tuple[str, Optional[float], Optional[str]]:
    """Classifier label passthrough; a dead backend degrades to
    non_manipulated with a warning (detector-less behavior)."""
    try:
        label, score = classifier.classify(image)
    except BackendError as exc:
        log.warning("manipulation classifier unavailable: %s", exc)
        return "non_manipulated", None, f"classifier unavailable: {exc}"
    if label not in ("manipulated", "non_manipulated"):
        return "non_manipulated", None, f"classifier returned unknown label {label!r}"
    log.info("manipulation classifier: %s (score %.3f)", label, score)
    return label, score, None
