"""Evidence ordering and demonstration selection."""

from __future__ import annotations

import logging
from typing import List, Optional, Sequence, Tuple

from ..backends import BackendError
from ..types import EvidenceItem, ImageCase, ScrapeStatus
from ..util import cosine
from .prompts import snippet

log = logging.getLogger(__name__)


def embedding_text(item: EvidenceItem) -> str:
    """Text side of the image-evidence similarity: title, description,
    and the first 512 tokens of the body."""
    parts = [item.title or "", item.description or "", snippet(item.body_text)]
    return "\n".join(p for p in parts if p)


def rank_embedding(image: bytes, items: Sequence[EvidenceItem], embed_backend
                   ) -> List[EvidenceItem]:
    """Descending cosine between the image embedding and each evidence text.

    Ties fall back to retrieval rank; items whose embedding fails go last,
    flagged in the log. A failure to embed the image itself propagates.
    """
    query = embed_backend.embed("image", image)
    scored: List[Tuple[float, int, EvidenceItem]] = []
    failed: List[EvidenceItem] = []
    for item in items:
        try:
            vector = embed_backend.embed("text", embedding_text(item))
            scored.append((cosine(query, vector), item.retrieval_rank, item))
        except BackendError as exc:
            log.warning("embedding failed for %s, placing last: %s", item.url, exc)
            failed.append(item)
    scored.sort(key=lambda t: (-t[0], t[1]))
    failed.sort(key=lambda item: item.retrieval_rank)
    return [item for _, _, item in scored] + failed


def rank_time(items: Sequence[EvidenceItem]) -> List[EvidenceItem]:
    """Oldest publication first; undated items last in retrieval order."""
    return sorted(
        items,
        key=lambda item: (
            (0, item.publication_date.sort_key(), item.retrieval_rank)
            if item.publication_date is not None
            else (1, (), item.retrieval_rank)
        ),
    )


def select_demonstrations(image: bytes, train: Sequence[ImageCase], n: int,
                          embed_backend, image_loader) -> Tuple[List[ImageCase], Optional[str]]:
    """Nearest train cases by image-embedding cosine; ties by case id.

    Backend trouble degrades to zero demonstrations with a warning.
    """
    if n <= 0:
        return [], None
    if n > len(train):
        raise ValueError(f"requested {n} demonstrations from {len(train)} train cases")
    try:
        query = embed_backend.embed("image", image)
        scored = []
        for case in train:
            vector = embed_backend.embed("image", image_loader.load(case.image_ref))
            scored.append((-cosine(query, vector), case.id, case))
    except (BackendError, OSError) as exc:
        log.warning("demonstration selection failed, using none: %s", exc)
        return [], f"demonstration selection failed: {exc}"
    scored.sort(key=lambda t: (t[0], t[1]))
    return [case for _, _, case in scored[:n]], None


def identify_original(items: Sequence[EvidenceItem]) -> Optional[str]:
    """Oldest dated evidence page with an image: its first image URL."""
    candidates = [
        item for item in items
        if item.scrape_status is ScrapeStatus.OK and item.image_urls and item.publication_date
    ]
    if not candidates:
        return None
    oldest = min(candidates, key=lambda i: (i.publication_date.sort_key(), i.retrieval_rank))
    return oldest.image_urls[0]
