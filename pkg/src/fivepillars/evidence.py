"""Evidence acquisition: reverse image search, scraping, and the two
retrieval restrictions (no post-fact-check evidence, no other fact-checkers).
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence, Set

from .backends import BackendError
from .fetch import FetchResult, HttpFetcher
from .htmltext import ExtractError, extract_article
from .types import DateValue, EvidenceItem, RisResult, ScrapeStatus

log = logging.getLogger(__name__)

DEFAULT_MAX_URLS = 50
RIS_RETRIES = 2
SCRAPE_WORKERS = 4


class RetrievalError(Exception):
    """Reverse image search failed for a case after retries."""


@dataclass
class RetrievalConfig:
    max_urls: int = DEFAULT_MAX_URLS
    fc_domain_blocklist: Set[str] = field(default_factory=set)
    strict_undated: bool = False
    cache_dir: Optional[Path] = None

    def __post_init__(self):
        if self.max_urls < 1:
            raise ValueError("max_urls must be >= 1")


def load_blocklist(path) -> Set[str]:
    """One hostname pattern per line; '#' starts a comment."""
    patterns = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        entry = line.split("#", 1)[0].strip().lower()
        if entry:
            patterns.add(entry)
    return patterns


def ris_search(image_ref: str, image_bytes: Optional[bytes], provider,
               cfg: RetrievalConfig, *, backoff: float = 1.0) -> List[RisResult]:
    """Query the provider, preserving its order; retries with backoff."""
    last_error = None
    for attempt in range(RIS_RETRIES + 1):
        try:
            results = provider.search(image_ref, image_bytes, cfg.max_urls)
            return list(results[: cfg.max_urls])
        except (BackendError, OSError, ValueError) as exc:
            last_error = exc
            if attempt < RIS_RETRIES:
                delay = backoff * (2 ** attempt)
                log.warning("RIS attempt %d for %s failed (%s); retrying in %.1fs",
                            attempt + 1, image_ref, exc, delay)
                time.sleep(delay)
    raise RetrievalError(f"reverse image search failed for {image_ref}: {last_error}")


def scrape(url: str, rank: int = 0, fetcher=None) -> EvidenceItem:
    """Fetch and extract one page; failures become status codes, not raises."""
    fetcher = fetcher or HttpFetcher()
    result: FetchResult = fetcher.fetch(url)
    if result.error is not None or result.status == 0:
        return EvidenceItem(url=url, retrieval_rank=rank, scrape_status=ScrapeStatus.FETCH_ERROR)
    if result.status in (401, 403, 451):
        return EvidenceItem(url=url, retrieval_rank=rank, scrape_status=ScrapeStatus.BLOCKED)
    if not (200 <= result.status < 300):
        return EvidenceItem(url=url, retrieval_rank=rank, scrape_status=ScrapeStatus.FETCH_ERROR)
    try:
        extract = extract_article(result.content, url)
    except ExtractError as exc:
        log.info("extraction failed for %s: %s", url, exc)
        return EvidenceItem(url=url, retrieval_rank=rank, scrape_status=ScrapeStatus.EXTRACT_ERROR)
    return EvidenceItem(
        url=url,
        retrieval_rank=rank,
        title=extract.title,
        description=extract.description,
        author=extract.author,
        sitename=extract.sitename,
        publication_date=extract.publication_date,
        body_text=extract.body_text,
        image_captions=tuple(caption for _, caption in extract.images if caption),
        image_urls=tuple(img_url for img_url, _ in extract.images),
        scrape_status=ScrapeStatus.OK,
    )


def scrape_all(urls: Sequence[str], fetcher=None, workers: int = SCRAPE_WORKERS) -> List[EvidenceItem]:
    """Scrape concurrently; output order follows retrieval rank regardless
    of completion order (per-host politeness lives in the fetcher)."""
    fetcher = fetcher or HttpFetcher()
    if not urls:
        return []
    with ThreadPoolExecutor(max_workers=min(workers, len(urls))) as pool:
        return list(pool.map(lambda pair: scrape(pair[1], pair[0], fetcher), enumerate(urls)))


class CachingRisProvider:
    """Caches provider responses keyed by image reference."""

    def __init__(self, inner, cache):
        self.inner = inner
        self.cache = cache

    def search(self, image_ref: str, image_bytes, max_results: int):
        key = f"ris:{image_ref}:{max_results}"
        cached = self.cache.get_json(key)
        if cached is not None:
            return [
                RisResult(page_url=e["page_url"], match_kind=e["match_kind"],
                          matched_image_urls=tuple(e["matched_image_urls"]))
                for e in cached
            ]
        results = self.inner.search(image_ref, image_bytes, max_results)
        self.cache.put_json(key, [
            {"page_url": r.page_url, "match_kind": r.match_kind.value,
             "matched_image_urls": list(r.matched_image_urls)}
            for r in results
        ])
        return results


def filter_temporal(items: Sequence[EvidenceItem], fc_date: DateValue,
                    strict_undated: bool = False) -> List[EvidenceItem]:
    """Drop evidence published strictly after the fact-check article.

    Undated items are kept (flagged in the log) unless strict_undated.
    """
    if fc_date.granularity != "day":
        raise ValueError("fact-check date must have day granularity")
    kept = []
    for item in items:
        if item.publication_date is None:
            if strict_undated:
                log.info("dropping %s: undated (strict mode)", item.url)
                continue
            log.info("keeping %s: undated, flagged", item.url)
            kept.append(item)
        elif item.publication_date.sort_key() > fc_date.sort_key():
            log.info("dropping %s: published %s after fact-check %s",
                     item.url, item.publication_date, fc_date)
        else:
            kept.append(item)
    return kept


def hostname_matches(hostname: str, pattern: str) -> bool:
    """Suffix match on domain label boundaries ('a.b.com' matches 'b.com')."""
    hostname = hostname.lower().rstrip(".")
    pattern = pattern.lower().rstrip(".")
    return hostname == pattern or hostname.endswith("." + pattern)


def filter_fc_domains(items: Sequence[EvidenceItem], blocklist: Set[str]) -> List[EvidenceItem]:
    """Drop evidence hosted by fact-checking organizations."""
    kept = []
    for item in items:
        matched = next((p for p in blocklist if hostname_matches(item.hostname, p)), None)
        if matched is not None:
            log.info("dropping %s: hostname matches fact-check domain %s", item.url, matched)
        else:
            kept.append(item)
    return kept
