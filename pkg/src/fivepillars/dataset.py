"""Corpus construction: archive harvesting, article scraping, automated
annotation extraction, filtering, and split assignment."""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass, field
from importlib import resources as importlib_resources
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Set, Tuple
from urllib.parse import urlparse

from .backends import BackendError
from .corpus import assign_splits, save_corpus
from .dates import normalize_date_text
from .evidence import scrape
from .types import (
    ClaimedContext,
    DateValue,
    ImageCase,
    ImageType,
    LocationValue,
    PillarAnswers,
    Provenance,
    SplitSpec,
    ValidationError,
    VerificationStrategy,
)
from .util import sha256_hex

log = logging.getLogger(__name__)

ABSENT = "not enough information"


def _resource_path(name: str):
    return importlib_resources.files("fivepillars") / "resources" / name


@dataclass(frozen=True)
class HarvestConfig:
    domains: tuple
    date_range: tuple = (2019, 2023)
    keywords: tuple = ("photo", "image", "picture")

    def __post_init__(self):
        start, end = self.date_range
        if start > end:
            raise ValidationError("date_range start must not exceed end")


def collect_archive_urls(cfg: HarvestConfig, archive) -> List[str]:
    """Unique archived URLs whose path contains a keyword (case-insensitive).

    A failing domain is recorded and skipped; the others proceed.
    """
    seen = set()
    out: List[str] = []
    for domain in cfg.domains:
        try:
            urls = archive.collect(domain, cfg.date_range[0], cfg.date_range[1])
        except (BackendError, KeyError, OSError) as exc:
            log.error("archive harvest failed for %s: %s", domain, exc)
            continue
        for url in urls:
            path = urlparse(url).path.lower()
            if not any(k in path for k in cfg.keywords):
                continue
            if url in seen:
                continue
            seen.add(url)
            out.append(url)
    return out


@dataclass
class FcArticle:
    url: str
    title: Optional[str] = None
    publication_date: Optional[DateValue] = None
    body_text: str = ""
    image_url: Optional[str] = None
    fetch_ok: bool = False

    @property
    def usable(self) -> bool:
        return bool(self.fetch_ok and self.image_url)


def scrape_fc_article(url: str, fetcher=None) -> FcArticle:
    """Title, publication date, text, and the fact-checked image URL.

    Articles without an image are flagged unusable (there is nothing to
    contextualize).
    """
    item = scrape(url, 0, fetcher)
    if item.scrape_status.value != "ok":
        log.info("fc article %s: %s", url, item.scrape_status.value)
        return FcArticle(url=url)
    return FcArticle(
        url=url,
        title=item.title,
        publication_date=item.publication_date,
        body_text=item.body_text,
        image_url=item.image_urls[0] if item.image_urls else None,
        fetch_ok=True,
    )


# --- language heuristic -------------------------------------------------

# Space-padded trigrams of frequent English function words; chosen to be
# rare in the other languages the source sites publish in. Conservative:
# misfires only over-drop.
_ENGLISH_TRIGRAMS = (
    " th", "the", "he ", " an", "and", "nd ", "ing", "ng ", " of", "of ",
    " to", "to ", " in", "in ", " is", "is ", "was", " wa", "ed ", " be",
    "hat", " ha", "ere", " wh",
)
_ENGLISH_DENSITY_THRESHOLD = 0.04
_ASCII_LETTER_THRESHOLD = 0.95


def english_score(text: str) -> float:
    cleaned = " " + re.sub(r"[^a-z]+", " ", text.lower()).strip() + " "
    total = max(1, len(cleaned) - 2)
    hits = sum(cleaned.count(tri) for tri in _ENGLISH_TRIGRAMS)
    return hits / total


def is_english(text: str) -> bool:
    letters = [c for c in text if c.isalpha()]
    if not letters:
        return False
    ascii_ratio = sum(1 for c in letters if c.isascii()) / len(letters)
    if ascii_ratio < _ASCII_LETTER_THRESHOLD:
        return False
    return english_score(text) >= _ENGLISH_DENSITY_THRESHOLD


# --- annotation extraction ----------------------------------------------


@dataclass
class AnnotationResult:
    answers: PillarAnswers = field(default_factory=PillarAnswers)
    claimed: ClaimedContext = field(default_factory=ClaimedContext)
    image_type: ImageType = ImageType.OTHER
    ok: bool = False
    error: Optional[str] = None

    @property
    def all_absent(self) -> bool:
        a = self.answers
        return (a.provenance is Provenance.UNKNOWN and a.source is None
                and not a.date and not a.location and a.motivation is None)


def annotation_prompt(article: FcArticle) -> str:
    instruction = _resource_path("annotation_prompt.txt").read_text(encoding="utf-8").strip()
    date = str(article.publication_date) if article.publication_date else "unknown"
    return (
        f"{instruction}\n\n"
        f"Article title: {article.title or 'unknown'}\n"
        f"Article publication date: {date}\n"
        f"Article text:\n{article.body_text}"
    )


def _strip_fences(text: str) -> str:
    text = text.strip()
    if text.startswith("```"):
        text = re.sub(r"^```[a-zA-Z]*\n", "", text)
        text = re.sub(r"\n```$", "", text.strip())
    return text.strip()


def _is_absent(value) -> bool:
    return value is None or (isinstance(value, str) and value.strip().strip(".").lower() == ABSENT)


def _as_text(value) -> Optional[str]:
    """Sentinels map to absent; list values merge into one string."""
    if _is_absent(value):
        return None
    if isinstance(value, list):
        parts = [str(v).strip() for v in value if not _is_absent(v)]
        return "; ".join(parts) or None
    text = str(value).strip()
    return text or None


def _as_dates(value) -> tuple:
    if _is_absent(value):
        return ()
    pieces = value if isinstance(value, list) else [value]
    out = []
    for piece in pieces:
        for d in normalize_date_text(str(piece)):
            if d not in out:
                out.append(d)
    return tuple(out)


def _as_locations(value) -> tuple:
    if _is_absent(value):
        return ()
    pieces = value if isinstance(value, list) else re.split(r"[;,]", str(value))
    out = []
    for piece in pieces:
        if _is_absent(piece):
            continue
        text = str(piece).strip()
        if text:
            out.append(LocationValue(text=text))
    return tuple(out)


def parse_annotation_json(data: dict) -> AnnotationResult:
    provenance_raw = data.get("provenance")
    if _is_absent(provenance_raw):
        provenance = Provenance.UNKNOWN
    else:
        try:
            provenance = Provenance(str(provenance_raw).strip().capitalize())
        except ValueError:
            provenance = Provenance.UNKNOWN
    try:
        image_type = ImageType(str(data.get("image_type", "other")).strip().lower())
    except ValueError:
        image_type = ImageType.OTHER
    claimed_dates = _as_dates(data.get("claimed_date"))
    answers = PillarAnswers(
        provenance=provenance,
        source=_as_text(data.get("source")),
        date=_as_dates(data.get("date")),
        location=_as_locations(data.get("location")),
        motivation=_as_text(data.get("motivation")),
    )
    claimed = ClaimedContext(
        claimed_date=claimed_dates[0] if claimed_dates else None,
        claimed_location=_as_text(data.get("claimed_location")),
        claimant=_as_text(data.get("claimant")),
        claimant_motivation=_as_text(data.get("claimant_motivation")),
    )
    return AnnotationResult(answers=answers, claimed=claimed, image_type=image_type, ok=True)


REPAIR_SUFFIX = "\n\nYour previous reply was not valid JSON. Reply again with only a valid JSON object."


def extract_annotations(article: FcArticle, backend) -> AnnotationResult:
    """Ask the annotation backend for the five answers as JSON.

    One repair retry is attempted when the reply does not parse.
    """
    prompt = annotation_prompt(article)
    for attempt, text in enumerate((prompt, prompt + REPAIR_SUFFIX)):
        try:
            reply = backend.chat([{"role": "user", "text": text}], temperature=0.0)
        except BackendError as exc:
            return AnnotationResult(ok=False, error=f"annotation backend failed: {exc}")
        try:
            data = json.loads(_strip_fences(reply.text))
            if not isinstance(data, dict):
                raise ValueError("annotation reply is not a JSON object")
            return parse_annotation_json(data)
        except (json.JSONDecodeError, ValueError, ValidationError) as exc:
            log.info("annotation parse attempt %d for %s failed: %s", attempt + 1, article.url, exc)
            error = str(exc)
    return AnnotationResult(ok=False, error=f"annotation reply unparseable: {error}")


# --- verification strategy tags -----------------------------------------


def _strategy_rules() -> List[dict]:
    raw = _resource_path("strategy_keywords.json").read_text(encoding="utf-8")
    return json.loads(raw)


def detect_verification_strategy(body_text: str) -> Tuple[Set[VerificationStrategy], Set[str]]:
    """Keyword tags for the verification strategies and tools an article mentions."""
    lowered = (body_text or "").lower()
    strategies: Set[VerificationStrategy] = set()
    tools: Set[str] = set()
    for rule in _strategy_rules():
        if rule["phrase"] in lowered:
            strategies.add(VerificationStrategy(rule["strategy"]))
            if rule.get("tool"):
                tools.add(rule["tool"])
    return strategies, tools


# --- end-to-end build ----------------------------------------------------


@dataclass
class BuildReport:
    input_articles: int = 0
    kept: int = 0
    drops: Dict[str, int] = field(default_factory=dict)

    def drop(self, reason: str):
        self.drops[reason] = self.drops.get(reason, 0) + 1

    def consistent(self) -> bool:
        return self.input_articles == self.kept + sum(self.drops.values())

    def to_dict(self) -> dict:
        return {"input_articles": self.input_articles, "kept": self.kept,
                "drops": dict(sorted(self.drops.items()))}


def _normalize_title(title: str) -> str:
    return re.sub(r"\W+", " ", (title or "").lower()).strip()


def build_corpus(cfg: HarvestConfig, backends, out_path, *,
                 split_spec: SplitSpec = None) -> BuildReport:
    """harvest -> scrape -> language filter -> cross-domain dedup ->
    annotation -> split assignment; writes the corpus and returns the
    per-stage attrition report."""
    urls = collect_archive_urls(cfg, backends.archive)
    report = BuildReport(input_articles=len(urls))
    articles: List[FcArticle] = []
    for url in urls:
        article = scrape_fc_article(url, backends.fetcher)
        if not article.fetch_ok:
            report.drop("fetch_failed")
        elif not article.image_url:
            report.drop("no_image")
        elif article.publication_date is None or article.publication_date.granularity != "day":
            report.drop("no_publication_date")
        elif not is_english((article.title or "") + " " + article.body_text):
            report.drop("language")
        else:
            articles.append(article)

    seen_keys = set()
    unique: List[FcArticle] = []
    for article in articles:
        key = (_normalize_title(article.title), article.image_url)
        if key in seen_keys:
            log.info("dropping %s: duplicate of an earlier article (flag for manual review)", article.url)
            report.drop("duplicate")
            continue
        seen_keys.add(key)
        unique.append(article)

    cases: List[ImageCase] = []
    for article in unique:
        annotation = extract_annotations(article, backends.chat)
        if not annotation.ok:
            report.drop("annotation_failed")
            continue
        if annotation.all_absent:
            report.drop("no_answers")
            continue
        strategies, _tools = detect_verification_strategy(article.body_text)
        cases.append(ImageCase(
            id="fc-" + sha256_hex(article.url)[:12],
            image_ref=article.image_url,
            fc_article_url=article.url,
            fc_publication_date=article.publication_date,
            claimed=annotation.claimed,
            gold=annotation.answers,
            image_type=annotation.image_type,
            verification_strategies=frozenset(strategies),
        ))
    report.kept = len(cases)
    cases = assign_splits(cases, split_spec or SplitSpec.default())
    save_corpus(cases, out_path)
    return report
