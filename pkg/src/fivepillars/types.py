"""Domain data model: cases, answers, evidence, and their JSON forms.

All values are immutable after construction and validate their invariants
in ``__post_init__``, so a corpus that loads is a corpus that is usable.
The JSON field names below are the on-disk corpus schema (one object per
line, dates as ``{"year": int, "month": int|null, "day": int|null}``).
"""

from __future__ import annotations

import calendar
import datetime
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional
from urllib.parse import urlparse


class ValidationError(ValueError):
    """A domain value violates one of its invariants."""


class Provenance(str, Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"


class ImageType(str, Enum):
    OUT_OF_CONTEXT = "out_of_context"
    MANIPULATED = "manipulated"
    FAKE = "fake"
    TRUE = "true"
    OTHER = "other"


class VerificationStrategy(str, Enum):
    REVERSE_IMAGE_SEARCH = "reverse_image_search"
    KEYWORD_SEARCH = "keyword_search"
    GEOLOCATION = "geolocation"
    OTHER = "other"


class Split(str, Enum):
    TRAIN = "train"
    VAL = "val"
    TEST = "test"


class ScrapeStatus(str, Enum):
    OK = "ok"
    FETCH_ERROR = "fetch_error"
    EXTRACT_ERROR = "extract_error"
    BLOCKED = "blocked"


class Pillar(str, Enum):
    PROVENANCE = "provenance"
    SOURCE = "source"
    DATE = "date"
    LOCATION = "location"
    MOTIVATION = "motivation"


GENERATED_PILLARS = (Pillar.SOURCE, Pillar.DATE, Pillar.LOCATION, Pillar.MOTIVATION)

MIN_YEAR = 1000
MAX_YEAR = 2100


@dataclass(frozen=True, order=False)
class DateValue:
    """A timestamp at year, month, or day granularity."""

    year: int
    month: Optional[int] = None
    day: Optional[int] = None

    def __post_init__(self):
        if not isinstance(self.year, int) or not (MIN_YEAR <= self.year <= MAX_YEAR):
            raise ValidationError(f"year out of range [{MIN_YEAR}, {MAX_YEAR}]: {self.year!r}")
        if self.day is not None and self.month is None:
            raise ValidationError("day requires month")
        if self.month is not None and not (1 <= self.month <= 12):
            raise ValidationError(f"month out of range: {self.month!r}")
        if self.day is not None:
            last = calendar.monthrange(self.year, self.month)[1]
            if not (1 <= self.day <= last):
                raise ValidationError(f"day {self.day!r} invalid for {self.year}-{self.month}")

    @property
    def granularity(self) -> str:
        if self.day is not None:
            return "day"
        if self.month is not None:
            return "month"
        return "year"

    def sort_key(self) -> tuple:
        # Missing components are ordered as mid-period (July / 15th).
        return (self.year, self.month if self.month is not None else 7,
                self.day if self.day is not None else 15)

    def as_date(self) -> datetime.date:
        """Calendar date with mid-period imputation for missing components."""
        return datetime.date(self.year, self.month or 7, self.day or 15)

    def __str__(self) -> str:
        if self.day is not None:
            return f"{self.year:04d}-{self.month:02d}-{self.day:02d}"
        if self.month is not None:
            return f"{self.year:04d}-{self.month:02d}"
        return f"{self.year:04d}"

    def to_dict(self) -> dict:
        return {"year": self.year, "month": self.month, "day": self.day}

    @classmethod
    def from_dict(cls, d: dict) -> "DateValue":
        if not isinstance(d, dict) or "year" not in d:
            raise ValidationError(f"not a date object: {d!r}")
        return cls(d["year"], d.get("month"), d.get("day"))


@dataclass(frozen=True)
class LocationValue:
    """A place answer: surface text plus optional coordinates / gazetteer link."""

    text: str
    coords: Optional[tuple] = None  # (lat, lon) degrees
    gazetteer_id: Optional[str] = None

    def __post_init__(self):
        if not self.text or not self.text.strip():
            raise ValidationError("location text must be non-empty")
        if self.coords is not None:
            lat, lon = self.coords
            if not (math.isfinite(lat) and math.isfinite(lon)):
                raise ValidationError("coordinates must be finite")
            if not (-90.0 <= lat <= 90.0 and -180.0 <= lon <= 180.0):
                raise ValidationError(f"coordinates out of range: {self.coords!r}")
            object.__setattr__(self, "coords", (float(lat), float(lon)))

    def to_dict(self) -> dict:
        return {
            "text": self.text,
            "coords": {"lat": self.coords[0], "lon": self.coords[1]} if self.coords else None,
            "gazetteer_id": self.gazetteer_id,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "LocationValue":
        if isinstance(d, str):
            return cls(text=d)
        coords = d.get("coords")
        if coords is not None:
            coords = (coords["lat"], coords["lon"])
        return cls(text=d["text"], coords=coords, gazetteer_id=d.get("gazetteer_id"))


# Answers of "Not enough information" are stored as the absent state.
ABSENT_SENTINEL = "Not enough information"


def _clean_optional_text(value, name: str) -> Optional[str]:
    if value is None:
        return None
    if not isinstance(value, str):
        raise ValidationError(f"{name} must be a string or null")
    stripped = value.strip()
    if not stripped:
        raise ValidationError(f"{name} must not be an empty string; use null for absent")
    if stripped.strip(".").strip().lower() == ABSENT_SENTINEL.lower():
        return None
    return stripped


@dataclass(frozen=True)
class PillarAnswers:
    """The five answers for one image. Missing answers are None / empty lists."""

    provenance: Provenance = Provenance.UNKNOWN
    source: Optional[str] = None
    date: tuple = ()
    location: tuple = ()
    motivation: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "provenance", Provenance(self.provenance))
        object.__setattr__(self, "source", _clean_optional_text(self.source, "source"))
        object.__setattr__(self, "motivation", _clean_optional_text(self.motivation, "motivation"))
        object.__setattr__(self, "date", tuple(self.date))
        object.__setattr__(self, "location", tuple(self.location))
        for d in self.date:
            if not isinstance(d, DateValue):
                raise ValidationError(f"date entries must be DateValue, got {d!r}")
        for loc in self.location:
            if not isinstance(loc, LocationValue):
                raise ValidationError(f"location entries must be LocationValue, got {loc!r}")

    def to_dict(self) -> dict:
        return {
            "provenance": self.provenance.value,
            "source": self.source,
            "date": [d.to_dict() for d in self.date],
            "location": [loc.to_dict() for loc in self.location],
            "motivation": self.motivation,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PillarAnswers":
        return cls(
            provenance=Provenance(d.get("provenance", "Unknown")),
            source=d.get("source"),
            date=tuple(DateValue.from_dict(x) for x in d.get("date") or ()),
            location=tuple(LocationValue.from_dict(x) for x in d.get("location") or ()),
            motivation=d.get("motivation"),
        )


@dataclass(frozen=True)
class ClaimedContext:
    """What the debunked post claimed about the image."""

    claimed_date: Optional[DateValue] = None
    claimed_location: Optional[str] = None
    claimant: Optional[str] = None
    claimant_motivation: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "claimed_date": self.claimed_date.to_dict() if self.claimed_date else None,
            "claimed_location": self.claimed_location,
            "claimant": self.claimant,
            "claimant_motivation": self.claimant_motivation,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ClaimedContext":
        d = d or {}
        cd = d.get("claimed_date")
        return cls(
            claimed_date=DateValue.from_dict(cd) if cd else None,
            claimed_location=d.get("claimed_location"),
            claimant=d.get("claimant"),
            claimant_motivation=d.get("claimant_motivation"),
        )


@dataclass(frozen=True)
class ImageCase:
    """One fact-checked image with its gold meta-context annotations."""

    id: str
    image_ref: str
    fc_article_url: str
    fc_publication_date: DateValue
    claimed: ClaimedContext = field(default_factory=ClaimedContext)
    gold: PillarAnswers = field(default_factory=PillarAnswers)
    image_type: ImageType = ImageType.OTHER
    verification_strategies: frozenset = frozenset()
    split: Optional[Split] = None
    original_image_ref: Optional[str] = None  # gold-known unaltered image, when available

    def __post_init__(self):
        if not self.id:
            raise ValidationError("case id must be non-empty")
        if self.fc_publication_date.granularity != "day":
            raise ValidationError(
                f"fc_publication_date must have day granularity: {self.fc_publication_date}"
            )
        object.__setattr__(self, "image_type", ImageType(self.image_type))
        object.__setattr__(
            self,
            "verification_strategies",
            frozenset(VerificationStrategy(s) for s in self.verification_strategies),
        )
        if self.split is not None:
            object.__setattr__(self, "split", Split(self.split))

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "image_ref": self.image_ref,
            "fc_article_url": self.fc_article_url,
            "fc_publication_date": self.fc_publication_date.to_dict(),
            "claimed": self.claimed.to_dict(),
            "gold": self.gold.to_dict(),
            "image_type": self.image_type.value,
            "verification_strategies": sorted(s.value for s in self.verification_strategies),
            "split": self.split.value if self.split else None,
            "original_image_ref": self.original_image_ref,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ImageCase":
        return cls(
            id=d["id"],
            image_ref=d["image_ref"],
            fc_article_url=d["fc_article_url"],
            fc_publication_date=DateValue.from_dict(d["fc_publication_date"]),
            claimed=ClaimedContext.from_dict(d.get("claimed")),
            gold=PillarAnswers.from_dict(d.get("gold") or {}),
            image_type=ImageType(d.get("image_type", "other")),
            verification_strategies=frozenset(d.get("verification_strategies") or ()),
            split=Split(d["split"]) if d.get("split") else None,
            original_image_ref=d.get("original_image_ref"),
        )


def hostname_of(url: str) -> str:
    host = urlparse(url).hostname or ""
    return host.lower()


@dataclass(frozen=True)
class EvidenceItem:
    """One scraped web page that used a (partially) matching image."""

    url: str
    retrieval_rank: int
    hostname: str = ""
    title: Optional[str] = None
    description: Optional[str] = None
    author: Optional[str] = None
    sitename: Optional[str] = None
    publication_date: Optional[DateValue] = None
    body_text: str = ""
    image_captions: tuple = ()
    image_urls: tuple = ()
    scrape_status: ScrapeStatus = ScrapeStatus.OK

    def __post_init__(self):
        parsed = urlparse(self.url)
        if not parsed.scheme or not parsed.netloc:
            raise ValidationError(f"url not well-formed: {self.url!r}")
        if self.retrieval_rank < 0:
            raise ValidationError("retrieval_rank must be >= 0")
        if not self.hostname:
            object.__setattr__(self, "hostname", hostname_of(self.url))
        object.__setattr__(self, "image_captions", tuple(self.image_captions))
        object.__setattr__(self, "image_urls", tuple(self.image_urls))
        object.__setattr__(self, "scrape_status", ScrapeStatus(self.scrape_status))

    def to_dict(self) -> dict:
        return {
            "url": self.url,
            "hostname": self.hostname,
            "title": self.title,
            "description": self.description,
            "author": self.author,
            "sitename": self.sitename,
            "publication_date": self.publication_date.to_dict() if self.publication_date else None,
            "body_text": self.body_text,
            "image_captions": list(self.image_captions),
            "image_urls": list(self.image_urls),
            "retrieval_rank": self.retrieval_rank,
            "scrape_status": self.scrape_status.value,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "EvidenceItem":
        pd = d.get("publication_date")
        return cls(
            url=d["url"],
            retrieval_rank=d["retrieval_rank"],
            hostname=d.get("hostname", ""),
            title=d.get("title"),
            description=d.get("description"),
            author=d.get("author"),
            sitename=d.get("sitename"),
            publication_date=DateValue.from_dict(pd) if pd else None,
            body_text=d.get("body_text", ""),
            image_captions=tuple(d.get("image_captions") or ()),
            image_urls=tuple(d.get("image_urls") or ()),
            scrape_status=ScrapeStatus(d.get("scrape_status", "ok")),
        )


@dataclass(frozen=True)
class SplitSpec:
    """Sequential end dates of the time-based train/val/test partition."""

    train_end: DateValue
    val_end: DateValue
    test_end: DateValue

    def __post_init__(self):
        if not (self.train_end.sort_key() < self.val_end.sort_key() < self.test_end.sort_key()):
            raise ValidationError("split boundaries must be strictly increasing")

    @classmethod
    def default(cls) -> "SplitSpec":
        return cls(DateValue(2022, 5, 31), DateValue(2022, 9, 20), DateValue(2023, 12, 28))


@dataclass
class CaseResult:
    """A pipeline run's predictions for one case, plus how they were produced."""

    case_id: str
    predicted: PillarAnswers = field(default_factory=PillarAnswers)
    raw_answers: dict = field(default_factory=dict)  # pillar -> raw model output (or None)
    evidence_used: list = field(default_factory=list)  # evidence URLs, rank order
    demonstrations_used: list = field(default_factory=list)  # train case ids
    prompts: dict = field(default_factory=dict)  # pillar -> prompt text
    errors: list = field(default_factory=list)  # (stage, message)
    stages: list = field(default_factory=list)  # ordered trace of stage outcomes

    def to_dict(self) -> dict:
        return {
            "case_id": self.case_id,
            "predicted": self.predicted.to_dict(),
            "raw_answers": dict(self.raw_answers),
            "evidence_used": list(self.evidence_used),
            "demonstrations_used": list(self.demonstrations_used),
            "prompts": dict(self.prompts),
            "errors": [list(e) for e in self.errors],
            "stages": list(self.stages),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CaseResult":
        return cls(
            case_id=d["case_id"],
            predicted=PillarAnswers.from_dict(d.get("predicted") or {}),
            raw_answers=d.get("raw_answers") or {},
            evidence_used=list(d.get("evidence_used") or ()),
            demonstrations_used=list(d.get("demonstrations_used") or ()),
            prompts=d.get("prompts") or {},
            errors=[tuple(e) for e in d.get("errors") or ()],
            stages=list(d.get("stages") or ()),
        )


class MatchKind(str, Enum):
    FULL = "full"
    PARTIAL = "partial"


@dataclass(frozen=True)
class RisResult:
    """One page returned by a reverse-image-search provider."""

    page_url: str
    match_kind: MatchKind = MatchKind.FULL
    matched_image_urls: tuple = ()

    def __post_init__(self):
        parsed = urlparse(self.page_url)
        if not parsed.scheme or not parsed.netloc:
            raise ValidationError(f"page_url not well-formed: {self.page_url!r}")
        object.__setattr__(self, "match_kind", MatchKind(self.match_kind))
        object.__setattr__(self, "matched_image_urls", tuple(self.matched_image_urls))
