"""HTTP clients for the model-serving and retrieval backends.

All backends speak JSON over HTTP. The wire schemas live in ``schemas/``
at the repository root and are shared with any server implementation; the
in-repo mock server (``fivepillars.mockserver``) serves the same contracts
from fixture files.
"""

from __future__ import annotations

import base64
import logging
import time
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import requests

from .types import MatchKind, RisResult

log = logging.getLogger(__name__)

DEFAULT_TIMEOUT = 30.0
DEFAULT_RETRIES = 2


class BackendError(Exception):
    """A backend call failed after retries."""

    def __init__(self, message: str, retryable: bool = True):
        super().__init__(message)
        self.retryable = retryable


@dataclass(frozen=True)
class ChatResult:
    text: str
    refused: bool = False


def b64encode(data: bytes) -> str:
    return base64.b64encode(data).decode("ascii")


def b64decode(data: str) -> bytes:
    return base64.b64decode(data.encode("ascii"))


class _HttpClient:
    def __init__(self, base_url: str, *, timeout: float = DEFAULT_TIMEOUT,
                 retries: int = DEFAULT_RETRIES, backoff: float = 1.0,
                 session: Optional[requests.Session] = None):
        self.base_url = base_url.rstrip("/")
        self.timeout = timeout
        self.retries = retries
        self.backoff = backoff
        self.session = session or requests.Session()

    def post_json(self, path: str, payload: dict) -> dict:
        url = self.base_url + path
        last_error = None
        for attempt in range(self.retries + 1):
            try:
                response = self.session.post(url, json=payload, timeout=self.timeout)
                if response.status_code >= 500:
                    raise requests.RequestException(f"server error {response.status_code}")
                if response.status_code >= 400:
                    raise BackendError(
                        f"{url} rejected the request: {response.status_code} {response.text[:200]}",
                        retryable=False,
                    )
                return response.json()
            except BackendError:
                raise
            except (requests.RequestException, ValueError) as exc:
                last_error = exc
                if attempt < self.retries:
                    delay = self.backoff * (2 ** attempt)
                    log.warning("%s failed (%s); retrying in %.1fs", url, exc, delay)
                    time.sleep(delay)
        raise BackendError(f"{url} unreachable after {self.retries + 1} attempts: {last_error}")


class HttpChatBackend(_HttpClient):
    def chat(self, messages: Sequence[dict], *, temperature: float = 0.2,
             max_tokens: int = 256, seed: Optional[int] = None) -> ChatResult:
        payload = {"messages": list(messages), "temperature": temperature, "max_tokens": max_tokens}
        if seed is not None:
            payload["seed"] = seed
        data = self.post_json("/v1/chat", payload)
        return ChatResult(text=data.get("text", ""), refused=bool(data.get("refused", False)))


class HttpEmbedBackend(_HttpClient):
    def embed(self, kind: str, content) -> List[float]:
        if kind not in ("text", "image"):
            raise ValueError(f"unknown embedding kind {kind!r}")
        wire = b64encode(content) if kind == "image" else content
        data = self.post_json("/v1/embed", {"kind": kind, "content": wire})
        vector = [float(x) for x in data["vector"]]
        if len(vector) != data.get("dim", len(vector)):
            raise BackendError("embedding dim does not match vector length", retryable=False)
        return vector


class HttpClassifierBackend(_HttpClient):
    def classify(self, image: bytes):
        data = self.post_json("/v1/classify", {"image": b64encode(image)})
        return data["label"], float(data.get("score", 0.0))


class HttpScoreBackend(_HttpClient):
    def score(self, candidates: Sequence[str], references: Sequence[str]) -> List[float]:
        data = self.post_json(
            "/v1/score", {"candidates": list(candidates), "references": list(references)}
        )
        return [float(s) for s in data["scores"]]


class HttpRisProvider(_HttpClient):
    """Reverse-image-search provider speaking the wire contract."""

    def search(self, image_ref: str, image_bytes: Optional[bytes], max_results: int) -> List[RisResult]:
        if image_ref.startswith(("http://", "https://")):
            wire = image_ref
        elif image_bytes is not None:
            wire = b64encode(image_bytes)
        else:
            raise ValueError("local image refs require image bytes")
        data = self.post_json("/v1/ris", {"image": wire, "max_results": max_results})
        return [
            RisResult(
                page_url=r["page_url"],
                match_kind=MatchKind(r.get("match_kind", "full")),
                matched_image_urls=tuple(r.get("matched_image_urls") or ()),
            )
            for r in data.get("results", ())
        ]


class HttpArchiveBackend(_HttpClient):
    def collect(self, domain: str, from_year: int, to_year: int) -> List[str]:
        data = self.post_json(
            "/v1/archive", {"domain": domain, "from_year": from_year, "to_year": to_year}
        )
        return list(data.get("urls", ()))


class CdxArchiveBackend:
    """Adapter for a CDX-style web archive index API."""

    def __init__(self, endpoint: str = "https://web.archive.org/cdx/search/cdx",
                 *, timeout: float = 60.0, session: Optional[requests.Session] = None):
        self.endpoint = endpoint
        self.timeout = timeout
        self.session = session or requests.Session()

    def collect(self, domain: str, from_year: int, to_year: int) -> List[str]:
        params = {
            "url": f"{domain}/*",
            "from": str(from_year),
            "to": str(to_year),
            "output": "json",
            "fl": "original",
            "collapse": "urlkey",
        }
        try:
            response = self.session.get(self.endpoint, params=params, timeout=self.timeout)
            response.raise_for_status()
            rows = response.json()
        except (requests.RequestException, ValueError) as exc:
            raise BackendError(f"archive index query failed for {domain}: {exc}") from exc
        return [row[0] for row in rows[1:]] if rows else []


@dataclass
class Backends:
    """Bundle of backend clients a pipeline run needs."""

    chat: object = None
    embed: object = None
    classifier: object = None
    scorer: object = None
    ris: object = None
    archive: object = None
    fetcher: object = None

    def require(self, *names: str) -> None:
        missing = [n for n in names if getattr(self, n) is None]
        if missing:
            raise BackendError(f"missing backends: {', '.join(missing)}", retryable=False)


@dataclass(frozen=True)
class BackendEndpoints:
    """Base URLs for the HTTP backends; one service may host several."""

    chat_url: Optional[str] = None
    embed_url: Optional[str] = None
    classify_url: Optional[str] = None
    score_url: Optional[str] = None
    ris_url: Optional[str] = None
    archive_url: Optional[str] = None

    def connect(self, **client_kwargs) -> Backends:
        return Backends(
            chat=HttpChatBackend(self.chat_url, **client_kwargs) if self.chat_url else None,
            embed=HttpEmbedBackend(self.embed_url, **client_kwargs) if self.embed_url else None,
            classifier=HttpClassifierBackend(self.classify_url, **client_kwargs) if self.classify_url else None,
            scorer=HttpScoreBackend(self.score_url, **client_kwargs) if self.score_url else None,
            ris=HttpRisProvider(self.ris_url, **client_kwargs) if self.ris_url else None,
            archive=HttpArchiveBackend(self.archive_url, **client_kwargs) if self.archive_url else None,
        )
