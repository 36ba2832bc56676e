"""Fixture-driven mock backends.

Every backend the pipeline talks to has a deterministic in-process mock
reading rule files from a fixtures directory, so full runs and the entire
test suite work offline. The mock HTTP server in ``mockserver`` wraps these
same objects behind the wire contracts.
"""

from __future__ import annotations

import json
import logging
import math
from pathlib import Path
from typing import List, Optional, Sequence

from .backends import Backends, ChatResult, b64decode
from .fetch import FetchResult
from .metrics.text import tokenize
from .types import MatchKind, RisResult
from .util import cosine, sha256_hex

log = logging.getLogger(__name__)

DEFAULT_DIM = 16


def hash_vector(seed: bytes, dim: int = DEFAULT_DIM) -> List[float]:
    """Deterministic pseudo-embedding derived from content bytes."""
    values: List[float] = []
    counter = 0
    while len(values) < dim:
        digest = bytes.fromhex(sha256_hex(seed + counter.to_bytes(4, "big")))
        for i in range(0, len(digest) - 3, 4):
            if len(values) >= dim:
                break
            word = int.from_bytes(digest[i:i + 4], "big")
            values.append(word / 2**31 - 1.0)
        counter += 1
    norm = math.sqrt(sum(v * v for v in values)) or 1.0
    return [v / norm for v in values]


def _normalize(vector: Sequence[float]) -> List[float]:
    norm = math.sqrt(sum(v * v for v in vector)) or 1.0
    return [float(v) / norm for v in vector]


def _load_json(path: Path):
    return json.loads(path.read_text(encoding="utf-8"))


class MockEmbedBackend:
    """Rule-based embeddings with a content-hash fallback."""

    def __init__(self, rules_path: Optional[Path] = None):
        spec = _load_json(rules_path) if rules_path and Path(rules_path).exists() else {}
        self.dim = int(spec.get("dim", DEFAULT_DIM))
        self.rules = spec.get("rules", [])

    def embed(self, kind: str, content) -> List[float]:
        if kind == "image":
            digest = sha256_hex(content)
            for rule in self.rules:
                if rule.get("kind") == "image_sha256" and rule["match"] == digest:
                    return _normalize(rule["vector"])
            return hash_vector(content, self.dim)
        if kind == "text":
            for rule in self.rules:
                if rule.get("kind") == "text_exact" and rule["match"] == content:
                    return _normalize(rule["vector"])
                if rule.get("kind") == "text_contains" and rule["match"] in content:
                    return _normalize(rule["vector"])
            return hash_vector(content.encode("utf-8"), self.dim)
        raise ValueError(f"unknown embedding kind {kind!r}")


class MockChatBackend:
    """Canned answers selected by prompt substrings and/or image hashes."""

    def __init__(self, rules_path: Optional[Path] = None):
        spec = _load_json(rules_path) if rules_path and Path(rules_path).exists() else {}
        self.rules = spec.get("rules", [])
        self.default = spec.get("default", "Not enough information.")
        self.calls = 0

    def chat(self, messages: Sequence[dict], *, temperature: float = 0.2,
             max_tokens: int = 256, seed: Optional[int] = None) -> ChatResult:
        self.calls += 1
        prompt = "\n".join(m.get("text", "") for m in messages)
        image_hashes = {
            sha256_hex(b64decode(img))
            for m in messages
            for img in m.get("images") or ()
        }
        for rule in self.rules:
            needles = rule.get("contains", [])
            if not all(needle in prompt for needle in needles):
                continue
            wanted = rule.get("image_sha256")
            if wanted is not None and wanted not in image_hashes:
                continue
            return ChatResult(text=rule.get("answer", ""), refused=bool(rule.get("refused")))
        return ChatResult(text=self.default, refused=False)


class MockClassifierBackend:
    def __init__(self, map_path: Optional[Path] = None):
        spec = _load_json(map_path) if map_path and Path(map_path).exists() else {}
        self.by_sha256 = spec.get("by_sha256", {})
        self.default = spec.get("default", {"label": "non_manipulated", "score": 0.5})

    def classify(self, image: bytes):
        entry = self.by_sha256.get(sha256_hex(image), self.default)
        return entry["label"], float(entry["score"])


class MockScoreBackend:
    """Greedy bidirectional max-cosine token F1 over hash embeddings.

    Identical strings score exactly 1.0; disjoint token sets land near 0.
    """

    def __init__(self, dim: int = DEFAULT_DIM):
        self.dim = dim

    def _token_vectors(self, text: str) -> List[List[float]]:
        return [hash_vector(t.encode("utf-8"), self.dim) for t in tokenize(text)]

    def score(self, candidates: Sequence[str], references: Sequence[str]) -> List[float]:
        out = []
        for cand, ref in zip(candidates, references):
            cv, rv = self._token_vectors(cand), self._token_vectors(ref)
            if not cv or not rv:
                out.append(0.0)
                continue
            precision = sum(max(cosine(c, r) for r in rv) for c in cv) / len(cv)
            recall = sum(max(cosine(r, c) for c in cv) for r in rv) / len(rv)
            precision = min(1.0, max(0.0, precision))
            recall = min(1.0, max(0.0, recall))
            f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
            out.append(f1)
        return out


class MockRisProvider:
    """Reverse-image-search results read from a fixture map."""

    def __init__(self, map_path: Optional[Path] = None):
        spec = _load_json(map_path) if map_path and Path(map_path).exists() else {}
        self.by_key = spec.get("by_key", {})
        self.by_sha256 = spec.get("by_sha256", {})

    def _lookup(self, image_ref: str, image_bytes: Optional[bytes]):
        stem = Path(image_ref).stem if image_ref else ""
        if stem in self.by_key:
            return self.by_key[stem]
        if image_ref in self.by_key:
            return self.by_key[image_ref]
        if image_bytes is not None:
            return self.by_sha256.get(sha256_hex(image_bytes), [])
        return []

    def search(self, image_ref: str, image_bytes: Optional[bytes], max_results: int) -> List[RisResult]:
        entries = self._lookup(image_ref, image_bytes)
        return [
            RisResult(
                page_url=e["page_url"],
                match_kind=MatchKind(e.get("match_kind", "full")),
                matched_image_urls=tuple(e.get("matched_image_urls") or ()),
            )
            for e in entries[:max_results]
        ]


class MockArchiveBackend:
    def __init__(self, index_path: Optional[Path] = None):
        spec = _load_json(index_path) if index_path and Path(index_path).exists() else {}
        self.domains = spec.get("domains", {})

    def collect(self, domain: str, from_year: int, to_year: int) -> List[str]:
        entries = self.domains.get(domain)
        if entries is None:
            raise KeyError(f"no archive fixture for domain {domain!r}")
        return [e["url"] for e in entries if from_year <= e.get("year", from_year) <= to_year]


class FixtureFetcher:
    """Serves page bodies from local fixture files keyed by URL."""

    def __init__(self, map_path: Path, base: Optional[Path] = None):
        # page files are addressed relative to the fixtures root
        self.base = Path(base) if base else Path(map_path).parent.parent
        spec = _load_json(Path(map_path))
        self.pages = spec.get("pages", {})

    def fetch(self, url: str) -> FetchResult:
        entry = self.pages.get(url)
        if entry is None:
            return FetchResult(url=url, status=404)
        status = int(entry.get("status", 200))
        content = b""
        if entry.get("file"):
            content = (self.base / entry["file"]).read_bytes()
        return FetchResult(url=url, status=status, content=content)


def load_mock_backends(fixtures_dir) -> Backends:
    """Wire up every mock from the conventional fixture layout."""
    root = Path(fixtures_dir)
    mock = root / "mock"
    return Backends(
        chat=MockChatBackend(mock / "chat_rules.json"),
        embed=MockEmbedBackend(mock / "embed_rules.json"),
        classifier=MockClassifierBackend(mock / "classify_map.json"),
        scorer=MockScoreBackend(),
        ris=MockRisProvider(mock / "ris_map.json"),
        archive=MockArchiveBackend(mock / "archive_index.json"),
        fetcher=FixtureFetcher(mock / "pages_map.json"),
    )
