"""Content-addressed on-disk cache for fetched pages, images, and results.

Entries are keyed by the SHA-256 of a normalized key string and carry their
own payload checksum, so corrupt entries are indistinguishable from misses
and replays are byte-identical. Writes are write-then-rename, which keeps
concurrent writers safe on POSIX filesystems.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Optional
from urllib.parse import urlsplit, urlunsplit

from .util import atomic_write_bytes, sha256_hex

log = logging.getLogger(__name__)

_CHECKSUM_LEN = 64  # hex sha256 prefix stored ahead of the payload


def normalize_key(key: str) -> str:
    """Lowercase scheme/host and drop fragments for URL keys."""
    key = key.strip()
    parts = urlsplit(key)
    if parts.scheme and parts.netloc:
        return urlunsplit((parts.scheme.lower(), parts.netloc.lower(), parts.path, parts.query, ""))
    return key


class BlobCache:
    def __init__(self, cache_dir):
        self.root = Path(cache_dir)
        self.root.mkdir(parents=True, exist_ok=True)

    def _path(self, key: str) -> Path:
        digest = sha256_hex(normalize_key(key))
        return self.root / digest[:2] / f"{digest}.bin"

    def get(self, key: str) -> Optional[bytes]:
        path = self._path(key)
        try:
            raw = path.read_bytes()
        except OSError:
            return None
        if len(raw) < _CHECKSUM_LEN:
            log.warning("cache entry for %r is truncated; treating as miss", key)
            return None
        checksum, payload = raw[:_CHECKSUM_LEN].decode("ascii", "replace"), raw[_CHECKSUM_LEN:]
        if sha256_hex(payload) != checksum:
            log.warning("cache entry for %r is corrupt; treating as miss", key)
            try:
                path.unlink()
            except OSError:
                pass
            return None
        return payload

    def put(self, key: str, data: bytes) -> None:
        path = self._path(key)
        if path.exists():
            log.debug("cache overwrite for %r", key)
        atomic_write_bytes(path, sha256_hex(data).encode("ascii") + data)

    def get_json(self, key: str):
        payload = self.get(key)
        if payload is None:
            return None
        try:
            return json.loads(payload.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError):
            log.warning("cache entry for %r is not valid JSON; treating as miss", key)
            return None

    def put_json(self, key: str, obj) -> None:
        self.put(key, json.dumps(obj, sort_keys=True, ensure_ascii=False).encode("utf-8"))
