"""Page fetching with crawler hygiene (timeouts, retries, politeness)."""

from __future__ import annotations

import logging
import threading
import time
from dataclasses import dataclass
from typing import Optional
from urllib.parse import urlparse

import requests

log = logging.getLogger(__name__)

USER_AGENT = "fivepillars-research-crawler/0.1 (+image context verification)"
FETCH_TIMEOUT = 15.0
FETCH_RETRIES = 2
PER_HOST_DELAY = 1.0


@dataclass(frozen=True)
class FetchResult:
    url: str
    status: int
    content: bytes = b""
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None and 200 <= self.status < 300


class HttpFetcher:
    """requests-based fetcher with a per-host politeness delay.

    A single lock serializes same-host requests, which also satisfies the
    per-host concurrency limit of 1 when scraping runs across threads.
    """

    def __init__(self, *, timeout: float = FETCH_TIMEOUT, retries: int = FETCH_RETRIES,
                 delay: float = PER_HOST_DELAY, user_agent: str = USER_AGENT,
                 session: Optional[requests.Session] = None):
        self.timeout = timeout
        self.retries = retries
        self.delay = delay
        self.session = session or requests.Session()
        self.session.headers["User-Agent"] = user_agent
        self._host_locks: dict = {}
        self._last_access: dict = {}
        self._registry_lock = threading.Lock()

    def _host_lock(self, host: str) -> threading.Lock:
        with self._registry_lock:
            if host not in self._host_locks:
                self._host_locks[host] = threading.Lock()
            return self._host_locks[host]

    def fetch(self, url: str) -> FetchResult:
        host = urlparse(url).hostname or ""
        lock = self._host_lock(host)
        with lock:
            wait = self.delay - (time.monotonic() - self._last_access.get(host, 0.0))
            if wait > 0:
                time.sleep(wait)
            result = self._fetch_with_retries(url)
            self._last_access[host] = time.monotonic()
            return result

    def _fetch_with_retries(self, url: str) -> FetchResult:
        last_error = None
        for attempt in range(self.retries + 1):
            try:
                response = self.session.get(url, timeout=self.timeout)
                return FetchResult(url=url, status=response.status_code, content=response.content)
            except requests.RequestException as exc:
                last_error = exc
                if attempt < self.retries:
                    time.sleep(0.5 * (2 ** attempt))
        return FetchResult(url=url, status=0, error=str(last_error))


class CachingFetcher:
    """Stores successful fetches in a BlobCache for offline replay."""

    def __init__(self, inner, cache):
        self.inner = inner
        self.cache = cache

    def fetch(self, url: str) -> FetchResult:
        key = f"page:{url}"
        cached = self.cache.get(key)
        if cached is not None:
            return FetchResult(url=url, status=200, content=cached)
        result = self.inner.fetch(url)
        if result.ok:
            self.cache.put(key, result.content)
        return result
