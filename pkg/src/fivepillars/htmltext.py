"""Main-content extraction from article HTML without external parsers.

Builds a lightweight element tree with the stdlib ``html.parser``, scopes
text collection to <article>/<main> when present, drops boilerplate
containers (nav, header, footer, aside, forms, scripts), and pulls the
usual metadata out of <meta> tags and JSON-LD blocks.
"""

from __future__ import annotations

import datetime
import json
import logging
from dataclasses import dataclass, field
from html.parser import HTMLParser
from typing import List, Optional, Tuple
from urllib.parse import urljoin

from .dates import normalize_date_text
from .types import DateValue, ValidationError

log = logging.getLogger(__name__)


class ExtractError(Exception):
    pass


_VOID_TAGS = {"img", "br", "meta", "link", "hr", "input", "source", "area", "base", "col", "embed", "track", "wbr"}
_BOILERPLATE = {"nav", "header", "footer", "aside", "form", "script", "style", "noscript", "iframe", "button", "svg"}
_TEXT_TAGS = {"p", "h1", "h2", "h3", "h4", "h5", "h6", "li", "blockquote", "figcaption"}


class _Node:
    __slots__ = ("tag", "attrs", "children", "parent")

    def __init__(self, tag: str, attrs=None, parent=None):
        self.tag = tag
        self.attrs = dict(attrs or {})
        self.children: list = []
        self.parent = parent

    def iter(self):
        yield self
        for child in self.children:
            if isinstance(child, _Node):
                yield from child.iter()

    def text(self) -> str:
        parts: List[str] = []
        for child in self.children:
            if isinstance(child, _Node):
                if child.tag in _BOILERPLATE:
                    continue
                parts.append(child.text())
            else:
                parts.append(child)
        return "".join(parts)

    def find_all(self, tag: str) -> list:
        return [n for n in self.iter() if n.tag == tag]


class _TreeBuilder(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.root = _Node("document")
        self.stack = [self.root]

    def handle_starttag(self, tag, attrs):
        node = _Node(tag, attrs, parent=self.stack[-1])
        self.stack[-1].children.append(node)
        if tag not in _VOID_TAGS:
            self.stack.append(node)

    def handle_startendtag(self, tag, attrs):
        self.stack[-1].children.append(_Node(tag, attrs, parent=self.stack[-1]))

    def handle_endtag(self, tag):
        for i in range(len(self.stack) - 1, 0, -1):
            if self.stack[i].tag == tag:
                del self.stack[i:]
                return
        # stray end tag: ignore

    def handle_data(self, data):
        if data:
            self.stack[-1].children.append(data)


@dataclass
class ArticleExtract:
    title: Optional[str] = None
    description: Optional[str] = None
    author: Optional[str] = None
    sitename: Optional[str] = None
    publication_date: Optional[DateValue] = None
    body_text: str = ""
    images: List[Tuple[str, str]] = field(default_factory=list)  # (url, caption)


def parse_meta_date(value: str) -> Optional[DateValue]:
    """Parse ISO-ish timestamps ('2022-01-15T10:30:00Z') or free text."""
    if not value:
        return None
    head = value.strip()[:10]
    try:
        d = datetime.date.fromisoformat(head)
        return DateValue(d.year, d.month, d.day)
    except (ValueError, ValidationError):
        pass
    if len(head) >= 7 and head[4:5] == "-":
        try:
            return DateValue(int(head[:4]), int(head[5:7]))
        except (ValueError, ValidationError):
            pass
    dates = normalize_date_text(value)
    return dates[0] if dates else None


def _meta_lookup(metas: dict, *keys: str) -> Optional[str]:
    for key in keys:
        value = metas.get(key)
        if value and value.strip():
            return value.strip()
    return None


def _clean(text: str) -> str:
    return " ".join(text.split())


def _jsonld_date(root: _Node) -> Optional[DateValue]:
    for script in root.find_all("script"):
        if (script.attrs.get("type") or "").lower() != "application/ld+json":
            continue
        try:
            data = json.loads(script.text())
        except (json.JSONDecodeError, ValueError):
            continue
        items = data if isinstance(data, list) else [data]
        for item in items:
            if isinstance(item, dict):
                nodes = item.get("@graph", [item]) if "@graph" in item else [item]
                for node in nodes:
                    if isinstance(node, dict) and node.get("datePublished"):
                        parsed = parse_meta_date(str(node["datePublished"]))
                        if parsed:
                            return parsed
    return None


def _inside_boilerplate(node: _Node) -> bool:
    current = node.parent
    while current is not None:
        if current.tag in _BOILERPLATE:
            return True
        current = current.parent
    return False


def extract_article(html: bytes, url: str = "") -> ArticleExtract:
    """Extract metadata, main text, and captioned images from a page.

    Raises ExtractError when the document yields neither a title nor any
    body text (e.g. binary data or an empty page).
    """
    if isinstance(html, bytes):
        try:
            text = html.decode("utf-8")
        except UnicodeDecodeError:
            text = html.decode("latin-1", errors="replace")
    else:
        text = html
    builder = _TreeBuilder()
    try:
        builder.feed(text)
        builder.close()
    except Exception as exc:  # html.parser rarely raises, but be safe
        raise ExtractError(f"HTML parse failed: {exc}") from exc
    root = builder.root

    metas = {}
    for meta in root.find_all("meta"):
        key = meta.attrs.get("property") or meta.attrs.get("name")
        if key and "content" in meta.attrs:
            metas.setdefault(key.strip().lower(), meta.attrs["content"])

    title = _meta_lookup(metas, "og:title", "twitter:title")
    if not title:
        titles = root.find_all("title")
        title = _clean(titles[0].text()) if titles else None

    date_raw = _meta_lookup(
        metas, "article:published_time", "og:article:published_time",
        "datepublished", "publish_date", "pubdate", "date",
    )
    publication_date = parse_meta_date(date_raw) if date_raw else None
    if publication_date is None:
        publication_date = _jsonld_date(root)
    if publication_date is None:
        for time_tag in root.find_all("time"):
            parsed = parse_meta_date(time_tag.attrs.get("datetime") or time_tag.text())
            if parsed:
                publication_date = parsed
                break

    scopes = root.find_all("article") or root.find_all("main") or [root]
    paragraphs: List[str] = []
    for scope in scopes:
        for node in scope.iter():
            if node.tag in _TEXT_TAGS and node.tag != "figcaption" and not _inside_boilerplate(node):
                chunk = _clean(node.text())
                if chunk:
                    paragraphs.append(chunk)

    images: List[Tuple[str, str]] = []
    seen = set()
    for scope in scopes:
        for node in scope.iter():
            if node.tag != "img" or _inside_boilerplate(node):
                continue
            src = node.attrs.get("src") or node.attrs.get("data-src")
            if not src or src.startswith("data:"):
                continue
            resolved = urljoin(url, src) if url else src
            if resolved in seen:
                continue
            seen.add(resolved)
            caption = ""
            parent = node.parent
            while parent is not None and parent.tag != "figure":
                parent = parent.parent
            if parent is not None:
                captions = parent.find_all("figcaption")
                if captions:
                    caption = _clean(captions[0].text())
            if not caption:
                caption = _clean(node.attrs.get("alt") or "")
            images.append((resolved, caption))

    extract = ArticleExtract(
        title=title,
        description=_meta_lookup(metas, "description", "og:description", "twitter:description"),
        author=_meta_lookup(metas, "author", "article:author", "og:article:author"),
        sitename=_meta_lookup(metas, "og:site_name", "application-name"),
        publication_date=publication_date,
        body_text="\n\n".join(paragraphs),
        images=images,
    )
    if not extract.title and not extract.body_text:
        raise ExtractError("document has no title and no extractable text")
    return extract
