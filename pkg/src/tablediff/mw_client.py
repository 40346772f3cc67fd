"""Rate-limited, cached client for the MediaWiki and Wikidata APIs.

Covers page HTML retrieval (``action=parse``), language-link enumeration
(``prop=langlinks``) and wiki-link -> QID resolution (``prop=pageprops``).
Every network result is written to a human-inspectable JSON cache so whole
analyses can replay offline.
"""

from __future__ import annotations

import json
import logging
import os
import re
import threading
import time
from dataclasses import dataclass
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path
from typing import Iterable, Optional
from urllib.parse import quote

import requests

from .errors import CacheMiss, NetworkError, PageMissing, ParseError
from .htmldom import parse_html

logger = logging.getLogger(__name__)

CACHE_DIR_ENV = "TABLEDIFF_CACHE_DIR"

# Wikimedia etiquette requires a descriptive User-Agent with a contact hint.
DEFAULT_USER_AGENT = (
    "tablediff/0.1 (cross-language Wikipedia table consistency analysis; "
    "mailto:tablediff-maintainers@example.org) python-requests"
)

QID_RE = re.compile(r"^Q[1-9][0-9]*$")

# pageprops accepts at most 50 titles per request for anonymous clients.
QID_BATCH_SIZE = 50


def is_valid_qid(value: str) -> bool:
    """True for Wikidata item ids like ``Q513`` (no leading zeros, no Q0)."""
    return bool(QID_RE.match(value))


def qid_numeric(value: str) -> int:
    if not is_valid_qid(value):
        raise ValueError(f"not a QID: {value!r}")
    return int(value[1:])


class CachePolicy(str, Enum):
    PREFER_CACHE = "prefer-cache"
    REFRESH = "refresh"
    OFFLINE_ONLY = "offline-only"


@dataclass(frozen=True)
class ArticleRef:
    """One (language edition, title) address of an article."""

    language: str
    title: str

    def __post_init__(self):
        if not self.language or self.language != self.language.lower():
            raise ValueError(f"language must be non-empty lowercase: {self.language!r}")
        if not self.title:
            raise ValueError("title must be non-empty")

    @property
    def key(self) -> str:
        return f"{self.language}:{self.title}"


@dataclass(frozen=True)
class PageDocument:
    """Rendered HTML of one page plus the revision metadata behind it."""

    article: ArticleRef
    html: str
    revision_id: int
    revision_timestamp: datetime
    fetched_at: datetime

    def __post_init__(self):
        if not self.html:
            raise ValueError("html must be non-empty")
        if self.revision_timestamp > self.fetched_at:
            raise ValueError("revision_timestamp is later than fetched_at")

    def to_dict(self) -> dict:
        return {
            "language": self.article.language,
            "title": self.article.title,
            "revision_id": self.revision_id,
            "revision_timestamp": _format_ts(self.revision_timestamp),
            "fetched_at": _format_ts(self.fetched_at),
            "html": self.html,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PageDocument":
        return cls(
            article=ArticleRef(data["language"], data["title"]),
            html=data["html"],
            revision_id=int(data["revision_id"]),
            revision_timestamp=_parse_ts(data["revision_timestamp"]),
            fetched_at=_parse_ts(data["fetched_at"]),
        )


def _format_ts(ts: datetime) -> str:
    return ts.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def _parse_ts(text: str) -> datetime:
    return datetime.strptime(text, "%Y-%m-%dT%H:%M:%SZ").replace(tzinfo=timezone.utc)


def utc_now() -> datetime:
    return datetime.now(timezone.utc).replace(microsecond=0)


class TokenBucket:
    """Simple thread-safe token bucket; acquire() blocks until a slot frees."""

    def __init__(self, rate: float, burst: Optional[int] = None):
        self.rate = float(rate)
        self.capacity = float(burst if burst is not None else max(1, int(rate)))
        self._tokens = self.capacity
        self._updated = time.monotonic()
        self._lock = threading.Lock()

    def acquire(self) -> None:
        while True:
            with self._lock:
                now = time.monotonic()
                self._tokens = min(self.capacity, self._tokens + (now - self._updated) * self.rate)
                self._updated = now
                if self._tokens >= 1.0:
                    self._tokens -= 1.0
                    return
                wait = (1.0 - self._tokens) / self.rate
            time.sleep(wait)


class HttpTransport:
    """requests-backed JSON GET with a single exponential-backoff retry.

    Retries once on HTTP 429 and 5xx; anything else raises NetworkError
    immediately. ``calls`` counts every request actually sent, which the
    tests use to assert cache hits never touch the network.
    """

    def __init__(self, user_agent: str = DEFAULT_USER_AGENT, timeout: float = 30.0,
                 retry_backoff: float = 1.0):
        self.session = requests.Session()
        self.session.headers["User-Agent"] = user_agent
        self.timeout = timeout
        self.retry_backoff = retry_backoff
        self.calls = 0

    def get_json(self, url: str, params: dict) -> dict:
        last_error = None
        for attempt in range(2):
            self.calls += 1
            try:
                resp = self.session.get(url, params=params, timeout=self.timeout)
            except requests.RequestException as exc:
                raise NetworkError(f"request failed: {url}: {exc}") from exc
            if resp.status_code == 200:
                try:
                    return resp.json()
                except ValueError as exc:
                    raise NetworkError(f"non-JSON response from {url}") from exc
            last_error = f"HTTP {resp.status_code} from {url}"
            if resp.status_code == 429 or resp.status_code >= 500:
                if attempt == 0:
                    time.sleep(self.retry_backoff * (2 ** attempt))
                    continue
            break
        raise NetworkError(last_error or f"request failed: {url}")


class MediaWikiClient:
    """Shared client; safe to use from multiple threads.

    Cache layout under ``cache_dir``:

    - ``pages/{lang}/{url-encoded title}.json`` -- serialized PageDocument,
      or a tombstone ``{"missing": true}`` for titles known to be absent.
    - ``qids.json`` -- append-merged ``{"lang:title": "Q..." | null}`` map.
    - ``langlinks.json`` -- ``{"lang:title": [[lang, title], ...]}`` so the
      language enumeration replays offline too.
    """

    def __init__(self, cache_dir: Optional[str | Path] = None, rate_limit: float = 5.0,
                 user_agent: str = DEFAULT_USER_AGENT, transport: Optional[HttpTransport] = None,
                 api_url_template: str = "https://{lang}.wikipedia.org/w/api.php"):
        cache_dir = cache_dir or os.environ.get(CACHE_DIR_ENV) or (Path.home() / ".cache" / "tablediff")
        self.cache_dir = Path(cache_dir)
        self.transport = transport if transport is not None else HttpTransport(user_agent=user_agent)
        self.bucket = TokenBucket(rate_limit)
        self.api_url_template = api_url_template
        self._qids: Optional[dict] = None
        self._langlinks: Optional[dict] = None
        self._cache_lock = threading.Lock()

    # -- cache plumbing ----------------------------------------------------

    def page_cache_path(self, language: str, title: str) -> Path:
        return self.cache_dir / "pages" / language / (quote(title, safe="") + ".json")

    def _qids_path(self) -> Path:
        return self.cache_dir / "qids.json"

    def _langlinks_path(self) -> Path:
        return self.cache_dir / "langlinks.json"

    @staticmethod
    def _write_atomic(path: Path, payload: dict) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(path.suffix + ".tmp")
        tmp.write_text(json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True),
                       encoding="utf-8")
        os.replace(tmp, path)

    def _load_map(self, path: Path) -> dict:
        if path.exists():
            return json.loads(path.read_text(encoding="utf-8"))
        return {}

    def _qid_map(self) -> dict:
        if self._qids is None:
            self._qids = self._load_map(self._qids_path())
        return self._qids

    def _langlink_map(self) -> dict:
        if self._langlinks is None:
            self._langlinks = self._load_map(self._langlinks_path())
        return self._langlinks

    def _merge_into(self, path: Path, loaded: dict, fresh: dict) -> None:
        with self._cache_lock:
            on_disk = self._load_map(path)
            on_disk.update(fresh)
            loaded.update(on_disk)
            self._write_atomic(path, loaded)

    # -- API plumbing ------------------------------------------------------

    def api_url(self, language: str) -> str:
        return self.api_url_template.format(lang=language)

    def _request(self, language: str, params: dict) -> dict:
        self.bucket.acquire()
        full = {"format": "json", "formatversion": "2"}
        full.update(params)
        return self.transport.get_json(self.api_url(language), full)

    @property
    def network_requests(self) -> int:
        return self.transport.calls

    # -- operations --------------------------------------------------------

    def fetch_page(self, article: ArticleRef,
                   cache_policy: CachePolicy = CachePolicy.PREFER_CACHE) -> PageDocument:
        """Fetch the rendered HTML of one page, honoring the cache policy."""
        policy = CachePolicy(cache_policy)
        path = self.page_cache_path(article.language, article.title)
        if policy is not CachePolicy.REFRESH and path.exists():
            data = json.loads(path.read_text(encoding="utf-8"))
            if data.get("missing"):
                raise PageMissing(article.language, article.title)
            return PageDocument.from_dict(data)
        if policy is CachePolicy.OFFLINE_ONLY:
            raise CacheMiss(article.language, article.title)

        data = self._request(article.language, {
            "action": "parse", "page": article.title,
            "prop": "text|revid", "redirects": "1",
        })
        if "error" in data:
            if data["error"].get("code") in ("missingtitle", "pagecannotexist", "invalidtitle"):
                self._write_atomic(path, {
                    "language": article.language, "title": article.title,
                    "missing": True, "checked_at": _format_ts(utc_now()),
                })
                raise PageMissing(article.language, article.title)
            raise NetworkError(f"API error: {data['error']}")
        parse = data["parse"]
        html = parse["text"] if isinstance(parse["text"], str) else parse["text"]["*"]
        revid = int(parse["revid"])

        rev = self._request(article.language, {
            "action": "query", "prop": "revisions", "revids": str(revid),
            "rvprop": "ids|timestamp",
        })
        pages = rev.get("query", {}).get("pages", [])
        if not pages or "revisions" not in pages[0]:
            raise NetworkError(f"no revision metadata for revid {revid}")
        ts = datetime.strptime(pages[0]["revisions"][0]["timestamp"],
                               "%Y-%m-%dT%H:%M:%SZ").replace(tzinfo=timezone.utc)

        doc = PageDocument(article=article, html=html, revision_id=revid,
                           revision_timestamp=ts, fetched_at=utc_now())
        self._write_atomic(path, doc.to_dict())
        logger.info("fetched %s:%s rev=%s", article.language, article.title, revid)
        return doc

    def list_language_versions(self, article: ArticleRef,
                               cache_policy: CachePolicy = CachePolicy.PREFER_CACHE) -> list[ArticleRef]:
        """All language editions of the article, the input edition included.

        Output is sorted lexicographically by language code and never holds
        duplicate codes.
        """
        policy = CachePolicy(cache_policy)
        cached = self._langlink_map().get(article.key)
        if cached is None and policy is CachePolicy.OFFLINE_ONLY:
            raise CacheMiss(article.language, article.title)
        if cached is None or policy is CachePolicy.REFRESH:
            cached = self._fetch_langlinks(article)
            self._merge_into(self._langlinks_path(), self._langlink_map(), {article.key: cached})

        seen = {article.language: article.title}
        for lang, title in cached:
            seen.setdefault(lang, title)
        return [ArticleRef(lang, seen[lang]) for lang in sorted(seen)]

    def _fetch_langlinks(self, article: ArticleRef) -> list[list[str]]:
        links: list[list[str]] = []
        cont: dict = {}
        while True:
            params = {"action": "query", "prop": "langlinks", "titles": article.title,
                      "lllimit": "max", "redirects": "1"}
            params.update(cont)
            data = self._request(article.language, params)
            pages = data.get("query", {}).get("pages", [])
            if not pages or pages[0].get("missing"):
                raise PageMissing(article.language, article.title)
            for item in pages[0].get("langlinks", []):
                links.append([item["lang"], item.get("title") or item.get("*", "")])
            if "continue" in data:
                cont = {"llcontinue": data["continue"]["llcontinue"]}
            else:
                return links

    def resolve_qid(self, language: str, title: str,
                    cache_policy: CachePolicy = CachePolicy.PREFER_CACHE) -> Optional[str]:
        """Wikidata item bound to a page, or None when there is none."""
        return self.resolve_qids(language, [title], cache_policy).get(title)

    def resolve_qids(self, language: str, titles: Iterable[str],
                     cache_policy: CachePolicy = CachePolicy.PREFER_CACHE) -> dict[str, Optional[str]]:
        """Batch QID resolution, up to ``QID_BATCH_SIZE`` titles per request.

        Redirect targets are followed server-side; results (including known
        misses, stored as null) are cached persistently.
        """
        policy = CachePolicy(cache_policy)
        titles = list(dict.fromkeys(titles))
        qmap = self._qid_map()
        out: dict[str, Optional[str]] = {}
        pending: list[str] = []
        for title in titles:
            key = f"{language}:{title}"
            if policy is not CachePolicy.REFRESH and key in qmap:
                out[title] = qmap[key]
            else:
                pending.append(title)
        if not pending:
            return out
        if policy is CachePolicy.OFFLINE_ONLY:
            # Unknown titles stay unresolved offline; they are not cached as
            # misses because the next online run may resolve them.
            for title in pending:
                out[title] = None
            return out

        fresh: dict[str, Optional[str]] = {}
        for start in range(0, len(pending), QID_BATCH_SIZE):
            batch = pending[start:start + QID_BATCH_SIZE]
            data = self._request(language, {
                "action": "query", "prop": "pageprops", "ppprop": "wikibase_item",
                "titles": "|".join(batch), "redirects": "1",
            })
            query = data.get("query", {})
            rename: dict[str, str] = {}
            for step in ("normalized", "redirects"):
                for move in query.get(step, []):
                    rename[move["from"]] = move["to"]
            by_title: dict[str, Optional[str]] = {}
            for page in query.get("pages", []):
                qid = page.get("pageprops", {}).get("wikibase_item")
                by_title[page.get("title", "")] = qid if qid and is_valid_qid(qid) else None
            for title in batch:
                final = title
                hops = 0
                while final in rename and hops < 5:
                    final = rename[final]
                    hops += 1
                fresh[f"{language}:{title}"] = by_title.get(final)
        self._merge_into(self._qids_path(), qmap, fresh)
        for title in pending:
            out[title] = qmap.get(f"{language}:{title}")
        return out


def count_references(doc: PageDocument) -> int:
    """Number of distinct reference-list items in the rendered page.

    Counts ``<li>`` items inside ``<ol class="references">`` containers, so a
    source cited from ten inline markers still counts once. Returns 0 when
    the page has no reference list.
    """
    try:
        root = parse_html(doc.html)
    except Exception as exc:  # html.parser rarely throws, but be explicit
        raise ParseError(f"cannot parse {doc.article.key}: {exc}") from exc
    total = 0
    for ol in root.find_all("ol", class_="references"):
        for child in ol.children:
            if getattr(child, "tag", None) == "li":
                total += 1
    return total
