"""Row-entity extraction and the cross-language entity alignment matrix.

Rows are keyed by Wikidata QID wherever a wiki-link resolves to one; rows
without a usable link stay language-local, keyed by their folded surface
form. Only QIDs ever cross the language boundary.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, replace
from typing import Optional

from .errors import NoEntityColumn
from .mw_client import ArticleRef, CachePolicy, MediaWikiClient, qid_numeric
from .table_parser import WikiTable
from .value_analysis import is_missing


@dataclass(frozen=True)
class EntityMention:
    """The entity one body row describes."""

    article: ArticleRef
    table_index: int
    row_index: int
    surface: str
    link_title: Optional[str]
    qid: Optional[str] = None


@dataclass(frozen=True)
class EntityKey:
    """Alignment key: a QID, or a language-scoped folded surface form."""

    kind: str  # "qid" | "surface"
    value: str
    language: Optional[str] = None

    @property
    def is_qid(self) -> bool:
        return self.kind == "qid"

    def label(self) -> str:
        if self.is_qid:
            return self.value
        return f"{self.language}:{self.value}"


@dataclass
class AlignedMatrix:
    """(entity x language) -> row occurrences for one article family."""

    family: str
    languages: list[str]
    entities: list[EntityKey]
    rows: dict[tuple[EntityKey, str], list[tuple[int, int]]]

    def occurrences(self, entity: EntityKey, language: str) -> list[tuple[int, int]]:
        return self.rows.get((entity, language), [])

    def languages_of(self, entity: EntityKey) -> list[str]:
        return [lang for lang in self.languages if (entity, lang) in self.rows]


def fold_surface(surface: str) -> str:
    """Case-folded, diacritic-stripped key for unlinked mentions."""
    text = unicodedata.normalize("NFKD", surface.casefold())
    text = "".join(ch for ch in text if not unicodedata.combining(ch))
    return re.sub(r"\s+", " ", text).strip()


def detect_entity_column(table: WikiTable) -> Optional[int]:
    """Leftmost column with the highest fraction of wiki-linked cells."""
    if not table.body_rows:
        return None
    best_col, best_fraction = None, 0.0
    for col in range(table.n_cols):
        linked = sum(1 for row in table.body_rows if row[col].link_title)
        fraction = linked / len(table.body_rows)
        if fraction > best_fraction:
            best_col, best_fraction = col, fraction
    return best_col


def extract_row_entities(table: WikiTable, column_hint: Optional[int] = None) -> list[EntityMention]:
    """One mention per body row, taken from the entity column.

    The column is ``column_hint`` when given, otherwise auto-detected by link
    fraction. Raises NoEntityColumn when no column carries any link and there
    is no hint. Rows whose entity cell is empty or a missing-value marker are
    skipped: the caller can itemize them as ``row_index`` gaps.
    """
    if column_hint is not None:
        if not 0 <= column_hint < table.n_cols:
            raise NoEntityColumn(table.table_index, f"column hint {column_hint} out of range")
        col = column_hint
    else:
        detected = detect_entity_column(table)
        if detected is None:
            raise NoEntityColumn(table.table_index)
        col = detected

    mentions = []
    for row_index, row in enumerate(table.body_rows):
        cell = row[col]
        if cell.link_title is None and (not cell.text or is_missing(cell.text)):
            continue
        mentions.append(EntityMention(
            article=table.source,
            table_index=table.table_index,
            row_index=row_index,
            surface=cell.text,
            link_title=cell.link_title,
        ))
    return mentions


def link_mentions(mentions: list[EntityMention], language: str, client: MediaWikiClient,
                  cache_policy: CachePolicy = CachePolicy.PREFER_CACHE) -> list[EntityMention]:
    """Populate ``qid`` via batched QID resolution of the mentions' links."""
    titles = [m.link_title for m in mentions if m.link_title]
    resolved = client.resolve_qids(language, titles, cache_policy) if titles else {}
    return [
        replace(m, qid=resolved.get(m.link_title)) if m.link_title else m
        for m in mentions
    ]


def mention_key(mention: EntityMention, language: str) -> Optional[EntityKey]:
    if mention.qid:
        return EntityKey("qid", mention.qid)
    folded = fold_surface(mention.surface)
    if not folded:
        return None
    return EntityKey("surface", folded, language)


def build_matrix(family_id: str,
                 tables_by_language: dict[str, list[tuple[WikiTable, list[EntityMention]]]],
                 languages: Optional[list[str]] = None) -> AlignedMatrix:
    """Group linked mentions into the (entity x language) matrix.

    Entities are ordered by descending language coverage, then ascending QID
    number; surface-keyed entities sort after QIDs with the same coverage.
    """
    langs = languages if languages is not None else sorted(tables_by_language)
    rows: dict[tuple[EntityKey, str], list[tuple[int, int]]] = {}
    for lang in langs:
        for table, mentions in tables_by_language.get(lang, []):
            for mention in mentions:
                key = mention_key(mention, lang)
                if key is None:
                    continue
                rows.setdefault((key, lang), []).append((mention.table_index, mention.row_index))
    for occurrences in rows.values():
        occurrences.sort()

    coverage: dict[EntityKey, int] = {}
    for (key, _lang) in rows:
        coverage[key] = coverage.get(key, 0) + 1

    def order(key: EntityKey):
        if key.is_qid:
            return (-coverage[key], 0, qid_numeric(key.value), "", "")
        return (-coverage[key], 1, 0, key.value, key.language or "")

    return AlignedMatrix(
        family=family_id,
        languages=list(langs),
        entities=sorted(coverage, key=order),
        rows=rows,
    )
