"""End-to-end analysis: fetch -> extract -> link -> align -> analyze.

The pipeline downgrades per-edition problems (missing pages, unalignable
tables) into findings inside the report instead of aborting; a family only
counts as failed when no edition could be analyzed at all.
"""

from __future__ import annotations

import hashlib
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timedelta
from typing import Optional

from . import __version__
from .entity_align import (AlignedMatrix, EntityKey, EntityMention, build_matrix,
                           detect_entity_column, extract_row_entities, link_mentions)
from .errors import CacheMiss, NetworkError, NoEntityColumn, PageMissing, ParseError
from .manifest import DatasetManifest, FamilyEntry
from .metrics import FamilyStats, aggregate_corpus, page_stats, select_main_table
from .mw_client import ArticleRef, CachePolicy, MediaWikiClient, PageDocument, count_references, utc_now
from .schema_align import (Attribute, AttributeKey, HeaderMapping,
                           build_presence_grid, resolve_columns)
from .table_parser import WikiTable, extract_tables
from .value_analysis import (MISSING, CellValue, InconsistencyRecord, classify,
                             detect_conflicts, detect_incompleteness, detect_text_divergence,
                             is_missing, parse_value)

logger = logging.getLogger(__name__)


@dataclass
class PipelineOptions:
    languages: Optional[list[str]] = None
    offline: bool = False
    refresh: bool = False
    rel_tol: float = 0.0
    staleness_days: int = 180
    all_tables: bool = False
    extra_missing: tuple[str, ...] = ()
    jobs: int = 1

    @property
    def cache_policy(self) -> CachePolicy:
        if self.offline:
            return CachePolicy.OFFLINE_ONLY
        if self.refresh:
            return CachePolicy.REFRESH
        return CachePolicy.PREFER_CACHE


@dataclass
class EditionData:
    """Working state for one fetched language edition of a family."""

    language: str
    title: str
    status: str  # "ok" | "absent" | "error"
    doc: Optional[PageDocument] = None
    tables: list[WikiTable] = field(default_factory=list)
    linked: list[tuple[WikiTable, list[EntityMention]]] = field(default_factory=list)
    reason: str = ""


def _timestamp(ts: datetime) -> str:
    return ts.strftime("%Y-%m-%dT%H:%M:%SZ")


def value_to_json(value: CellValue) -> dict:
    if value is MISSING:
        return {"missing": True}
    out: dict = {"kind": value.kind, "original": value.original}
    if value.magnitude is not None:
        out["magnitude"] = value.magnitude
    if value.unit is not None:
        out["unit"] = value.unit
    if value.numerator is not None:
        out["numerator"] = value.numerator
        out["denominator"] = value.denominator
    return out


def entity_to_json(entity: Optional[EntityKey]) -> Optional[dict]:
    if entity is None:
        return None
    out = {"kind": entity.kind, "value": entity.value}
    if entity.language:
        out["language"] = entity.language
    return out


def record_to_json(record: InconsistencyRecord) -> dict:
    attribute = record.attribute
    severity = record.severity
    if severity is not None and not math.isfinite(severity):
        # zero-vs-nonzero disagreements have no finite relative difference;
        # keep the JSON standard-parseable
        severity = None
    return {
        "family": record.family,
        "class": record.cls,
        "entity": entity_to_json(record.entity),
        "attribute": attribute.name if attribute is not None else None,
        "attribute_kind": (
            None if attribute is None
            else ("mapped" if isinstance(attribute, AttributeKey) else "unmapped")
        ),
        "severity": severity,
        "values": {lang: value_to_json(v) for lang, v in record.values.items()},
        "revision_timestamps": {lang: _timestamp(ts)
                                for lang, ts in sorted(record.revision_timestamps.items())},
        "evidence": record.evidence,
    }


def _fetch_edition(client: MediaWikiClient, language: str, title: str,
                   options: PipelineOptions) -> EditionData:
    article = ArticleRef(language, title)
    try:
        doc = client.fetch_page(article, options.cache_policy)
    except PageMissing:
        return EditionData(language, title, "absent", reason="page missing in this edition")
    except CacheMiss:
        return EditionData(language, title, "absent", reason="no cached snapshot (offline run)")
    except (NetworkError, ParseError) as exc:
        logger.warning("fetch failed for %s:%s: %s", language, title, exc)
        return EditionData(language, title, "error", reason=str(exc))
    return EditionData(language, title, "ok", doc=doc)


def _edition_titles(entry: FamilyEntry, client: MediaWikiClient,
                    options: PipelineOptions, findings: list[dict]) -> dict[str, str]:
    try:
        versions = client.list_language_versions(entry.seed, options.cache_policy)
        return {ref.language: ref.title for ref in versions}
    except (PageMissing, CacheMiss, NetworkError) as exc:
        findings.append({
            "kind": "langlinks-unavailable",
            "family": entry.id,
            "detail": f"{type(exc).__name__}: {exc}",
        })
        return {entry.seed.language: entry.seed.title}


def _collect_attribute_values(
    matrix: AlignedMatrix,
    tables_by_language: dict[str, dict[int, WikiTable]],
    columns: dict[tuple[str, int], dict[Attribute, list[int]]],
    attribute: Attribute,
    extra_missing: tuple[str, ...],
) -> dict[EntityKey, dict[str, CellValue]]:
    """First non-missing value per (entity, language) for one attribute.

    Languages where no occurrence table carries the attribute's column are
    left out; a language whose cells are all missing markers maps to MISSING.
    """
    out: dict[EntityKey, dict[str, CellValue]] = {}
    for entity in matrix.entities:
        per_language: dict[str, CellValue] = {}
        for language in matrix.languages:
            saw_column = False
            value: CellValue = MISSING
            for table_index, row_index in matrix.occurrences(entity, language):
                table = tables_by_language[language].get(table_index)
                if table is None:
                    continue
                for col in columns.get((language, table_index), {}).get(attribute, []):
                    saw_column = True
                    text = table.body_rows[row_index][col].text
                    if is_missing(text, extra_missing):
                        continue
                    value = parse_value(text, language)
                    break
                if value is not MISSING:
                    break
            if saw_column:
                per_language[language] = value
        if per_language:
            out[entity] = per_language
    return out


def analyze_family(entry: FamilyEntry, mapping: HeaderMapping, client: MediaWikiClient,
                   options: PipelineOptions) -> tuple[dict, FamilyStats]:
    findings: list[dict] = []
    titles = _edition_titles(entry, client, options, findings)

    if options.languages:
        wanted = list(options.languages)
    elif entry.languages != "all":
        wanted = list(entry.languages)
    else:
        wanted = sorted(titles)

    editions: list[EditionData] = []
    to_fetch: list[tuple[str, str]] = []
    for language in wanted:
        title = titles.get(language)
        if title is None:
            editions.append(EditionData(language, entry.seed.title, "absent",
                                        reason="no edition listed for this language"))
        else:
            to_fetch.append((language, title))

    if options.jobs > 1 and len(to_fetch) > 1:
        with ThreadPoolExecutor(max_workers=options.jobs) as pool:
            fetched = list(pool.map(
                lambda pair: _fetch_edition(client, pair[0], pair[1], options), to_fetch))
    else:
        fetched = [_fetch_edition(client, lang, title, options) for lang, title in to_fetch]
    editions.extend(fetched)
    editions.sort(key=lambda e: wanted.index(e.language))

    for edition in editions:
        if edition.status != "ok":
            findings.append({
                "kind": "edition-absent" if edition.status == "absent" else "fetch-error",
                "family": entry.id,
                "language": edition.language,
                "detail": edition.reason,
            })

    # Extraction, entity mentions, linking.
    stats = FamilyStats(family=entry.id)
    entity_column_attrs: set[Attribute] = set()
    columns: dict[tuple[str, int], dict[Attribute, list[int]]] = {}
    tables_by_language: dict[str, dict[int, WikiTable]] = {}
    edition_rows = []
    for edition in editions:
        if edition.status != "ok":
            edition_rows.append({"language": edition.language, "title": edition.title,
                                 "status": edition.status, "detail": edition.reason})
            continue
        doc = edition.doc
        edition.tables = extract_tables(doc)
        tables_by_language[edition.language] = {t.table_index: t for t in edition.tables}

        mentions_by_table: list[tuple[WikiTable, list[EntityMention]]] = []
        for table in edition.tables:
            column_attrs = resolve_columns(table, edition.language, mapping)
            by_attr: dict[Attribute, list[int]] = {}
            for col, attr in column_attrs:
                by_attr.setdefault(attr, []).append(col)
            columns[(edition.language, table.table_index)] = by_attr
            hint = entry.column_hint(edition.language, table.table_index)
            try:
                mentions = extract_row_entities(table, column_hint=hint)
            except NoEntityColumn:
                findings.append({
                    "kind": "no-entity-column",
                    "family": entry.id,
                    "language": edition.language,
                    "table_index": table.table_index,
                    "detail": "table excluded from alignment",
                })
                continue
            skipped = table.n_body_rows - len(mentions)
            if skipped:
                findings.append({
                    "kind": "rows-skipped",
                    "family": entry.id,
                    "language": edition.language,
                    "table_index": table.table_index,
                    "detail": f"{skipped} row(s) with empty entity cells",
                })
            mentions_by_table.append((table, mentions))
            # The attribute serving as the entity column is skipped in
            # text-divergence checks: the row key is language-specific.
            used_col = hint if hint is not None else detect_entity_column(table)
            if used_col is not None:
                entity_column_attrs.add(column_attrs[used_col][1])

        linked = [
            (table, link_mentions(mentions, edition.language, client, options.cache_policy))
            for table, mentions in mentions_by_table
        ]
        edition.linked = linked

        main_override = entry.main_table_index.get(edition.language)
        pstats = page_stats(
            article=doc.article, tables=edition.tables,
            reference_count=count_references(doc),
            main_override=main_override,
            extra_missing=options.extra_missing,
            all_tables=options.all_tables,
        )
        stats.per_language[edition.language] = [pstats]
        edition_rows.append({
            "language": edition.language,
            "title": edition.title,
            "status": "ok",
            "revision_id": doc.revision_id,
            "revision_timestamp": _timestamp(doc.revision_timestamp),
            "table_count": pstats.table_count,
            "reference_count": pstats.reference_count,
            "main_table_index": pstats.main_table_index,
            "columns": {
                "total": pstats.total_columns,
                "complete": pstats.complete_columns,
                "incomplete": pstats.incomplete_columns,
            },
        })

    analyzed = [e for e in editions if e.status == "ok"]
    aligned_languages = [e.language for e in analyzed if e.linked]

    matrix = build_matrix(
        entry.id,
        {e.language: e.linked for e in analyzed},
        languages=[e.language for e in analyzed],
    )

    main_tables: dict[str, Optional[WikiTable]] = {}
    for edition in analyzed:
        override = entry.main_table_index.get(edition.language)
        index = select_main_table(edition.tables, override)
        main_tables[edition.language] = edition.tables[index] if index is not None else None
    grid = build_presence_grid(entry.id, main_tables, mapping,
                               languages=[e.language for e in analyzed])

    # Conflicts and text divergence over attributes seen in >= 2 languages.
    revision_timestamps = {e.language: e.doc.revision_timestamp for e in analyzed if e.doc}
    attr_languages: dict[Attribute, set[str]] = {}
    for (language, _ti), by_attr in columns.items():
        for attr in by_attr:
            attr_languages.setdefault(attr, set()).add(language)

    records: list[InconsistencyRecord] = []
    window = timedelta(days=options.staleness_days)
    for attr in mapping.attributes:
        if len(attr_languages.get(attr, ())) < 2:
            continue
        values = _collect_attribute_values(matrix, tables_by_language, columns, attr,
                                           options.extra_missing)
        conflicts, conflict_findings = detect_conflicts(entry.id, attr, values, options.rel_tol)
        findings.extend(conflict_findings)
        records.extend(classify(record, revision_timestamps, window) for record in conflicts)
        if attr not in entity_column_attrs:
            findings.extend(detect_text_divergence(entry.id, attr, values))

    records.extend(detect_incompleteness(grid, matrix, aligned_languages))

    family_status = "ok" if analyzed else "failed"
    family_dict = {
        "id": entry.id,
        "seed": {"language": entry.seed.language, "title": entry.seed.title},
        "status": family_status,
        "languages_requested": wanted,
        "editions": edition_rows,
        "entities": [
            {
                **entity_to_json(entity),
                "occurrences": {
                    lang: matrix.occurrences(entity, lang)
                    for lang in matrix.languages if matrix.occurrences(entity, lang)
                },
            }
            for entity in matrix.entities
        ],
        "presence": {
            "languages": grid.languages,
            "attributes": [
                {"name": attr.name,
                 "kind": "mapped" if isinstance(attr, AttributeKey) else "unmapped"}
                for attr in grid.attributes
            ],
            "grid": [[1 if flag else 0 for flag in row] for row in grid.present],
        },
        "records": [record_to_json(r) for r in records],
        "findings": findings,
        "aggregates": {
            lang: vars(agg) for lang, agg in sorted(stats.aggregates().items())
        },
    }
    return family_dict, stats


def run_pipeline(manifest: DatasetManifest, mapping: HeaderMapping,
                 client: MediaWikiClient, options: PipelineOptions) -> dict:
    """Analyze every family in the manifest and assemble the report dict."""
    families = []
    all_stats: list[FamilyStats] = []
    for entry in manifest.families:
        family_dict, stats = analyze_family(entry, mapping, client, options)
        families.append(family_dict)
        all_stats.append(stats)

    run_languages = options.languages or _union_languages(families)
    corpus_per_language = aggregate_corpus(all_stats, run_languages)
    columns_total = sum(a.columns_total for a in corpus_per_language.values())
    columns_complete = sum(a.columns_complete for a in corpus_per_language.values())
    columns_incomplete = sum(a.columns_incomplete for a in corpus_per_language.values())

    epoch_lines = sorted(
        f"{e['language']}:{e['title']}:{e['revision_id']}"
        for family in families for e in family["editions"] if e.get("status") == "ok"
    )
    cache_epoch = hashlib.sha256("\n".join(epoch_lines).encode("utf-8")).hexdigest()[:16]

    return {
        "tool": {"name": "tablediff", "version": __version__},
        "generated_at": _timestamp(utc_now()),
        "cache_epoch": cache_epoch,
        "options": {
            "languages": run_languages,
            "offline": options.offline,
            "rel_tol": options.rel_tol,
            "staleness_days": options.staleness_days,
            "all_tables": options.all_tables,
        },
        "manifest": manifest.to_dict(),
        "families": families,
        "corpus": {
            "languages": run_languages,
            "per_language": {lang: vars(agg) for lang, agg in corpus_per_language.items()},
            "overall": {
                "columns_total": columns_total,
                "columns_complete": columns_complete,
                "columns_incomplete": columns_incomplete,
                "complete_rate": round(100.0 * columns_complete / columns_total, 1) if columns_total else 0.0,
                "incomplete_rate": round(100.0 * columns_incomplete / columns_total, 1) if columns_total else 0.0,
            },
        },
    }


def _union_languages(families: list[dict]) -> list[str]:
    seen: dict[str, None] = {}
    for family in families:
        for lang in family["languages_requested"]:
            seen.setdefault(lang, None)
    return list(seen)


def warm_cache(manifest: DatasetManifest, mapping: HeaderMapping, client: MediaWikiClient,
               options: PipelineOptions) -> dict:
    """Populate page, langlink and QID caches without running the analysis."""
    fetched = absent = 0
    for entry in manifest.families:
        findings: list[dict] = []
        titles = _edition_titles(entry, client, options, findings)
        wanted = options.languages or (entry.languages if entry.languages != "all" else sorted(titles))
        for language in wanted:
            title = titles.get(language)
            if title is None:
                absent += 1
                continue
            edition = _fetch_edition(client, language, title, options)
            if edition.status != "ok":
                absent += 1
                continue
            fetched += 1
            for table in extract_tables(edition.doc):
                try:
                    mentions = extract_row_entities(table)
                except NoEntityColumn:
                    continue
                link_mentions(mentions, language, client, options.cache_policy)
    return {"fetched": fetched, "absent_or_failed": absent}
