"""Extract data tables from rendered page HTML as rectangular cell grids.

Only ``wikitable``-classed tables qualify as data tables; infoboxes,
navboxes, metadata and sidebar tables are a different artifact class and are
skipped. Nested tables are flattened into the text of the cell that holds
them and never emitted separately.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional
from urllib.parse import unquote

from .htmldom import Node, parse_html
from .mw_client import ArticleRef, PageDocument

EXCLUDED_TABLE_CLASSES = {"infobox", "navbox", "metadata", "sidebar"}

# Rendered footnote markers: [12], [a], [iv], [note 3], [N 1], [nb 2].
FOOTNOTE_RE = re.compile(
    r"\[\s*(?:\d{1,3}|[a-z]|[ivxlcdm]{1,6}|note\s*\d+|nb\s*\d+|[a-z]\s*\d+)\s*\]",
    re.IGNORECASE,
)

# Links into these namespaces never denote a row entity.
_NAMESPACE_PREFIXES = (
    "file:", "image:", "category:", "help:", "template:", "special:",
    "wikipedia:", "portal:", "talk:", "user:", "wiktionary:", "media:",
)

_HTML_SPAN_CAP = 1000  # browsers clamp colspan/rowspan; so do we


def normalize_text(raw: str) -> str:
    """Whitespace-collapsed cell text with footnote markers stripped.

    NBSP becomes a plain space, bracketed footnote markers (``[12]``,
    ``[a]``, ``[note 3]``) are removed, and runs of whitespace collapse to a
    single space. Idempotent. Footnotes rendered as ``<sup class="reference">``
    are already dropped structurally before this runs, so only plain-text
    markers matching the patterns above are at risk; bracketed text in link
    labels does not take those shapes.
    """
    text = raw.replace("\u00a0", " ")
    text = FOOTNOTE_RE.sub("", text)
    return re.sub(r"\s+", " ", text).strip()


@dataclass(frozen=True)
class Cell:
    """One grid position: normalized text plus the first wiki-link target."""

    text: str
    raw_text: str = ""
    link_title: Optional[str] = None
    is_spanned_copy: bool = False

    @staticmethod
    def empty() -> "Cell":
        return Cell(text="", raw_text="")


@dataclass(frozen=True)
class RawCell:
    """A parsed <th>/<td> before span expansion."""

    raw_text: str
    link_title: Optional[str]
    is_header: bool
    rowspan: int = 1
    colspan: int = 1


@dataclass
class WikiTable:
    """A rectangular table: every header and body row has n_cols cells."""

    source: ArticleRef
    table_index: int
    caption: Optional[str]
    header_rows: list[list[Cell]]
    body_rows: list[list[Cell]]
    n_cols: int
    header_is_fallback: bool = field(default=False, repr=False)

    @property
    def n_body_rows(self) -> int:
        return len(self.body_rows)

    def column_labels(self) -> list[str]:
        """One logical header label per column.

        Multi-row headers collapse by joining the distinct stacked texts with
        " / ", so a "Height" cell spanning "m" and "ft" sub-headers yields
        "Height / m" and "Height / ft".
        """
        labels = []
        for col in range(self.n_cols):
            parts: list[str] = []
            for row in self.header_rows:
                text = row[col].text
                if text and (not parts or parts[-1] != text):
                    parts.append(text)
            labels.append(" / ".join(parts))
        return labels


def _coerce_span(value) -> int:
    try:
        span = int(str(value).strip())
    except (TypeError, ValueError):
        return 1
    if span < 1:
        return 1
    return min(span, _HTML_SPAN_CAP)


def _is_reference_sup(node: Node) -> bool:
    return node.tag == "sup" and (
        "reference" in node.classes() or str(node.get("id", "")).startswith("cite_ref")
    )


def _cell_raw_text(node: Node) -> str:
    """Visible cell text with rendered footnote sups dropped."""
    parts: list[str] = []

    def walk(n: Node):
        for child in n.children:
            if isinstance(child, str):
                parts.append(child)
            elif _is_reference_sup(child):
                continue
            elif child.tag in ("script", "style"):
                continue
            elif child.tag == "br":
                parts.append(" ")
            else:
                walk(child)
                if child.tag in ("p", "div", "li", "tr", "table", "caption", "td", "th"):
                    parts.append(" ")

    walk(node)
    return "".join(parts)


def link_target(href: Optional[str], title_attr: Optional[str]) -> Optional[str]:
    """Resolve an anchor to an internal page title, or None.

    Only ``/wiki/Title`` hrefs qualify; red links (``action=edit``) and
    non-article namespaces are skipped.
    """
    if not href or not href.startswith("/wiki/"):
        return None
    if title_attr:
        title = title_attr
    else:
        title = unquote(href[len("/wiki/"):]).split("#", 1)[0].replace("_", " ")
    title = title.strip()
    if not title or title.lower().startswith(_NAMESPACE_PREFIXES):
        return None
    return title


def _first_link(node: Node) -> Optional[str]:
    for anchor in node.find_all("a"):
        if anchor.parent is not None and _is_reference_sup(anchor.parent):
            continue
        if "new" in anchor.classes():  # red link
            continue
        target = link_target(anchor.get("href"), anchor.get("title"))
        if target:
            return target
    return None


def _parse_raw_cell(node: Node) -> RawCell:
    raw = _cell_raw_text(node)
    return RawCell(
        raw_text=raw,
        link_title=_first_link(node),
        is_header=node.tag == "th",
        rowspan=_coerce_span(node.get("rowspan", 1)),
        colspan=_coerce_span(node.get("colspan", 1)),
    )


def _table_rows(table: Node) -> list[Node]:
    """The table's own <tr> rows, never rows of a nested table."""
    rows = []
    sections = []
    for child in table.children:
        if isinstance(child, Node) and child.tag in ("thead", "tbody", "tfoot"):
            sections.append(child)
        elif isinstance(child, Node) and child.tag == "tr":
            rows.append(child)
    for section in sections:
        for child in section.children:
            if isinstance(child, Node) and child.tag == "tr":
                rows.append(child)
    return rows


def _row_cells(tr: Node) -> list[Node]:
    return [c for c in tr.children if isinstance(c, Node) and c.tag in ("th", "td")]


def expand_spans(raw_rows: list[list[RawCell]]) -> tuple[list[list[Cell]], list[list[bool]]]:
    """Materialize rowspan/colspan into a rectangular Cell grid.

    Rows are processed top to bottom, cells left to right. The column cursor
    skips positions already claimed by an earlier span; each cell then claims
    a ``rowspan x colspan`` rectangle anchored at the cursor (positions inside
    the rectangle that are already taken stay with their first claimant).
    Rowspans are clipped at the last row. Every claimed position beyond the
    anchor holds a copy flagged ``is_spanned_copy``; unclaimed positions are
    right-padded with empty cells.

    Returns the cell grid and a parallel header-flag grid (pads are never
    header cells).
    """
    n_rows = len(raw_rows)
    occupied: dict[tuple[int, int], tuple[Cell, bool]] = {}
    for r, row in enumerate(raw_rows):
        cursor = 0
        for raw in row:
            while (r, cursor) in occupied:
                cursor += 1
            base = Cell(text=normalize_text(raw.raw_text), raw_text=raw.raw_text,
                        link_title=raw.link_title, is_spanned_copy=False)
            copy = Cell(text=base.text, raw_text=base.raw_text,
                        link_title=base.link_title, is_spanned_copy=True)
            for dr in range(min(raw.rowspan, n_rows - r)):
                for dc in range(raw.colspan):
                    pos = (r + dr, cursor + dc)
                    if pos not in occupied:
                        occupied[pos] = (base if pos == (r, cursor) else copy, raw.is_header)
            cursor += raw.colspan

    width = 0
    for (_, c) in occupied:
        width = max(width, c + 1)
    if n_rows and width == 0:
        width = 1

    grid: list[list[Cell]] = []
    headers: list[list[bool]] = []
    for r in range(n_rows):
        cells, flags = [], []
        for c in range(width):
            cell, is_header = occupied.get((r, c), (Cell.empty(), False))
            cells.append(cell)
            flags.append(is_header)
        grid.append(cells)
        headers.append(flags)
    return grid, headers


def detect_header(grid: list[list[Cell]],
                  header_flags: list[list[bool]]) -> tuple[list[list[Cell]], list[list[Cell]], bool]:
    """Split a rectangular grid into header rows and body rows.

    Leading rows made up entirely of <th> cells are the header; when there is
    no such row the first row is promoted instead (flagged as fallback).
    """
    split = 0
    for flags in header_flags:
        if flags and all(flags):
            split += 1
        else:
            break
    if split == 0 and grid:
        return [grid[0]], grid[1:], True
    return grid[:split], grid[split:], False


def _qualifies(table: Node) -> bool:
    classes = table.classes()
    if "wikitable" not in classes:
        return False
    if classes & EXCLUDED_TABLE_CLASSES:
        return False
    return not table.has_ancestor("table")


def extract_tables(doc: PageDocument) -> list[WikiTable]:
    """All qualifying data tables of a page, in document order."""
    root = parse_html(doc.html)
    out: list[WikiTable] = []
    for table in root.find_all("table"):
        if not _qualifies(table):
            continue
        raw_rows = [[_parse_raw_cell(c) for c in _row_cells(tr)] for tr in _table_rows(table)]
        raw_rows = [row for row in raw_rows if row]
        if not raw_rows:
            continue
        grid, flags = expand_spans(raw_rows)
        header_rows, body_rows, fallback = detect_header(grid, flags)
        caption = None
        for child in table.children:
            if isinstance(child, Node) and child.tag == "caption":
                caption = normalize_text(_cell_raw_text(child)) or None
                break
        out.append(WikiTable(
            source=doc.article,
            table_index=len(out),
            caption=caption,
            header_rows=header_rows,
            body_rows=body_rows,
            n_cols=len(grid[0]) if grid else 0,
            header_is_fallback=fallback,
        ))
    return out
