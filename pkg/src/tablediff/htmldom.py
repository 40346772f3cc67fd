"""Minimal tolerant DOM built on html.parser.

Rendered MediaWiki output is well-formed in practice, but the builder still
survives stray close tags and unclosed elements: a close tag with no matching
open element is ignored, and closing an outer element implicitly closes
everything nested inside it.
"""

from __future__ import annotations

from html.parser import HTMLParser
from typing import Iterator, Optional

VOID_TAGS = {
    "area", "base", "br", "col", "embed", "hr", "img", "input",
    "link", "meta", "param", "source", "track", "wbr",
}

# Elements whose text never counts as page content.
NON_CONTENT_TAGS = {"script", "style"}


class Node:
    """One element: tag name, attributes, and mixed node/str children."""

    __slots__ = ("tag", "attrs", "children", "parent")

    def __init__(self, tag: str, attrs: Optional[dict] = None, parent: Optional["Node"] = None):
        self.tag = tag
        self.attrs = attrs or {}
        self.children: list = []
        self.parent = parent

    def classes(self) -> set[str]:
        return set((self.attrs.get("class") or "").split())

    def get(self, name: str, default=None):
        return self.attrs.get(name, default)

    def iter_nodes(self) -> Iterator["Node"]:
        """All element descendants in document order, self excluded."""
        for child in self.children:
            if isinstance(child, Node):
                yield child
                yield from child.iter_nodes()

    def find_all(self, tag: str, class_: Optional[str] = None) -> list["Node"]:
        out = []
        for node in self.iter_nodes():
            if node.tag == tag and (class_ is None or class_ in node.classes()):
                out.append(node)
        return out

    def has_ancestor(self, tag: str) -> bool:
        node = self.parent
        while node is not None:
            if node.tag == tag:
                return True
            node = node.parent
        return False

    def text(self) -> str:
        """Concatenated descendant text; breaks and element ends become spaces."""
        return "".join(self.iter_text())

    def iter_text(self) -> Iterator[str]:
        if self.tag in NON_CONTENT_TAGS:
            return
        for child in self.children:
            if isinstance(child, str):
                yield child
            elif child.tag == "br":
                yield " "
            else:
                yield from child.iter_text()
                # Block-ish boundaries separate words that would otherwise glue.
                if child.tag in ("p", "div", "li", "tr", "td", "th", "table", "caption"):
                    yield " "

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"<Node {self.tag} {self.attrs.get('class', '')!r}>"


class _TreeBuilder(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.root = Node("#document")
        self.current = self.root

    def handle_starttag(self, tag, attrs):
        node = Node(tag, dict(attrs), parent=self.current)
        self.current.children.append(node)
        if tag not in VOID_TAGS:
            self.current = node

    def handle_startendtag(self, tag, attrs):
        self.current.children.append(Node(tag, dict(attrs), parent=self.current))

    def handle_endtag(self, tag):
        node = self.current
        while node is not self.root:
            if node.tag == tag:
                self.current = node.parent
                return
            node = node.parent
        # No matching open tag: ignore the stray close.

    def handle_data(self, data):
        if data:
            self.current.children.append(data)


def parse_html(html: str) -> Node:
    """Parse an HTML document into a Node tree. Never raises on bad markup."""
    builder = _TreeBuilder()
    builder.feed(html)
    builder.close()
    return builder.root
