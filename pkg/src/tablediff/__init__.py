"""tablediff: cross-language consistency analysis of Wikipedia tables."""

__version__ = "0.1.0"

from .mw_client import ArticleRef, CachePolicy, MediaWikiClient, PageDocument  # noqa: F401
from .table_parser import Cell, WikiTable, extract_tables  # noqa: F401
