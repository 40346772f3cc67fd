"""Exception types shared across the toolkit."""


class TableDiffError(Exception):
    """Base class for all toolkit errors."""


class PageMissing(TableDiffError):
    """The requested title does not exist in that language edition.

    Signals a coverage gap, not a failure of the run.
    """

    def __init__(self, language: str, title: str):
        self.language = language
        self.title = title
        super().__init__(f"page not found: {language}:{title}")


class NetworkError(TableDiffError):
    """HTTP transport failed after retries were exhausted."""


class CacheMiss(TableDiffError):
    """An offline-only lookup found no snapshot in the cache."""

    def __init__(self, language: str, title: str):
        self.language = language
        self.title = title
        super().__init__(f"no cached snapshot for {language}:{title}")


class ParseError(TableDiffError):
    """HTML was malformed beyond what the tolerant parser recovers from."""


class NoEntityColumn(TableDiffError):
    """No column of a table carries wiki-links and no hint was given.

    The table is excluded from alignment and reported as such.
    """

    def __init__(self, table_index: int, message: str = ""):
        self.table_index = table_index
        super().__init__(message or f"table {table_index}: no entity column detected")


class MappingConflict(TableDiffError):
    """One normalized header is claimed by two attributes in the same language."""


class ManifestError(TableDiffError):
    """The dataset manifest is malformed."""
