"""Exception hierarchy shared by every module."""

from __future__ import annotations


class CommentaryError(Exception):
    """Base class for all package errors."""


class ParseError(CommentaryError):
    """Input could not be parsed.

    ``line`` is 1-based when the input is line oriented, ``offset`` is a
    character offset for whole-document formats.
    """

    def __init__(self, message: str, line: int | None = None, offset: int | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if offset is not None:
            where.append(f"offset {offset}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.line = line
        self.offset = offset


class InvalidLabel(ParseError):
    pass


class DuplicateId(CommentaryError):
    def __init__(self, record_id: str, line: int | None = None):
        msg = f"duplicate id {record_id!r}"
        if line is not None:
            msg += f" (line {line})"
        super().__init__(msg)
        self.record_id = record_id
        self.line = line


class EmptyDataset(CommentaryError):
    pass


class UnlabeledDataset(CommentaryError):
    pass


class ConfigError(CommentaryError, ValueError):
    pass


class EmptyVocabulary(CommentaryError):
    pass


class ShapeError(CommentaryError, ValueError):
    pass


class DegenerateLabels(CommentaryError, ValueError):
    pass


class InvalidInput(CommentaryError, ValueError):
    pass


class UnsupportedVersion(CommentaryError):
    pass


class MissingSentiment(CommentaryError, KeyError):
    def __init__(self, record_id: str):
        super().__init__(f"no sentiment for record {record_id!r}")
        self.record_id = record_id

    def __str__(self) -> str:
        return self.args[0]


class UnsupportedKind(CommentaryError):
    pass
