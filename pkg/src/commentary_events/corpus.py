"""Labeled live-commentary datasets: loading, statistics, splitting, rebalancing."""

from __future__ import annotations

import csv
import io
import json
import logging
import random
from collections import Counter
from dataclasses import dataclass, field, replace
from enum import IntEnum
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .errors import (
    DuplicateId,
    EmptyDataset,
    InvalidLabel,
    ParseError,
    UnlabeledDataset,
)

log = logging.getLogger(__name__)


class EventLabel(IntEnum):
    NO_EVENT = 0
    ATTEMPT = 1
    CORNER = 2
    FOUL = 3
    YELLOW_CARD = 4
    SECOND_YELLOW_CARD = 5
    RED_CARD = 6
    SUBSTITUTION = 7
    FREE_KICK_WON = 8
    OFFSIDE = 9
    HANDBALL = 10
    PENALTY_CONCEDED = 11

    @property
    def display_name(self) -> str:
        return _DISPLAY_NAMES[self]

    @classmethod
    def from_name(cls, name: str) -> "EventLabel":
        key = " ".join(name.replace("_", " ").split()).lower()
        try:
            return _BY_NAME[key]
        except KeyError:
            raise ValueError(f"unknown event type {name!r}") from None

    @classmethod
    def from_code(cls, code: int) -> "EventLabel":
        if isinstance(code, bool) or not isinstance(code, int) or not 0 <= code <= 11:
            raise ValueError(f"event label must be an integer in 0..11, got {code!r}")
        return cls(code)


_DISPLAY_NAMES = {
    EventLabel.NO_EVENT: "No event",
    EventLabel.ATTEMPT: "Attempt",
    EventLabel.CORNER: "Corner",
    EventLabel.FOUL: "Foul",
    EventLabel.YELLOW_CARD: "Yellow card",
    EventLabel.SECOND_YELLOW_CARD: "Second yellow card",
    EventLabel.RED_CARD: "Red card",
    EventLabel.SUBSTITUTION: "Substitution",
    EventLabel.FREE_KICK_WON: "Free kick won",
    EventLabel.OFFSIDE: "Offside",
    EventLabel.HANDBALL: "Handball",
    EventLabel.PENALTY_CONCEDED: "Penalty conceded",
}
_BY_NAME = {name.lower(): label for label, name in _DISPLAY_NAMES.items()}
N_LABELS = len(EventLabel)


@dataclass(frozen=True)
class CommentaryRecord:
    id: str
    text: str
    label: EventLabel | None = None
    match_id: str | None = None
    minute: int | None = None
    league: str | None = None

    def __post_init__(self):
        if not isinstance(self.id, str) or not self.id:
            raise ValueError("record id must be a non-empty string")
        if not isinstance(self.text, str) or not self.text.strip():
            raise ValueError(f"record {self.id!r}: text is empty")
        if self.label is not None and not isinstance(self.label, EventLabel):
            object.__setattr__(self, "label", EventLabel.from_code(self.label))
        if self.minute is not None and (
            isinstance(self.minute, bool) or not isinstance(self.minute, int) or self.minute < 0
        ):
            raise ValueError(f"record {self.id!r}: minute must be a non-negative integer")

    def to_json(self) -> dict:
        out: dict = {"id": self.id, "text": self.text}
        if self.label is not None:
            out["label"] = int(self.label)
        for key in ("match_id", "minute", "league"):
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        return out


@dataclass(frozen=True)
class Dataset:
    records: tuple[CommentaryRecord, ...] = ()
    unknown_keys: int = field(default=0, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "records", tuple(self.records))
        seen: set[str] = set()
        for rec in self.records:
            if rec.id in seen:
                raise DuplicateId(rec.id)
            seen.add(rec.id)

    @property
    def labeled(self) -> bool:
        return all(r.label is not None for r in self.records)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    @property
    def texts(self) -> list[str]:
        return [r.text for r in self.records]

    @property
    def labels(self) -> list[EventLabel]:
        if not self.labeled:
            raise UnlabeledDataset("dataset has records without a label")
        return [r.label for r in self.records]

    @property
    def ids(self) -> list[str]:
        return [r.id for r in self.records]


@dataclass(frozen=True)
class DatasetStats:
    n_records: int
    avg_words: Fraction
    avg_chars: Fraction
    per_class_counts: dict[EventLabel, int] | None

    @property
    def majority_share(self) -> Fraction | None:
        """Share of the largest class, or None for unlabeled data."""
        if self.per_class_counts is None:
            return None
        return Fraction(max(self.per_class_counts.values()), self.n_records)

    def to_json(self) -> dict:
        out: dict = {
            "n_records": self.n_records,
            "avg_words": float(self.avg_words),
            "avg_chars": float(self.avg_chars),
        }
        if self.per_class_counts is not None:
            out["per_class_counts"] = {str(int(k)): v for k, v in self.per_class_counts.items()}
            out["majority_share"] = float(self.majority_share)
        return out


# -- loading ---------------------------------------------------------------

_FIELDS = ("id", "text", "label", "match_id", "minute", "league")


def _record_from_mapping(obj: dict, lineno: int) -> CommentaryRecord:
    rid = obj.get("id")
    text = obj.get("text")
    if not isinstance(rid, str) or not rid:
        raise ParseError("missing or invalid 'id'", line=lineno)
    if not isinstance(text, str) or not text.strip():
        raise ParseError("missing or empty 'text'", line=lineno)
    label = obj.get("label")
    if label is not None:
        try:
            label = EventLabel.from_code(label)
        except ValueError as exc:
            raise InvalidLabel(str(exc), line=lineno) from None
    minute = obj.get("minute")
    if minute is not None and (isinstance(minute, bool) or not isinstance(minute, int) or minute < 0):
        raise ParseError("'minute' must be a non-negative integer", line=lineno)
    for key in ("match_id", "league"):
        if obj.get(key) is not None and not isinstance(obj[key], str):
            raise ParseError(f"'{key}' must be a string", line=lineno)
    return CommentaryRecord(
        id=rid,
        text=text,
        label=label,
        match_id=obj.get("match_id"),
        minute=minute,
        league=obj.get("league"),
    )


def _read_text(path: Path) -> str:
    data = Path(path).read_bytes()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        line = data[: exc.start].count(b"\n") + 1
        raise ParseError("invalid UTF-8", line=line) from None


def _iter_jsonl(text: str):
    unknown = 0
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"malformed JSON: {exc.msg}", line=lineno) from None
        if not isinstance(obj, dict):
            raise ParseError("expected a JSON object", line=lineno)
        unknown += sum(1 for k in obj if k not in _FIELDS)
        yield lineno, obj, unknown


def _iter_csv(text: str):
    reader = csv.reader(io.StringIO(text, newline=""))
    for row in reader:
        lineno = reader.line_num
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if [c.strip().lower() for c in row] == list(_FIELDS[: len(row)]) and lineno == 1:
            continue  # header
        if len(row) > len(_FIELDS):
            raise ParseError(f"expected at most {len(_FIELDS)} columns, got {len(row)}", line=lineno)
        obj: dict = {}
        for key, cell in zip(_FIELDS, row):
            if cell == "":
                continue
            if key in ("label", "minute"):
                try:
                    obj[key] = int(cell)
                except ValueError:
                    raise ParseError(f"'{key}' is not an integer: {cell!r}", line=lineno) from None
            else:
                obj[key] = cell
        yield lineno, obj, 0


def load_dataset(path: str | Path, format: str | None = None) -> Dataset:
    """Read a JSONL or CSV commentary file, keeping file order.

    ``format`` defaults to the file extension.
    """
    path = Path(path)
    fmt = (format or path.suffix.lstrip(".")).lower()
    if fmt not in ("jsonl", "csv"):
        raise ValueError(f"unsupported dataset format {fmt!r}")
    text = _read_text(path)
    rows = _iter_jsonl(text) if fmt == "jsonl" else _iter_csv(text)
    records: list[CommentaryRecord] = []
    seen: set[str] = set()
    unknown = 0
    for lineno, obj, unknown in rows:
        rec = _record_from_mapping(obj, lineno)
        if rec.id in seen:
            raise DuplicateId(rec.id, line=lineno)
        seen.add(rec.id)
        records.append(rec)
    if unknown:
        log.warning("%s: ignored %d unknown key(s)", path, unknown)
    return Dataset(tuple(records), unknown_keys=unknown)


def save_dataset(ds: Dataset | Iterable[CommentaryRecord], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for rec in ds:
            fh.write(json.dumps(rec.to_json(), ensure_ascii=False) + "\n")


# -- statistics ------------------------------------------------------------

def compute_stats(ds: Dataset) -> DatasetStats:
    n = len(ds)
    if n == 0:
        raise EmptyDataset("cannot compute statistics of an empty dataset")
    words = sum(len(r.text.split()) for r in ds)
    chars = sum(len(r.text) for r in ds)
    counts = None
    if ds.labeled:
        tally = Counter(r.label for r in ds)
        counts = {label: tally.get(label, 0) for label in EventLabel}
    return DatasetStats(n, Fraction(words, n), Fraction(chars, n), counts)


# -- splitting and rebalancing ---------------------------------------------

def _train_size(ratio: float, n: int) -> int:
    # exact decimal arithmetic so that e.g. 0.29 * 100 floors to 29, not 28
    return int(Fraction(repr(float(ratio))) * n)


def split_shuffled(ds: Dataset, train_ratio: float = 0.8, seed: int = 42) -> tuple[Dataset, Dataset]:
    """Shuffle with a seeded Fisher-Yates pass, then cut at floor(ratio * n)."""
    if not 0 < train_ratio <= 1:
        raise ValueError("train_ratio must lie in (0, 1]")
    if not ds.labeled:
        raise UnlabeledDataset("split_shuffled needs a labeled dataset")
    if len(ds) == 0:
        raise EmptyDataset("cannot split an empty dataset")
    order = list(range(len(ds)))
    random.Random(seed).shuffle(order)
    cut = _train_size(train_ratio, len(ds))
    recs = ds.records
    return (
        Dataset(tuple(recs[i] for i in order[:cut])),
        Dataset(tuple(recs[i] for i in order[cut:])),
    )


def oversample_random(ds: Dataset, seed: int = 42) -> Dataset:
    """Duplicate records of every present class up to the largest class count.

    Duplicates are appended after the originals, grouped by ascending label,
    and carry ids ``<orig_id>#dupN``.
    """
    if not ds.labeled:
        raise UnlabeledDataset("oversample_random needs a labeled dataset")
    by_class: dict[EventLabel, list[CommentaryRecord]] = {}
    for rec in ds:
        by_class.setdefault(rec.label, []).append(rec)
    if not by_class:
        return ds
    target = max(len(v) for v in by_class.values())
    rng = random.Random(seed)
    dup_count: Counter = Counter()
    extra: list[CommentaryRecord] = []
    for label in sorted(by_class):
        members = by_class[label]
        for _ in range(target - len(members)):
            src = members[rng.randrange(len(members))]
            dup_count[src.id] += 1
            extra.append(replace(src, id=f"{src.id}#dup{dup_count[src.id]}"))
    if not extra:
        return ds
    return Dataset(ds.records + tuple(extra))


def class_counts(labels: Sequence[int]) -> dict[EventLabel, int]:
    tally = Counter(int(y) for y in labels)
    return {label: tally.get(int(label), 0) for label in EventLabel}
