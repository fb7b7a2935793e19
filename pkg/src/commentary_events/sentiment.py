"""Sentence sentiment providers and per-event-type sentiment aggregation."""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .corpus import CommentaryRecord, Dataset, EventLabel
from .errors import DuplicateId, MissingSentiment, ParseError, UnlabeledDataset
from .textprep import clean_text, tokenize


class SentimentLabel(str, Enum):
    POSITIVE = "positive"
    NEUTRAL = "neutral"
    NEGATIVE = "negative"

    @property
    def display_name(self) -> str:
        return self.value.capitalize()


@dataclass(frozen=True)
class Lexicon:
    positive_terms: frozenset[str]
    negative_terms: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "positive_terms", frozenset(self.positive_terms))
        object.__setattr__(self, "negative_terms", frozenset(self.negative_terms))
        both = self.positive_terms & self.negative_terms
        if both:
            raise ValueError(f"terms listed as both positive and negative: {sorted(both)[:5]}")
        for term in self.positive_terms | self.negative_terms:
            if term != term.lower() or not term or any(c.isspace() for c in term):
                raise ValueError(f"lexicon terms must be lowercase single tokens, got {term!r}")

    def swapped(self) -> "Lexicon":
        return Lexicon(self.negative_terms, self.positive_terms)


def _parse_lexicon(lines: Iterable[str], source: str) -> Lexicon:
    sections: dict[str, set[str]] = {"positive": set(), "negative": set()}
    current = None
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip().lower()
            if current not in sections:
                raise ParseError(f"{source}: unknown section [{current}]", line=lineno)
            continue
        if current is None:
            raise ParseError(f"{source}: term outside a [positive]/[negative] section", line=lineno)
        sections[current].add(line.lower())
    try:
        return Lexicon(frozenset(sections["positive"]), frozenset(sections["negative"]))
    except ValueError as exc:
        raise ParseError(f"{source}: {exc}") from None


def read_lexicon(path: str | Path) -> Lexicon:
    with open(path, encoding="utf-8") as fh:
        return _parse_lexicon(fh, str(path))


def default_lexicon() -> Lexicon:
    text = resources.files("commentary_events.data").joinpath("sentiment_lexicon.txt").read_text("utf-8")
    return _parse_lexicon(text.splitlines(), "sentiment_lexicon.txt")


def score_lexicon(tokens: Sequence[str], lex: Lexicon) -> SentimentLabel:
    """Count lexicon hits (with multiplicity); the larger side wins, ties are neutral."""
    pos = sum(1 for t in tokens if t in lex.positive_terms)
    neg = sum(1 for t in tokens if t in lex.negative_terms)
    if pos > neg:
        return SentimentLabel.POSITIVE
    if neg > pos:
        return SentimentLabel.NEGATIVE
    return SentimentLabel.NEUTRAL


def score_text(text: str, lex: Lexicon) -> SentimentLabel:
    return score_lexicon(tokenize(clean_text(text)), lex)


def score_dataset(ds: Iterable[CommentaryRecord], lex: Lexicon) -> dict[str, SentimentLabel]:
    return {r.id: score_text(r.text, lex) for r in ds}


def load_external_sentiments(path: str | Path) -> dict[str, SentimentLabel]:
    """Read ``{"id": ..., "sentiment": "positive"|"neutral"|"negative"}`` lines."""
    out: dict[str, SentimentLabel] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"malformed JSON: {exc.msg}", line=lineno) from None
            if not isinstance(obj, dict) or not isinstance(obj.get("id"), str) or not obj["id"]:
                raise ParseError("expected an object with a string 'id'", line=lineno)
            raw = obj.get("sentiment")
            try:
                label = SentimentLabel(raw.lower()) if isinstance(raw, str) else None
            except ValueError:
                label = None
            if label is None:
                raise ParseError(f"unknown sentiment {raw!r}", line=lineno)
            if obj["id"] in out:
                raise DuplicateId(obj["id"], line=lineno)
            out[obj["id"]] = label
    return out


@dataclass(frozen=True)
class EventSentiment:
    verdict: SentimentLabel | None
    percentage: Fraction
    n_total: int
    n_pos: int
    n_neg: int
    n_neutral: int
    tie: bool = False


@dataclass(frozen=True)
class SentimentReport:
    rows: dict[EventLabel, EventSentiment]

    def to_json(self) -> dict:
        return {
            str(int(label)): {
                "event_type": label.display_name,
                "verdict": row.verdict.value if row.verdict else None,
                "percentage": float(row.percentage),
                "n_total": row.n_total,
                "n_pos": row.n_pos,
                "n_neg": row.n_neg,
                "n_neutral": row.n_neutral,
                "tie": row.tie,
            }
            for label, row in self.rows.items()
        }

    def to_text(self) -> str:
        lines = [f"{'Event type':<22}{'Sentiment':<22}{'n':>7}"]
        for label, row in self.rows.items():
            if row.verdict is None:
                verdict = "None (tie)" if row.tie else "None"
            else:
                verdict = f"{row.verdict.display_name} ({float(row.percentage) * 100:.2f}%)"
            lines.append(f"{label.display_name:<22}{verdict:<22}{row.n_total:>7d}")
        return "\n".join(lines) + "\n"


def summarize_event(sentiments: Sequence[SentimentLabel]) -> EventSentiment:
    """Discard neutral, keep the majority polarity, report its share of all sentences."""
    n_pos = sum(1 for s in sentiments if s is SentimentLabel.POSITIVE)
    n_neg = sum(1 for s in sentiments if s is SentimentLabel.NEGATIVE)
    n_total = len(sentiments)
    n_neu = n_total - n_pos - n_neg
    if n_pos > n_neg:
        return EventSentiment(SentimentLabel.POSITIVE, Fraction(n_pos, n_total), n_total, n_pos, n_neg, n_neu)
    if n_neg > n_pos:
        return EventSentiment(SentimentLabel.NEGATIVE, Fraction(n_neg, n_total), n_total, n_pos, n_neg, n_neu)
    return EventSentiment(None, Fraction(0), n_total, n_pos, n_neg, n_neu, tie=n_pos > 0)


def aggregate_by_event(
    records: Dataset | Iterable[CommentaryRecord], sentiments: Mapping[str, SentimentLabel]
) -> SentimentReport:
    buckets: dict[EventLabel, list[SentimentLabel]] = {label: [] for label in EventLabel}
    for rec in records:
        if rec.label is None:
            raise UnlabeledDataset(f"record {rec.id!r} has no event label")
        if rec.id not in sentiments:
            raise MissingSentiment(rec.id)
        buckets[rec.label].append(sentiments[rec.id])
    return SentimentReport({label: summarize_event(s) for label, s in buckets.items()})
