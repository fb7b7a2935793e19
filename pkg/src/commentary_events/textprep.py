"""Sentence cleaning and tokenization: clean, split, drop stop words, stem or lemmatize."""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

from .errors import ConfigError, ParseError
from .porter import stem_porter

__all__ = [
    "PipelineConfig",
    "clean_text",
    "tokenize",
    "remove_stopwords",
    "stem_porter",
    "lemmatize",
    "preprocess",
    "default_stopwords",
    "read_stopwords",
    "read_lemma_table",
]

_APOSTROPHES = re.compile("['’]")
_NON_ALNUM = re.compile(r"[^a-z0-9]+")
_NON_ALNUM_CASED = re.compile(r"[^A-Za-z0-9]+")


def _parse_stopwords(lines: Iterable[str]) -> frozenset[str]:
    words = set()
    for raw in lines:
        line = raw.split("#", 1)[0].strip()
        if line:
            words.add(line.lower())
    return frozenset(words)


@lru_cache(maxsize=1)
def default_stopwords() -> frozenset[str]:
    text = resources.files("commentary_events.data").joinpath("stopwords_en.txt").read_text("utf-8")
    return _parse_stopwords(text.splitlines())


def read_stopwords(path: str | Path) -> frozenset[str]:
    """One term per line; ``#`` starts a comment."""
    with open(path, encoding="utf-8") as fh:
        words = _parse_stopwords(fh)
    bad = [w for w in words if not w or any(c.isspace() for c in w)]
    if bad:
        raise ParseError(f"stop words may not contain whitespace: {sorted(bad)[:3]}")
    return words


def read_lemma_table(path: str | Path) -> dict[str, str]:
    """TSV ``token<TAB>lemma`` pairs, one per line."""
    table: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2 or not parts[0] or not parts[1]:
                raise ParseError("expected 'token<TAB>lemma'", line=lineno)
            table[parts[0]] = parts[1]
    return table


@dataclass(frozen=True)
class PipelineConfig:
    lowercase: bool = True
    strip_punct: bool = True
    remove_stopwords: bool = True
    stem: bool = True
    lemmatize: bool = False
    stopword_list: frozenset[str] = field(default_factory=default_stopwords)
    lemma_table: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if self.stem and self.lemmatize:
            raise ConfigError("stem and lemmatize cannot both be enabled")
        object.__setattr__(self, "stopword_list", frozenset(self.stopword_list))
        bad = [w for w in self.stopword_list if w != w.lower() or not w or any(c.isspace() for c in w)]
        if bad:
            raise ConfigError(f"stop words must be lowercase single terms: {sorted(bad)[:3]}")

    def to_json(self) -> dict:
        return {
            "lowercase": self.lowercase,
            "strip_punct": self.strip_punct,
            "remove_stopwords": self.remove_stopwords,
            "stem": self.stem,
            "lemmatize": self.lemmatize,
            "stopwords": sorted(self.stopword_list),
            "lemma_table": dict(sorted(self.lemma_table.items())),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PipelineConfig":
        return cls(
            lowercase=obj["lowercase"],
            strip_punct=obj["strip_punct"],
            remove_stopwords=obj["remove_stopwords"],
            stem=obj["stem"],
            lemmatize=obj["lemmatize"],
            stopword_list=frozenset(obj["stopwords"]),
            lemma_table=dict(obj["lemma_table"]),
        )


def _fold_accents(text: str) -> str:
    decomposed = unicodedata.normalize("NFKD", text)
    return "".join(c for c in decomposed if not unicodedata.combining(c))


def clean_text(raw: str, lowercase: bool = True) -> str:
    """Lowercase, delete apostrophes, turn every other non-alphanumeric run into one space.

    Accented letters are folded to their ASCII base first ("Mbappé" -> "mbappe").

    >>> clean_text("Kane's shot—saved")
    'kanes shot saved'
    """
    text = _APOSTROPHES.sub("", _fold_accents(raw))
    if lowercase:
        return _NON_ALNUM.sub(" ", text.lower()).strip()
    return _NON_ALNUM_CASED.sub(" ", text).strip()


def tokenize(cleaned: str) -> list[str]:
    return cleaned.split(" ") if cleaned else []


def remove_stopwords(tokens: list[str], stopwords: frozenset[str] | set[str]) -> list[str]:
    return [t for t in tokens if t not in stopwords]


def lemmatize(token: str, table: Mapping[str, str]) -> str:
    return table.get(token, token)


def preprocess(raw: str, cfg: PipelineConfig | None = None) -> list[str]:
    """Run the full pipeline on one sentence.

    Order is fixed: clean, tokenize, stop-word filter, then stem or lemmatize.
    With ``strip_punct`` off the sentence is split on whitespace as-is.
    """
    cfg = cfg or PipelineConfig()
    if cfg.strip_punct:
        tokens = tokenize(clean_text(raw, lowercase=cfg.lowercase))
    else:
        tokens = (raw.lower() if cfg.lowercase else raw).split()
    if cfg.remove_stopwords:
        tokens = remove_stopwords(tokens, cfg.stopword_list)
    if cfg.stem:
        tokens = [stem_porter(t) for t in tokens]
    elif cfg.lemmatize:
        tokens = [lemmatize(t, cfg.lemma_table) for t in tokens]
    return tokens
