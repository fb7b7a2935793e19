"""Classification metrics, confusion matrices, and model comparison tables.

Zero-denominator convention: a precision, recall, or F1 whose denominator is
zero scores 0 and the report records a flag, so every report stays finite.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .corpus import N_LABELS, EventLabel
from .errors import InvalidInput


@dataclass(frozen=True)
class ClassMetrics:
    precision: float
    recall: float
    f1: float
    support: int


@dataclass(frozen=True, eq=False)
class EvalReport:
    accuracy: float
    precision_macro: float
    recall_macro: float
    f1_macro: float
    precision_weighted: float
    recall_weighted: float
    f1_weighted: float
    per_class: dict[int, ClassMetrics]
    confusion: np.ndarray
    flags: tuple[str, ...] = ()

    @property
    def n(self) -> int:
        return int(self.confusion.sum())

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "accuracy": self.accuracy,
            "precision_macro": self.precision_macro,
            "recall_macro": self.recall_macro,
            "f1_macro": self.f1_macro,
            "precision_weighted": self.precision_weighted,
            "recall_weighted": self.recall_weighted,
            "f1_weighted": self.f1_weighted,
            "per_class": {
                str(c): {"precision": m.precision, "recall": m.recall, "f1": m.f1, "support": m.support}
                for c, m in sorted(self.per_class.items())
            },
            "confusion": self.confusion.tolist(),
            "flags": list(self.flags),
        }

    def to_text(self) -> str:
        lines = [
            f"pairs evaluated   {self.n}",
            f"accuracy          {self.accuracy:.4f}",
            f"precision  macro  {self.precision_macro:.4f}   weighted {self.precision_weighted:.4f}",
            f"recall     macro  {self.recall_macro:.4f}   weighted {self.recall_weighted:.4f}",
            f"f1         macro  {self.f1_macro:.4f}   weighted {self.f1_weighted:.4f}",
            "",
            f"{'class':<20}{'precision':>10}{'recall':>10}{'f1':>10}{'support':>9}",
        ]
        for c, m in sorted(self.per_class.items()):
            name = EventLabel(c).display_name
            lines.append(f"{name:<20}{m.precision:>10.4f}{m.recall:>10.4f}{m.f1:>10.4f}{m.support:>9d}")
        lines += ["", "confusion (rows = true, cols = predicted)"]
        lines.append(" " * 20 + "".join(f"{c:>6d}" for c in range(N_LABELS)))
        for i, row in enumerate(self.confusion):
            lines.append(f"{EventLabel(i).display_name:<20}" + "".join(f"{v:>6d}" for v in row))
        if self.flags:
            lines += [""] + [f"note: {f}" for f in self.flags]
        return "\n".join(lines) + "\n"


def _check(pred: Sequence[int], gold: Sequence[int]) -> None:
    if len(pred) != len(gold):
        raise InvalidInput(f"{len(pred)} predictions for {len(gold)} gold labels")
    if len(gold) == 0:
        raise InvalidInput("no predictions to evaluate")


def accuracy(pred: Sequence[int], gold: Sequence[int]) -> float:
    _check(pred, gold)
    correct = sum(1 for p, g in zip(pred, gold) if int(p) == int(g))
    return correct / len(gold)


def confusion_matrix(pred: Sequence[int], gold: Sequence[int]) -> np.ndarray:
    """12 x 12 counts; rows are true labels, columns predictions."""
    _check(pred, gold)
    out = np.zeros((N_LABELS, N_LABELS), dtype=np.int64)
    np.add.at(out, (np.asarray(gold, dtype=np.int64), np.asarray(pred, dtype=np.int64)), 1)
    return out


def row_normalize(confusion: np.ndarray) -> np.ndarray:
    mat = np.asarray(confusion, dtype=np.float64)
    sums = mat.sum(axis=1, keepdims=True)
    return np.divide(mat, sums, out=np.zeros_like(mat), where=sums > 0)


def _ratio(num: int, den: int, what: str, flags: list[str]) -> float:
    if den == 0:
        flags.append(what)
        return 0.0
    return num / den


def precision_recall_f1(
    pred: Sequence[int], gold: Sequence[int], averaging: str = "macro"
) -> tuple[float, float, float, dict[int, ClassMetrics]]:
    """Averaged (P, R, F1) plus per-class metrics.

    ``macro`` averages over classes seen in gold or pred; ``weighted`` weights
    each gold class by its support.
    """
    if averaging not in ("macro", "weighted"):
        raise ValueError("averaging must be 'macro' or 'weighted'")
    per_class, _ = _per_class(pred, gold)
    return (*_average(per_class, averaging), per_class)


def _per_class(pred, gold) -> tuple[dict[int, ClassMetrics], list[str]]:
    _check(pred, gold)
    pred = [int(p) for p in pred]
    gold = [int(g) for g in gold]
    tp: Counter = Counter()
    n_pred = Counter(pred)
    n_gold = Counter(gold)
    for p, g in zip(pred, gold):
        if p == g:
            tp[p] += 1
    flags: list[str] = []
    out = {}
    for c in sorted(set(n_pred) | set(n_gold)):
        name = EventLabel(c).display_name
        prec = _ratio(tp[c], n_pred[c], f"precision undefined for {name} (never predicted); scored 0", flags)
        rec = _ratio(tp[c], n_gold[c], f"recall undefined for {name} (absent from gold); scored 0", flags)
        f1 = 2 * prec * rec / (prec + rec) if prec + rec > 0 else 0.0
        out[c] = ClassMetrics(prec, rec, f1, n_gold[c])
    return out, flags


def _average(per_class: Mapping[int, ClassMetrics], averaging: str) -> tuple[float, float, float]:
    if averaging == "macro":
        k = len(per_class)
        return (
            sum(m.precision for m in per_class.values()) / k,
            sum(m.recall for m in per_class.values()) / k,
            sum(m.f1 for m in per_class.values()) / k,
        )
    total = sum(m.support for m in per_class.values())
    return (
        sum(m.precision * m.support for m in per_class.values()) / total,
        sum(m.recall * m.support for m in per_class.values()) / total,
        sum(m.f1 * m.support for m in per_class.values()) / total,
    )


def evaluate(pred: Sequence[int], gold: Sequence[int]) -> EvalReport:
    per_class, flags = _per_class(pred, gold)
    pm, rm, fm = _average(per_class, "macro")
    pw, rw, fw = _average(per_class, "weighted")
    return EvalReport(
        accuracy=accuracy(pred, gold),
        precision_macro=pm, recall_macro=rm, f1_macro=fm,
        precision_weighted=pw, recall_weighted=rw, f1_weighted=fw,
        per_class=per_class,
        confusion=confusion_matrix(pred, gold),
        flags=tuple(flags),
    )


# -- model comparison ---------------------------------------------------------

_COLUMNS = ("accuracy", "precision_macro", "recall_macro", "f1_macro", "f1_weighted")


@dataclass(frozen=True)
class ModelComparison:
    rows: tuple[tuple[str, dict[str, float]], ...]
    best: str
    cross: tuple[tuple[str, float], ...] = ()
    best_cross: str | None = None
    columns: tuple[str, ...] = field(default=_COLUMNS)

    def to_json(self) -> dict:
        out = {"columns": list(self.columns), "rows": {n: m for n, m in self.rows}, "best": self.best}
        if self.cross:
            out["cross_source_accuracy"] = {n: a for n, a in self.cross}
            out["best_cross_source"] = self.best_cross
        return out

    def to_text(self) -> str:
        width = max(12, *(len(n) for n, _ in self.rows)) + 2
        head = f"{'model':<{width}}" + "".join(f"{c:>17}" for c in self.columns)
        if self.cross:
            head += f"{'cross_accuracy':>17}"
        lines = [head]
        cross = dict(self.cross)
        for name, metrics in self.rows:
            line = f"{name:<{width}}" + "".join(f"{metrics[c]:>17.4f}" for c in self.columns)
            if self.cross:
                line += f"{cross[name]:>17.4f}" if name in cross else f"{'-':>17}"
            marks = []
            if name == self.best:
                marks.append("best")
            if name == self.best_cross:
                marks.append("best cross-source")
            if marks:
                line += "  <- " + ", ".join(marks)
            lines.append(line)
        return "\n".join(lines) + "\n"


def _best(scores: Mapping[str, float]) -> str:
    return min(scores, key=lambda n: (-scores[n], n))


def compare_models(
    reports: Mapping[str, EvalReport], cross_source: Mapping[str, EvalReport] | None = None
) -> ModelComparison:
    """Tabulate reports by model name; the highest accuracy is flagged (ties to the first name)."""
    if not reports:
        raise InvalidInput("compare_models needs at least one report")
    rows = tuple(
        (name, {c: getattr(reports[name], c) for c in _COLUMNS}) for name in sorted(reports)
    )
    best = _best({n: r.accuracy for n, r in reports.items()})
    cross: tuple = ()
    best_cross = None
    if cross_source:
        cross = tuple((n, cross_source[n].accuracy) for n in sorted(cross_source))
        best_cross = _best(dict(cross))
    return ModelComparison(rows, best, cross, best_cross)


def dumps_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"
