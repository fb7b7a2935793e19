"""Trained classifier containers, scoring, and the JSON model file."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Union

import numpy as np
import scipy.sparse as sp

from ..errors import ParseError, ShapeError, UnsupportedKind, UnsupportedVersion
from ..textprep import PipelineConfig, preprocess
from ..vectorize import SparseVector, TfIdfModel, count_vector, to_csr, transform

FORMAT_VERSION = 1
KINDS = ("svm_ovr", "softmax", "naive_bayes", "boosted_stumps")
# reserved for predictors that live outside this package; never loadable here
RESERVED_KINDS = ("external",)


@dataclass(frozen=True)
class TrainConfig:
    epochs: int = 10
    lam: float = 1e-4
    seed: int = 42
    alpha: float = 1.0
    n_rounds: int = 200
    learning_rate_boost: float = 0.3

    def __post_init__(self):
        if not (isinstance(self.epochs, int) and self.epochs >= 1):
            raise ValueError("epochs must be an integer >= 1")
        if not self.lam > 0:
            raise ValueError("lam must be > 0")
        if not self.alpha > 0:
            raise ValueError("alpha must be > 0")
        if not (isinstance(self.n_rounds, int) and self.n_rounds >= 1):
            raise ValueError("n_rounds must be an integer >= 1")
        if not 0 < self.learning_rate_boost <= 1:
            raise ValueError("learning_rate_boost must lie in (0, 1]")


@dataclass(frozen=True, eq=False)
class LinearModel:
    """Per-class weight rows ``W`` (C x V) and biases ``b`` (C,)."""

    kind: str
    W: np.ndarray
    b: np.ndarray

    def scores(self, X: sp.csr_matrix) -> np.ndarray:
        logits = X @ self.W.T + self.b
        if self.kind == "softmax":
            # log-posteriors: exp() of each row sums to one
            shift = logits.max(axis=1, keepdims=True)
            logits = logits - (shift + np.log(np.exp(logits - shift).sum(axis=1, keepdims=True)))
        return np.asarray(logits)

    @property
    def dim(self) -> int:
        return self.W.shape[1]

    def params(self) -> dict:
        return {"W": self.W.tolist(), "b": self.b.tolist()}


@dataclass(frozen=True, eq=False)
class NaiveBayesModel:
    log_priors: np.ndarray
    log_likelihoods: np.ndarray

    kind = "naive_bayes"

    def scores(self, X: sp.csr_matrix) -> np.ndarray:
        return np.asarray(X @ self.log_likelihoods.T + self.log_priors)

    @property
    def dim(self) -> int:
        return self.log_likelihoods.shape[1]

    def params(self) -> dict:
        return {"log_priors": self.log_priors.tolist(), "log_likelihoods": self.log_likelihoods.tolist()}


@dataclass(frozen=True, eq=False)
class BoostedStumpsModel:
    """One-vs-rest boosted depth-1 trees.

    Row ``c`` of ``feature``/``threshold``/``left``/``right`` holds the stumps of
    class ``c`` in round order; a stump adds ``left`` when ``x[feature] <= threshold``
    and ``right`` otherwise. Leaf values already include the learning rate.
    """

    base_scores: np.ndarray
    feature: np.ndarray
    threshold: np.ndarray
    left: np.ndarray
    right: np.ndarray
    n_features: int

    kind = "boosted_stumps"

    @property
    def dim(self) -> int:
        return self.n_features

    def staged_scores(self, X: sp.csr_matrix):
        """Yield the logit matrix after each boosting round (round 0 = base scores)."""
        n = X.shape[0]
        used = np.unique(self.feature)
        cols = np.asarray(X[:, used].todense()) if used.size else np.zeros((n, 0))
        pos = {int(f): i for i, f in enumerate(used)}
        F = np.tile(self.base_scores, (n, 1))
        yield F.copy()
        for r in range(self.feature.shape[1]):
            for c in range(self.feature.shape[0]):
                x = cols[:, pos[int(self.feature[c, r])]]
                F[:, c] += np.where(x <= self.threshold[c, r], self.left[c, r], self.right[c, r])
            yield F.copy()

    def scores(self, X: sp.csr_matrix) -> np.ndarray:
        F = None
        for F in self.staged_scores(X):
            pass
        return F

    def params(self) -> dict:
        return {
            "base_scores": self.base_scores.tolist(),
            "feature": self.feature.tolist(),
            "threshold": self.threshold.tolist(),
            "left": self.left.tolist(),
            "right": self.right.tolist(),
            "n_features": self.n_features,
        }


Inner = Union[LinearModel, NaiveBayesModel, BoostedStumpsModel]


@dataclass(frozen=True, eq=False)
class ClassifierModel:
    """A trained classifier plus the embedding it expects.

    ``tfidf`` and ``pipeline`` are optional so that bare vector-space models can
    be trained and scored directly; a deployable model file carries both.
    """

    inner: Inner
    class_ids: tuple[int, ...]
    tfidf: TfIdfModel | None = None
    pipeline: PipelineConfig | None = None
    format_version: int = FORMAT_VERSION

    def __post_init__(self):
        object.__setattr__(self, "class_ids", tuple(int(c) for c in self.class_ids))
        if list(self.class_ids) != sorted(set(self.class_ids)):
            raise ShapeError("class_ids must be distinct and ascending")
        if self.tfidf is not None and self.tfidf.dim != self.inner.dim:
            raise ShapeError(f"tf-idf vocabulary has {self.tfidf.dim} terms, model expects {self.inner.dim}")

    @property
    def kind(self) -> str:
        return self.inner.kind

    @property
    def dim(self) -> int:
        return self.inner.dim

    @property
    def uses_counts(self) -> bool:
        return self.kind == "naive_bayes"

    def embed(self, tokens: Sequence[str]) -> SparseVector:
        """Vectorize tokens the way this model was trained (counts for naive Bayes)."""
        if self.tfidf is None:
            raise ValueError("model carries no tf-idf vocabulary")
        return count_vector(self.tfidf, tokens) if self.uses_counts else transform(self.tfidf, tokens)

    def embed_text(self, text: str) -> SparseVector:
        return self.embed(preprocess(text, self.pipeline or PipelineConfig()))


def _as_matrix(model: ClassifierModel, X) -> sp.csr_matrix:
    if isinstance(X, SparseVector):
        X = [X]
    if sp.issparse(X):
        mat = sp.csr_matrix(X)
    else:
        bad = [v.dim for v in X if v.dim != model.dim]
        if bad:
            raise ShapeError(f"vector dimension {bad[0]} does not match model dimension {model.dim}")
        mat = to_csr(list(X), model.dim)
    if mat.shape[1] != model.dim:
        raise ShapeError(f"input dimension {mat.shape[1]} does not match model dimension {model.dim}")
    return mat


def predict_scores_batch(model: ClassifierModel, X) -> np.ndarray:
    """Per-class decision values, one row per input, columns ordered as ``class_ids``.

    svm_ovr: margins; softmax: log-posteriors; naive_bayes: log prior plus
    count-weighted log likelihoods (unnormalized); boosted_stumps: logits.
    """
    return model.inner.scores(_as_matrix(model, X))


def predict_batch(model: ClassifierModel, X) -> list[int]:
    """Argmax of the per-class scores, ties to the lowest label code.

    An input with no nonzero feature carries no evidence and is treated as a
    tie between all classes, so it gets the lowest class id ("No event" when
    that class was trained) regardless of biases or priors.
    """
    mat = _as_matrix(model, X)
    scores = model.inner.scores(mat)
    ids = np.asarray(model.class_ids)
    # argmax returns the first maximum; class_ids ascend, so ties go to the lowest code
    out = ids[np.argmax(scores, axis=1)]
    out[np.diff(mat.indptr) == 0] = ids[0]
    return out.tolist()


def predict_scores(model: ClassifierModel, x: SparseVector) -> np.ndarray:
    return predict_scores_batch(model, x)[0]


def predict(model: ClassifierModel, x: SparseVector) -> int:
    return predict_batch(model, x)[0]


# -- persistence --------------------------------------------------------------

def model_to_json(model: ClassifierModel) -> dict:
    return {
        "format_version": model.format_version,
        "classifier_kind": model.kind,
        "class_ids": list(model.class_ids),
        "tfidf": model.tfidf.to_json() if model.tfidf is not None else None,
        "pipeline": model.pipeline.to_json() if model.pipeline is not None else None,
        "params": model.inner.params(),
    }


def dumps_model(model: ClassifierModel) -> str:
    # float repr is the shortest string that parses back to the same double
    return json.dumps(model_to_json(model), allow_nan=False, ensure_ascii=False) + "\n"


def save_model(model: ClassifierModel, path: str | Path) -> None:
    Path(path).write_text(dumps_model(model), encoding="utf-8")


def _inner_from_json(kind: str, p: dict) -> Inner:
    f64 = lambda key: np.asarray(p[key], dtype=np.float64)  # noqa: E731
    if kind in ("svm_ovr", "softmax"):
        W = f64("W")
        if W.ndim != 2:
            raise ValueError("W must be a matrix")
        return LinearModel(kind, W, f64("b"))
    if kind == "naive_bayes":
        return NaiveBayesModel(f64("log_priors"), f64("log_likelihoods"))
    if kind == "boosted_stumps":
        return BoostedStumpsModel(
            f64("base_scores"),
            np.asarray(p["feature"], dtype=np.int64),
            f64("threshold"),
            f64("left"),
            f64("right"),
            int(p["n_features"]),
        )
    raise AssertionError(kind)


def loads_model(text: str) -> ClassifierModel:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"corrupt model file: {exc.msg}", offset=exc.pos) from None
    if not isinstance(obj, dict) or "format_version" not in obj:
        raise ParseError("not a model file: missing format_version", offset=0)
    if obj["format_version"] != FORMAT_VERSION:
        raise UnsupportedVersion(f"model format version {obj['format_version']!r} is not supported "
                                 f"(expected {FORMAT_VERSION})")
    kind = obj.get("classifier_kind")
    if kind in RESERVED_KINDS:
        raise UnsupportedKind(f"classifier kind {kind!r} is reserved for external predictors")
    if kind not in KINDS:
        raise UnsupportedKind(f"unknown classifier kind {kind!r}")
    try:
        inner = _inner_from_json(kind, obj["params"])
        tfidf = TfIdfModel.from_json(obj["tfidf"]) if obj.get("tfidf") is not None else None
        pipeline = PipelineConfig.from_json(obj["pipeline"]) if obj.get("pipeline") is not None else None
        return ClassifierModel(inner, tuple(obj["class_ids"]), tfidf, pipeline)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed model file: {exc}", offset=0) from None


def load_model(path: str | Path) -> ClassifierModel:
    return loads_model(Path(path).read_text(encoding="utf-8"))
