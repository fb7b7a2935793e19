"""One-vs-rest linear SVM and softmax regression trained with Pegasos-style SGD.

Both trainers take one sample per step with step size 1 / (lam * t) and L2
shrinkage. The bias is handled as a weight on a constant feature and is
shrunk with the rest. The running weights after step t are kept as
``A_t / (lam * t)`` where ``A_t`` accumulates the raw update directions, so no
per-step rescaling of the full matrix is needed.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..textprep import PipelineConfig
from ..vectorize import TfIdfModel
from ._common import check_xy
from .model import ClassifierModel, LinearModel, TrainConfig


def _sgd(X, labels, classes, cfg: TrainConfig, loss: str):
    n, dim = X.shape
    C = classes.size
    col = np.searchsorted(classes, labels)
    A = np.zeros((C, dim))
    a = np.zeros(C)
    indptr, indices, data = X.indptr, X.indices, X.data
    rng = np.random.default_rng(cfg.seed)
    lam = cfg.lam
    t = 0
    for _ in range(cfg.epochs):
        for i in rng.permutation(n):
            t += 1
            lo, hi = indptr[i], indptr[i + 1]
            idx = indices[lo:hi]
            val = data[lo:hi]
            if t == 1:
                f = np.zeros(C)
            else:
                f = (A[:, idx] @ val + a) / (lam * (t - 1))
            if loss == "hinge":
                sign = -np.ones(C)
                sign[col[i]] = 1.0
                step = np.where(sign * f < 1.0, sign, 0.0)
            else:
                p = np.exp(f - f.max())
                p /= p.sum()
                step = -p
                step[col[i]] += 1.0
            hit = np.flatnonzero(step)
            if hit.size:
                A[np.ix_(hit, idx)] += np.outer(step[hit], val)
                a[hit] += step[hit]
    scale = lam * t
    return A / scale, a / scale


def _wrap(kind, W, b, classes, tfidf, pipeline) -> ClassifierModel:
    return ClassifierModel(LinearModel(kind, W, b), tuple(classes.tolist()), tfidf, pipeline)


def train_svm_ovr(
    X, y: Sequence[int], cfg: TrainConfig | None = None,
    tfidf: TfIdfModel | None = None, pipeline: PipelineConfig | None = None,
) -> ClassifierModel:
    """Hinge loss with L2 regularization, one binary problem per class."""
    cfg = cfg or TrainConfig()
    mat, labels, classes = check_xy(X, y)
    W, b = _sgd(mat, labels, classes, cfg, "hinge")
    return _wrap("svm_ovr", W, b, classes, tfidf, pipeline)


def train_softmax(
    X, y: Sequence[int], cfg: TrainConfig | None = None,
    tfidf: TfIdfModel | None = None, pipeline: PipelineConfig | None = None,
) -> ClassifierModel:
    """Multinomial logistic loss with L2 regularization."""
    cfg = cfg or TrainConfig()
    mat, labels, classes = check_xy(X, y)
    W, b = _sgd(mat, labels, classes, cfg, "logistic")
    return _wrap("softmax", W, b, classes, tfidf, pipeline)


def hinge_objective(model: ClassifierModel, X, y: Sequence[int], lam: float) -> float:
    """Mean one-vs-rest hinge loss plus (lam / 2) * ||[W, b]||^2."""
    mat, labels, _ = check_xy(X, y, min_classes=1)
    inner = model.inner
    margins = mat @ inner.W.T + inner.b
    sign = np.where(labels[:, None] == np.asarray(model.class_ids)[None, :], 1.0, -1.0)
    hinge = np.maximum(0.0, 1.0 - sign * margins).sum(axis=1).mean()
    return float(hinge + 0.5 * lam * (np.sum(inner.W ** 2) + np.sum(inner.b ** 2)))
