"""Gradient-boosted decision stumps on the one-vs-rest logistic loss.

Each round fits, per class, the depth-1 regression tree minimizing squared
error against the negative gradient ``y - sigmoid(F)``. Candidate thresholds
are midpoints between consecutive distinct values of a feature (implicit zeros
included). Ties go to the lowest feature index, then the lowest threshold.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np
import scipy.sparse as sp
from scipy.special import expit

from ..textprep import PipelineConfig
from ..vectorize import TfIdfModel
from ._common import check_xy
from .model import BoostedStumpsModel, ClassifierModel, TrainConfig


class _SplitIndex:
    """Per-feature sorted value runs, shared by every round and class.

    Entries are sorted by (feature, value). Stored nonzeros map to their row;
    each feature with implicit zeros gets one pseudo-entry standing for all of
    them, with its weight filled in per round.
    """

    def __init__(self, X: sp.csr_matrix):
        n, dim = X.shape
        csc = X.tocsc()
        csc.sort_indices()
        nnz_col = np.diff(csc.indptr)
        n_zero = n - nnz_col
        nz_col = np.repeat(np.arange(dim), nnz_col)
        zero_col = np.flatnonzero(n_zero)

        col = np.concatenate([nz_col, zero_col])
        val = np.concatenate([csc.data, np.zeros(zero_col.size)])
        row = np.concatenate([csc.indices, np.full(zero_col.size, -1)])
        cnt = np.concatenate([np.ones(nz_col.size), n_zero[zero_col].astype(float)])
        order = np.lexsort((val, col))
        self.col, self.val, self.row, self.cnt = col[order], val[order], row[order], cnt[order]

        self.n = n
        self.dim = dim
        self.nz_rows = csc.indices
        self.nz_cols = nz_col
        self.pseudo = self.row < 0
        self.real = ~self.pseudo

        starts = np.searchsorted(self.col, np.arange(dim))
        self.start = starts[self.col]  # first entry of each entry's feature
        cum_cnt = np.cumsum(self.cnt)
        self.n_left = cum_cnt - np.concatenate([[0.0], cum_cnt])[self.start]
        last = np.arange(self.col.size - 1)
        valid = (self.col[last] == self.col[last + 1]) & (self.val[last] < self.val[last + 1])
        self.split_pos = last[valid]
        lo, hi = self.val[self.split_pos], self.val[self.split_pos + 1]
        mid = (lo + hi) / 2.0
        # for adjacent doubles the midpoint can round up onto hi
        self.split_thr = np.where(mid < hi, mid, lo)

    def best_stump(self, r: np.ndarray):
        """Return (feature, threshold, left_mean, right_mean) for residuals ``r``."""
        total = float(r.sum())
        w = np.empty(self.col.size)
        w[self.real] = r[self.row[self.real]]
        if self.pseudo.any():
            colsum = np.bincount(self.nz_cols, weights=r[self.nz_rows], minlength=self.dim)
            w[self.pseudo] = total - colsum[self.col[self.pseudo]]
        if self.split_pos.size == 0:
            return 0, 0.0, total / self.n, total / self.n
        cum = np.cumsum(w)
        left_sum = cum - np.concatenate([[0.0], cum])[self.start]
        p = self.split_pos
        sl = left_sum[p]
        nl = self.n_left[p]
        sr = total - sl
        nr = self.n - nl
        gain = sl * sl / nl + sr * sr / nr
        # equal splits can differ in the last bits; the first near-maximum wins
        top = gain.max()
        k = int(np.argmax(gain >= top - 1e-12 * max(1.0, abs(top))))
        return int(self.col[p[k]]), float(self.split_thr[k]), float(sl[k] / nl[k]), float(sr[k] / nr[k])


def _stump_output(X: sp.csr_matrix, feature: int, thr: float, left: float, right: float) -> np.ndarray:
    x = X[:, feature].toarray().ravel()
    return np.where(x <= thr, left, right)


def train_boosted_stumps(
    X, y: Sequence[int], cfg: TrainConfig | None = None,
    tfidf: TfIdfModel | None = None, pipeline: PipelineConfig | None = None,
) -> ClassifierModel:
    cfg = cfg or TrainConfig()
    mat, labels, classes = check_xy(X, y)
    n, dim = mat.shape
    index = _SplitIndex(mat)
    csc = mat.tocsc()
    C, R, lr = classes.size, cfg.n_rounds, cfg.learning_rate_boost

    base = np.empty(C)
    feature = np.zeros((C, R), dtype=np.int64)
    threshold = np.zeros((C, R))
    left = np.zeros((C, R))
    right = np.zeros((C, R))
    for c, cls in enumerate(classes):
        target = (labels == cls).astype(float)
        prior = target.mean()
        base[c] = np.log(prior / (1.0 - prior))
        F = np.full(n, base[c])
        for r in range(R):
            f, thr, lv, rv = index.best_stump(target - expit(F))
            feature[c, r], threshold[c, r] = f, thr
            left[c, r], right[c, r] = lr * lv, lr * rv
            F += _stump_output(csc, f, thr, left[c, r], right[c, r])

    inner = BoostedStumpsModel(base, feature, threshold, left, right, dim)
    return ClassifierModel(inner, tuple(classes.tolist()), tfidf, pipeline)


def logistic_loss(model: ClassifierModel, X, y: Sequence[int]) -> list[float]:
    """Summed one-vs-rest logistic loss after each round, starting from the base scores."""
    mat, labels, _ = check_xy(X, y, min_classes=1)
    target = (labels[:, None] == np.asarray(model.class_ids)[None, :]).astype(float)
    out = []
    for F in model.inner.staged_scores(mat):
        # log(1 + exp(-s * F)) with s = +-1
        s = 2.0 * target - 1.0
        out.append(float(np.logaddexp(0.0, -s * F).sum()))
    return out
