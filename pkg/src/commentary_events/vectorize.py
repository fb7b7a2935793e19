"""tf-idf embedding of token lists and feature-space SMOTE rebalancing.

Weights use the smoothed inverse document frequency

    idf(t) = ln((1 + n_docs) / (1 + df(t))) + 1

applied to raw term counts, followed by optional L2 normalization.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp

from .errors import EmptyVocabulary, ShapeError

__all__ = [
    "SparseVector",
    "TfIdfModel",
    "fit_tfidf",
    "transform",
    "transform_many",
    "count_vector",
    "to_csr",
    "cosine",
    "smote_oversample",
]


@dataclass(frozen=True, eq=False)
class SparseVector:
    """Sorted (index, value) pairs over a fixed dimension."""

    indices: np.ndarray
    values: np.ndarray
    dim: int

    def __post_init__(self):
        idx = np.asarray(self.indices, dtype=np.int64)
        val = np.asarray(self.values, dtype=np.float64)
        if idx.ndim != 1 or idx.shape != val.shape:
            raise ShapeError("indices and values must be 1-d arrays of equal length")
        if idx.size:
            if idx[0] < 0 or idx[-1] >= self.dim or np.any(np.diff(idx) <= 0):
                raise ShapeError("indices must be strictly increasing and inside [0, dim)")
            if np.any(val == 0):
                raise ShapeError("sparse vectors store nonzero values only")
        idx.setflags(write=False)
        val.setflags(write=False)
        object.__setattr__(self, "indices", idx)
        object.__setattr__(self, "values", val)

    @classmethod
    def zeros(cls, dim: int) -> "SparseVector":
        return cls(np.empty(0, np.int64), np.empty(0, np.float64), dim)

    @classmethod
    def from_dense(cls, dense: Sequence[float]) -> "SparseVector":
        arr = np.asarray(dense, dtype=np.float64)
        nz = np.flatnonzero(arr)
        return cls(nz, arr[nz], arr.size)

    @classmethod
    def from_mapping(cls, entries: dict[int, float], dim: int) -> "SparseVector":
        items = sorted((i, v) for i, v in entries.items() if v != 0)
        return cls(
            np.fromiter((i for i, _ in items), np.int64, len(items)),
            np.fromiter((v for _, v in items), np.float64, len(items)),
            dim,
        )

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.dim)
        out[self.indices] = self.values
        return out

    @property
    def nnz(self) -> int:
        return int(self.indices.size)

    def norm(self) -> float:
        return float(np.sqrt(np.dot(self.values, self.values)))

    def dot(self, other: "SparseVector") -> float:
        if other.dim != self.dim:
            raise ShapeError(f"dimension mismatch: {self.dim} vs {other.dim}")
        common, ia, ib = np.intersect1d(self.indices, other.indices, assume_unique=True, return_indices=True)
        return float(np.dot(self.values[ia], other.values[ib]))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseVector):
            return NotImplemented
        return (
            self.dim == other.dim
            and np.array_equal(self.indices, other.indices)
            and np.array_equal(self.values, other.values)
        )

    def __repr__(self) -> str:
        return f"SparseVector(nnz={self.nnz}, dim={self.dim})"


def cosine(a: SparseVector, b: SparseVector) -> float:
    na, nb = a.norm(), b.norm()
    if na == 0 or nb == 0:
        return 0.0
    return a.dot(b) / (na * nb)


def to_csr(vectors: Sequence[SparseVector], dim: int | None = None) -> sp.csr_matrix:
    """Stack vectors as rows of a CSR matrix."""
    if dim is None:
        if not vectors:
            raise ShapeError("cannot infer dimension of an empty batch")
        dim = vectors[0].dim
    if any(v.dim != dim for v in vectors):
        raise ShapeError("all vectors must share one dimension")
    indptr = np.zeros(len(vectors) + 1, dtype=np.int64)
    np.cumsum([v.nnz for v in vectors], out=indptr[1:])
    if vectors:
        indices = np.concatenate([v.indices for v in vectors])
        data = np.concatenate([v.values for v in vectors])
    else:
        indices = np.empty(0, np.int64)
        data = np.empty(0)
    return sp.csr_matrix((data, indices, indptr), shape=(len(vectors), dim))


@dataclass(frozen=True, eq=False)
class TfIdfModel:
    terms: tuple[str, ...]
    df: np.ndarray
    n_docs: int
    l2_normalize: bool = True
    min_df: int = 1
    vocab: dict[str, int] = field(init=False, repr=False)
    idf: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        df = np.asarray(self.df, dtype=np.int64)
        if df.shape != (len(self.terms),):
            raise ShapeError("df must have one entry per term")
        df.setflags(write=False)
        idf = np.log((1.0 + self.n_docs) / (1.0 + df)) + 1.0
        idf.setflags(write=False)
        object.__setattr__(self, "terms", tuple(self.terms))
        object.__setattr__(self, "df", df)
        object.__setattr__(self, "vocab", {t: i for i, t in enumerate(self.terms)})
        object.__setattr__(self, "idf", idf)

    @property
    def dim(self) -> int:
        return len(self.terms)

    def to_json(self) -> dict:
        return {
            "terms": list(self.terms),
            "df": [int(d) for d in self.df],
            "n_docs": self.n_docs,
            "l2": self.l2_normalize,
            "min_df": self.min_df,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "TfIdfModel":
        return cls(tuple(obj["terms"]), np.asarray(obj["df"], dtype=np.int64), int(obj["n_docs"]),
                   bool(obj["l2"]), int(obj["min_df"]))


def fit_tfidf(corpus: Sequence[Sequence[str]], min_df: int = 1, l2: bool = True) -> TfIdfModel:
    """Build the vocabulary (first-occurrence order) and document frequencies."""
    if min_df < 1:
        raise ValueError("min_df must be >= 1")
    if len(corpus) == 0:
        raise EmptyVocabulary("cannot fit tf-idf on an empty corpus")
    df: Counter = Counter()
    order: dict[str, None] = {}
    for doc in corpus:
        uniq = dict.fromkeys(doc)
        df.update(uniq.keys())
        for t in uniq:
            order.setdefault(t, None)
    terms = tuple(t for t in order if df[t] >= min_df)
    if not terms:
        raise EmptyVocabulary(f"no term reaches min_df={min_df}")
    return TfIdfModel(terms, np.array([df[t] for t in terms], dtype=np.int64), len(corpus), l2, min_df)


def _counts(model: TfIdfModel, doc: Iterable[str]) -> tuple[np.ndarray, np.ndarray]:
    vocab = model.vocab
    tally = Counter(vocab[t] for t in doc if t in vocab)
    if not tally:
        return np.empty(0, np.int64), np.empty(0, np.float64)
    idx = np.fromiter(sorted(tally), np.int64, len(tally))
    cnt = np.fromiter((tally[i] for i in idx), np.float64, len(tally))
    return idx, cnt


def count_vector(model: TfIdfModel, doc: Iterable[str]) -> SparseVector:
    """Raw in-vocabulary term counts (the naive Bayes input)."""
    idx, cnt = _counts(model, doc)
    return SparseVector(idx, cnt, model.dim)


def transform(model: TfIdfModel, doc: Iterable[str]) -> SparseVector:
    idx, cnt = _counts(model, doc)
    if idx.size == 0:
        return SparseVector.zeros(model.dim)
    val = cnt * model.idf[idx]
    if model.l2_normalize:
        val = val / np.sqrt(np.dot(val, val))
    return SparseVector(idx, val, model.dim)


def transform_many(model: TfIdfModel, docs: Iterable[Iterable[str]], counts: bool = False) -> list[SparseVector]:
    fn = count_vector if counts else transform
    return [fn(model, d) for d in docs]


# -- SMOTE -------------------------------------------------------------------

def _neighbour_table(block: sp.csr_matrix, k: int) -> np.ndarray:
    """k nearest other rows for every row, Euclidean, ties to the lower row index."""
    sq = np.asarray(block.multiply(block).sum(axis=1)).ravel()
    gram = (block @ block.T).toarray()
    dist = np.maximum(sq[:, None] + sq[None, :] - 2.0 * gram, 0.0)
    n = dist.shape[0]
    np.fill_diagonal(dist, np.inf)
    cols = np.arange(n)
    table = np.empty((n, k), dtype=np.int64)
    for i in range(n):
        order = np.lexsort((cols, dist[i]))
        table[i] = order[:k]
    return table


def _interpolate(a: SparseVector, b: SparseVector, u: float) -> SparseVector:
    idx = np.union1d(a.indices, b.indices)
    va = np.zeros(idx.size)
    vb = np.zeros(idx.size)
    va[np.searchsorted(idx, a.indices)] = a.values
    vb[np.searchsorted(idx, b.indices)] = b.values
    new = va + u * (vb - va)
    # rounding can push a coordinate a hair outside its parents' interval
    new = np.clip(new, np.minimum(va, vb), np.maximum(va, vb))
    keep = new != 0
    return SparseVector(idx[keep], new[keep], a.dim)


def smote_oversample(
    X: Sequence[SparseVector], y: Sequence[int], k: int = 5, seed: int = 42, return_parents: bool = False
):
    """Raise every class to the majority count with synthetic interpolated points.

    Each synthetic point is ``x_i + u * (x_nn - x_i)`` with ``x_i`` drawn from the
    class, ``x_nn`` one of its ``k`` nearest same-class neighbours and ``u`` uniform
    in [0, 1). A class with a single member is padded by duplication. Output is the
    originals followed by the synthetics, grouped by ascending label.

    With ``return_parents`` a third list gives, per synthetic point, the indices
    into ``X`` of the two points it was interpolated between.
    """
    if len(X) != len(y):
        raise ShapeError(f"X has {len(X)} rows but y has {len(y)} labels")
    if len(X) < 2:
        raise ShapeError("smote_oversample needs at least two samples")
    if k < 1:
        raise ValueError("k must be >= 1")
    dim = X[0].dim
    if any(v.dim != dim for v in X):
        raise ShapeError("all vectors must share one dimension")

    labels = [int(v) for v in y]
    members: dict[int, list[int]] = {}
    for i, label in enumerate(labels):
        members.setdefault(label, []).append(i)
    target = max(len(m) for m in members.values())
    rng = np.random.default_rng(seed)

    X_out = list(X)
    y_out = list(labels)
    parents: list[tuple[int, int]] = []
    for label in sorted(members):
        rows = members[label]
        need = target - len(rows)
        if need == 0:
            continue
        if len(rows) == 1:
            X_out.extend([X[rows[0]]] * need)
            y_out.extend([label] * need)
            parents.extend([(rows[0], rows[0])] * need)
            continue
        kk = max(1, min(k, len(rows) - 1))
        nn = _neighbour_table(to_csr([X[i] for i in rows], dim), kk)
        for _ in range(need):
            i = int(rng.integers(len(rows)))
            j = int(nn[i, int(rng.integers(kk))])
            u = float(rng.random())
            X_out.append(_interpolate(X[rows[i]], X[rows[j]], u))
            y_out.append(label)
            parents.append((rows[i], rows[j]))
    if return_parents:
        return X_out, y_out, parents
    return X_out, y_out
