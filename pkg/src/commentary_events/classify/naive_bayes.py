"""Multinomial naive Bayes over raw term counts with Laplace smoothing."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..errors import InvalidInput
from ..textprep import PipelineConfig
from ..vectorize import TfIdfModel
from ._common import check_xy
from .model import ClassifierModel, NaiveBayesModel, TrainConfig


def train_naive_bayes(
    X_counts, y: Sequence[int], cfg: TrainConfig | None = None,
    tfidf: TfIdfModel | None = None, pipeline: PipelineConfig | None = None,
) -> ClassifierModel:
    cfg = cfg or TrainConfig()
    mat, labels, classes = check_xy(X_counts, y, min_classes=1)
    if mat.nnz and mat.data.min() < 0:
        raise InvalidInput("naive Bayes needs non-negative term counts")
    n, dim = mat.shape
    col = np.searchsorted(classes, labels)
    onehot = np.zeros((n, classes.size))
    onehot[np.arange(n), col] = 1.0
    term_counts = np.asarray((mat.T @ onehot).T)  # C x V
    smoothed = term_counts + cfg.alpha
    log_lik = np.log(smoothed) - np.log(smoothed.sum(axis=1, keepdims=True))
    log_prior = np.log(onehot.sum(axis=0)) - np.log(n)
    return ClassifierModel(NaiveBayesModel(log_prior, log_lik), tuple(classes.tolist()), tfidf, pipeline)
