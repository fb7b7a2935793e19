"""Classifier families over tf-idf vectors, sharing one predict contract."""

from .boosting import logistic_loss, train_boosted_stumps
from .linear import hinge_objective, train_softmax, train_svm_ovr
from .model import (
    FORMAT_VERSION,
    KINDS,
    BoostedStumpsModel,
    ClassifierModel,
    LinearModel,
    NaiveBayesModel,
    TrainConfig,
    dumps_model,
    load_model,
    loads_model,
    predict,
    predict_batch,
    predict_scores,
    predict_scores_batch,
    save_model,
)
from .naive_bayes import train_naive_bayes

TRAINERS = {
    "svm_ovr": train_svm_ovr,
    "softmax": train_softmax,
    "naive_bayes": train_naive_bayes,
    "boosted_stumps": train_boosted_stumps,
}


def train(kind: str, X, y, cfg: TrainConfig | None = None, **kwargs) -> ClassifierModel:
    try:
        trainer = TRAINERS[kind]
    except KeyError:
        raise ValueError(f"unknown classifier kind {kind!r}; choose from {', '.join(KINDS)}") from None
    return trainer(X, y, cfg, **kwargs)


__all__ = [
    "FORMAT_VERSION", "KINDS", "TRAINERS", "BoostedStumpsModel", "ClassifierModel", "LinearModel",
    "NaiveBayesModel", "TrainConfig", "dumps_model", "hinge_objective", "load_model", "loads_model",
    "logistic_loss", "predict", "predict_batch", "predict_scores", "predict_scores_batch", "save_model",
    "train", "train_boosted_stumps", "train_naive_bayes", "train_softmax", "train_svm_ovr",
]
