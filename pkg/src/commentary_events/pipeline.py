"""End-to-end helpers: dataset -> tokens -> vectors -> classifier -> report."""

from __future__ import annotations

from dataclasses import dataclass, field

from .classify import ClassifierModel, TrainConfig, predict_batch, train
from .corpus import Dataset, oversample_random
from .evaluate import EvalReport, evaluate
from .textprep import PipelineConfig, preprocess
from .vectorize import fit_tfidf, smote_oversample, transform_many

OVERSAMPLING = ("none", "random", "smote")


@dataclass(frozen=True)
class ExperimentConfig:
    pipeline: PipelineConfig = field(default_factory=PipelineConfig)
    train: TrainConfig = field(default_factory=TrainConfig)
    min_df: int = 1
    l2: bool = True
    oversample: str = "none"
    smote_k: int = 5

    def __post_init__(self):
        if self.oversample not in OVERSAMPLING:
            raise ValueError(f"oversample must be one of {OVERSAMPLING}")


def tokenize_dataset(ds: Dataset, cfg: PipelineConfig) -> list[list[str]]:
    return [preprocess(r.text, cfg) for r in ds]


def fit_model(train_ds: Dataset, kind: str, cfg: ExperimentConfig | None = None) -> ClassifierModel:
    """Preprocess, fit tf-idf on the training records, optionally rebalance, train."""
    cfg = cfg or ExperimentConfig()
    if cfg.oversample == "random":
        train_ds = oversample_random(train_ds, seed=cfg.train.seed)
    docs = tokenize_dataset(train_ds, cfg.pipeline)
    tfidf = fit_tfidf(docs, min_df=cfg.min_df, l2=cfg.l2)
    X = transform_many(tfidf, docs, counts=(kind == "naive_bayes"))
    y = [int(v) for v in train_ds.labels]
    if cfg.oversample == "smote":
        X, y = smote_oversample(X, y, k=cfg.smote_k, seed=cfg.train.seed)
    return train(kind, X, y, cfg.train, tfidf=tfidf, pipeline=cfg.pipeline)


def predict_dataset(model: ClassifierModel, ds: Dataset) -> list[int]:
    if len(ds) == 0:
        return []
    return predict_batch(model, [model.embed_text(r.text) for r in ds])


def evaluate_dataset(model: ClassifierModel, ds: Dataset) -> EvalReport:
    return evaluate(predict_dataset(model, ds), [int(v) for v in ds.labels])
