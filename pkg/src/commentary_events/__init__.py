"""Event recognition in live football commentary: preprocessing, tf-idf,
classifiers, evaluation, and per-event sentiment reports."""

from .corpus import (
    CommentaryRecord,
    Dataset,
    DatasetStats,
    EventLabel,
    compute_stats,
    load_dataset,
    oversample_random,
    save_dataset,
    split_shuffled,
)
from .textprep import PipelineConfig, clean_text, lemmatize, preprocess, remove_stopwords, stem_porter, tokenize
from .vectorize import SparseVector, TfIdfModel, fit_tfidf, smote_oversample, transform

__version__ = "0.1.0"
