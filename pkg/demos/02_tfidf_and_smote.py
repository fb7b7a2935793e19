"""Sparse tf-idf vectors, cosine similarity and rebalancing a skewed corpus."""

import numpy as np

from commentary_events.corpus import EventLabel, class_counts, oversample_random
from commentary_events.fixtures import gen_fixture
from commentary_events.textprep import preprocess
from commentary_events.vectorize import cosine, fit_tfidf, smote_oversample, transform_many

# %% Fit a vocabulary and idf weights on a handful of sentences
docs = [preprocess(t) for t in (
    "Corner, Liverpool. Conceded by Virgil van Dijk.",
    "Corner, Arsenal. Conceded by Declan Rice.",
    "Foul by Declan Rice (Arsenal).",
    "Offside, Liverpool. Mohamed Salah is caught offside.",
)]
model = fit_tfidf(docs)
X = transform_many(model, docs)
print("vocabulary size:", model.dim)
# terms are stems, so look them up through the same preprocessing
corner, offside = preprocess("corner")[0], preprocess("offside")[0]
print(f"idf {corner}: {model.idf[model.vocab[corner]]:.3f}, idf {offside}: {model.idf[model.vocab[offside]]:.3f}")

# raw similarity follows shared names as much as the event keyword:
# the Rice corner sits closer to the Rice foul than to the other corner
print("corner/corner", round(cosine(X[0], X[1]), 3))
print("corner/foul  ", round(cosine(X[1], X[2]), 3))

# %% A skewed corpus: plenty of fouls, few handballs
counts = {label: 0 for label in EventLabel}
counts.update({EventLabel.FOUL: 100, EventLabel.HANDBALL: 10})
skewed = gen_fixture(seed=7, per_class=1, counts=counts)
print({k.display_name: v for k, v in class_counts(skewed.labels).items() if v})

# %% Option 1: duplicate minority records
dup = oversample_random(skewed, seed=7)
print({k.display_name: v for k, v in class_counts(dup.labels).items() if v})

# %% Option 2: SMOTE interpolates between near neighbours in tf-idf space
docs = [preprocess(r.text) for r in skewed]
X = transform_many(fit_tfidf(docs), docs)
y = [int(v) for v in skewed.labels]
X2, y2, parents = smote_oversample(X, y, k=5, seed=7, return_parents=True)
print("after SMOTE:", np.bincount(y2)[[3, 10]])

# each synthetic point sits coordinate-wise between its two parents
v, (i, j) = X2[len(X)], parents[0]
lo = np.minimum(X[i].to_dense(), X[j].to_dense())
hi = np.maximum(X[i].to_dense(), X[j].to_dense())
print("first synthetic inside parent box:", bool(np.all((lo <= v.to_dense()) & (v.to_dense() <= hi))))
