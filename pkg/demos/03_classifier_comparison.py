"""Train the four classifier families and compare them in and out of source."""

import tempfile
from pathlib import Path

from commentary_events.classify import KINDS, load_model, predict, save_model
from commentary_events.corpus import EventLabel, split_shuffled
from commentary_events.evaluate import compare_models
from commentary_events.fixtures import gen_fixture
from commentary_events.pipeline import evaluate_dataset, fit_model

# %% Template set "a" for training, set "b" (other sentence shapes) as a second source
train, test = split_shuffled(gen_fixture(seed=42, per_class=100), train_ratio=0.8, seed=42)
other = gen_fixture(seed=43, per_class=100, template_set="b")
print(train.records[0].text)
print(other.records[0].text)

# %% Fit each family; tf-idf is fitted on the training records only
models = {kind: fit_model(train, kind) for kind in KINDS}
reports = {kind: evaluate_dataset(m, test) for kind, m in models.items()}
cross = {kind: evaluate_dataset(m, other) for kind, m in models.items()}
print(compare_models(reports, cross).to_text())

# %% Per-class view for the linear SVM
print(reports["svm_ovr"].to_text())

# %% A saved model is a single JSON file and predicts identically after reload
path = Path(tempfile.mkdtemp()) / "svm.model.json"
save_model(models["svm_ovr"], path)
svm = load_model(path)
for text in ("Offside, Napoli. Victor Osimhen is caught offside.", "Kick-off at Anfield.", ""):
    print(f"{text!r:<55} -> {EventLabel(predict(svm, svm.embed_text(text))).display_name}")
