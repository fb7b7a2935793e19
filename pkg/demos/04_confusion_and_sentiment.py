"""Read a confusion pattern off the matrix, then summarise sentiment per event."""

import numpy as np

from commentary_events.corpus import CommentaryRecord, Dataset, EventLabel, split_shuffled
from commentary_events.evaluate import confusion_matrix, row_normalize
from commentary_events.fixtures import Confusion, gen_fixture
from commentary_events.pipeline import fit_model, predict_dataset
from commentary_events.sentiment import aggregate_by_event, default_lexicon, score_dataset

# %% Train on clean data, then score a set where about a quarter of the
# handball records are worded like fouls
train, _ = split_shuffled(gen_fixture(seed=42, per_class=100), train_ratio=0.8, seed=42)
svm = fit_model(train, "svm_ovr")
probe = gen_fixture(seed=43, per_class=100, confusions=(Confusion(EventLabel.HANDBALL, EventLabel.FOUL, 0.26),))
pred = predict_dataset(svm, probe)
gold = [int(v) for v in probe.labels]

rates = row_normalize(confusion_matrix(pred, gold))
np.set_printoptions(precision=2, suppress=True, linewidth=120)
print(rates)
print("Handball predicted as Foul:", rates[EventLabel.HANDBALL, EventLabel.FOUL])

# %% Sentiment by event type with the bundled demo lexicon
texts = {
    EventLabel.YELLOW_CARD: ["Reckless lunge, booked.", "Cynical foul, yellow card.", "Yellow card shown."],
    EventLabel.SUBSTITUTION: ["Substitution, fresh legs.", "Superb cameo ends, substitution."],
    EventLabel.HANDBALL: ["Handball in the box."],
}
records = tuple(
    CommentaryRecord(id=f"{label.name}-{i}", text=t, label=label)
    for label, ts in texts.items() for i, t in enumerate(ts)
)
ds = Dataset(records)
report = aggregate_by_event(ds, score_dataset(ds, default_lexicon()))
print(report.to_text())
