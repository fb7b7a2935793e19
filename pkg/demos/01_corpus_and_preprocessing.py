"""Walk through loading commentary, looking at its balance and cleaning text."""

import tempfile
from pathlib import Path

from commentary_events.corpus import compute_stats, load_dataset, save_dataset, split_shuffled
from commentary_events.fixtures import gen_fixture
from commentary_events.textprep import PipelineConfig, preprocess

# %% A synthetic corpus: every class has its own keyword phrases
ds = gen_fixture(seed=42, per_class=50)
for rec in ds.records[:5]:
    print(f"{rec.label.display_name:<20} {rec.text}")

# %% Round-trip through JSONL, the format the CLI reads
path = Path(tempfile.mkdtemp()) / "commentary.jsonl"
save_dataset(ds, path)
ds = load_dataset(path)
print(len(ds), "records read back from", path.name)

# %% Class balance and sentence length
stats = compute_stats(ds)
print("avg words:", float(stats.avg_words), "avg chars:", float(stats.avg_chars))
print("largest class share:", float(stats.majority_share))

# %% Preprocessing variants on a single sentence
raw = "Penalty conceded by Éder Militão (Real Madrid) after a foul in the penalty area."
for cfg in (
    PipelineConfig(remove_stopwords=False, stem=False),
    PipelineConfig(remove_stopwords=True, stem=False),
    PipelineConfig(remove_stopwords=True, stem=True),
):
    print(cfg.remove_stopwords, cfg.stem, preprocess(raw, cfg))

# %% An 80/20 split, cut at floor(ratio * n)
train, test = split_shuffled(ds, train_ratio=0.8, seed=42)
print("train", len(train), "test", len(test))
