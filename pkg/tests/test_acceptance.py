"""End-to-end acceptance checks.

Each check prints one ``PASS``/``FAIL`` line and then asserts. Run with
``pytest tests/test_acceptance.py -v`` (the lines are repeated in the
terminal summary) or directly as ``python3 tests/test_acceptance.py``.
"""

import json
import random
import sys
import time
from fractions import Fraction
from math import log, sqrt
from pathlib import Path

import numpy as np
import pytest

from commentary_events.classify import KINDS, load_model, predict_batch, predict_scores_batch, save_model
from commentary_events.cli import main as cli_main
from commentary_events.corpus import CommentaryRecord, Dataset, EventLabel, class_counts, oversample_random, split_shuffled
from commentary_events.evaluate import confusion_matrix, evaluate, row_normalize
from commentary_events.fixtures import Confusion, gen_fixture
from commentary_events.pipeline import evaluate_dataset, fit_model, predict_dataset
from commentary_events.porter import stem_porter
from commentary_events.sentiment import SentimentLabel, aggregate_by_event, default_lexicon, score_dataset
from commentary_events.vectorize import SparseVector, fit_tfidf, smote_oversample, transform, transform_many

DATA = Path(__file__).parent / "data"
RESULTS: list[str] = []


def report(n: int, title: str, ok: bool, detail: str) -> None:
    line = f"criterion {n} [{'PASS' if ok else 'FAIL'}] {title}: {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def fixture_split():
    ds = gen_fixture(seed=42, per_class=100, noise=0.0, template_set="a")
    return split_shuffled(ds, train_ratio=0.8, seed=42)


# -- 1. metrics against a brute recount ---------------------------------------

def _brute_metrics(pred, gold):
    n = len(gold)
    conf = [[0] * 12 for _ in range(12)]
    for i in range(n):
        conf[gold[i]][pred[i]] += 1
    correct = 0
    for c in range(12):
        correct += conf[c][c]
    classes = [c for c in range(12) if any(conf[c]) or any(conf[r][c] for r in range(12))]
    per = {}
    for c in classes:
        tp = conf[c][c]
        col = sum(conf[r][c] for r in range(12))
        row = sum(conf[c])
        p = tp / col if col else 0.0
        r = tp / row if row else 0.0
        f = 2 * p * r / (p + r) if p + r else 0.0
        per[c] = (p, r, f, row)
    macro = [sum(per[c][j] for c in classes) / len(classes) for j in range(3)]
    weighted = [sum(per[c][j] * per[c][3] for c in classes) / n for j in range(3)]
    return correct / n, conf, per, macro, weighted


def test_criterion_1_metric_oracle():
    rnd = random.Random(1)
    cases = []
    for _ in range(1000):
        n = rnd.randint(1, 60)
        pool = rnd.sample(range(12), rnd.randint(1, 12))
        cases.append(([rnd.choice(pool) for _ in range(n)], [rnd.choice(pool) for _ in range(n)]))
    start = time.perf_counter()
    reports = [evaluate(p, g) for p, g in cases]
    elapsed = time.perf_counter() - start
    worst = 0.0
    for (pred, gold), rep in zip(cases, reports):
        acc, conf, per, macro, weighted = _brute_metrics(pred, gold)
        assert rep.confusion.tolist() == conf
        got = [rep.accuracy, rep.precision_macro, rep.recall_macro, rep.f1_macro,
               rep.precision_weighted, rep.recall_weighted, rep.f1_weighted]
        want = [acc, *macro, *weighted]
        assert sorted(rep.per_class) == sorted(per)
        for c, m in rep.per_class.items():
            got += [m.precision, m.recall, m.f1, m.support]
            want += list(per[c])
        worst = max(worst, max(abs(a - b) for a, b in zip(got, want)))
    ok = worst <= 1e-12 and elapsed < 1.0
    report(1, "metric oracle", ok, f"1000 fixtures, max abs diff {worst:.1e}, {elapsed:.3f}s")


# -- 2. tf-idf against a dense computation -------------------------------------

def _dense_tfidf(corpus):
    vocab = []
    for doc in corpus:
        for t in doc:
            if t not in vocab:
                vocab.append(t)
    n = len(corpus)
    counts = [[doc.count(t) for t in vocab] for doc in corpus]
    df = [sum(1 for row in counts if row[j]) for j in range(len(vocab))]
    idf = [log((1 + n) / (1 + d)) + 1 for d in df]
    out = []
    for row in counts:
        w = [c * i for c, i in zip(row, idf)]
        norm = sqrt(sum(x * x for x in w))
        out.append([x / norm if norm else 0.0 for x in w])
    return out


def test_criterion_2_tfidf_oracle():
    rnd = random.Random(2)
    worst, n_corpora = 0.0, 0
    for _ in range(2000):
        n_terms = rnd.randint(1, 20)
        terms = [f"t{j}" for j in range(n_terms)]
        corpus = [[rnd.choice(terms) for _ in range(rnd.randint(0, 12))] for _ in range(rnd.randint(1, 10))]
        if not any(corpus):
            continue
        model = fit_tfidf(corpus)
        got = np.array([transform(model, d).to_dense() for d in corpus])
        want = np.array(_dense_tfidf(corpus))
        assert got.shape == want.shape
        worst = max(worst, float(np.max(np.abs(got - want))))
        n_corpora += 1
    report(2, "tf-idf oracle", worst <= 1e-12, f"{n_corpora} corpora, max abs diff {worst:.1e}")


# -- 3. Porter stemmer conformance --------------------------------------------

def test_criterion_3_porter():
    vocab = json.loads((DATA / "porter_vocab.json").read_text())
    frozen = sum(stem_porter(w) == s for w, s in vocab.items())
    detail = f"{frozen}/{len(vocab)} match committed stems"
    live = len(vocab)
    try:
        from nltk.stem.porter import PorterStemmer
    except ImportError:
        detail += " (live oracle not installed)"
    else:
        oracle = PorterStemmer(mode=PorterStemmer.ORIGINAL_ALGORITHM)
        live = sum(stem_porter(w) == oracle.stem(w) for w in vocab)
        detail += f", {live}/{len(vocab)} match live oracle"
    report(3, "Porter stemmer", frozen == live == len(vocab) == 100, detail)


# -- 4. separable fixture ------------------------------------------------------

def test_criterion_4_separable(fixture_split):
    train_ds, test_ds = fixture_split
    floors = {"svm_ovr": 0.95, "softmax": 0.95, "naive_bayes": 0.95, "boosted_stumps": 0.90}
    start = time.perf_counter()
    accs = {kind: evaluate_dataset(fit_model(train_ds, kind), test_ds).accuracy for kind in KINDS}
    elapsed = time.perf_counter() - start
    ok = all(accs[k] >= floors[k] for k in floors) and elapsed < 60
    detail = ", ".join(f"{k} {accs[k]:.4f}" for k in KINDS) + f"; {elapsed:.1f}s"
    report(4, "separable fixture accuracy", ok, detail)


# -- 5. confusion pattern ------------------------------------------------------

def test_criterion_5_confusion_pattern(fixture_split):
    train_ds, _ = fixture_split
    model = fit_model(train_ds, "svm_ovr")
    probe = gen_fixture(seed=43, per_class=100, confusions=(Confusion(EventLabel.HANDBALL, EventLabel.FOUL, 0.26),))
    pred = predict_dataset(model, probe)
    gold = [int(v) for v in probe.labels]
    rate = row_normalize(confusion_matrix(pred, gold))[EventLabel.HANDBALL, EventLabel.FOUL]
    report(5, "Handball->Foul confusion", abs(rate - 0.26) <= 0.05, f"row-normalised entry {rate:.4f}")


# -- 6. imbalance repair --------------------------------------------------------

def test_criterion_6_imbalance():
    counts = {label: 0 for label in EventLabel}
    counts.update({EventLabel.FOUL: 100, EventLabel.HANDBALL: 10})
    ds = gen_fixture(seed=6, per_class=1, counts=counts)
    dup = {k: v for k, v in class_counts(oversample_random(ds, seed=6).labels).items() if v}
    docs = [r.text.lower().split() for r in ds]
    X = transform_many(fit_tfidf(docs), docs)
    y = [int(v) for v in ds.labels]
    X2, y2, parents = smote_oversample(X, y, k=5, seed=6, return_parents=True)
    synth = X2[len(X):]
    contained = 0
    for v, (i, j) in zip(synth, parents):
        lo = np.minimum(X[i].to_dense(), X[j].to_dense())
        hi = np.maximum(X[i].to_dense(), X[j].to_dense())
        d = v.to_dense()
        contained += bool(np.all((lo <= d) & (d <= hi)))
    smote_counts = {c: y2.count(c) for c in sorted(set(y2))}
    ok = (
        dup == {EventLabel.FOUL: 100, EventLabel.HANDBALL: 100}
        and smote_counts == {int(EventLabel.FOUL): 100, int(EventLabel.HANDBALL): 100}
        and len(synth) == 90 and contained == len(synth)
    )
    report(6, "imbalance repair", ok,
           f"random {dict((int(k), v) for k, v in dup.items())}, smote {smote_counts}, "
           f"containment {contained}/{len(synth)}")


# -- 7. sentiment aggregation ---------------------------------------------------

def _sentiment_dataset():
    rows = []

    def add(label, text):
        rows.append(CommentaryRecord(id=f"s{len(rows)}", text=text, label=label))

    for i in range(100):
        add(EventLabel.YELLOW_CARD, "Reckless challenge, he is booked." if i < 74 else "The referee shows a yellow card.")
    for i in range(150):
        add(EventLabel.SUBSTITUTION, "Superb change, a fresh pair of legs." if i < 2 else "Substitution, one player replaces another.")
    for _ in range(40):
        add(EventLabel.HANDBALL, "Handball by the defender in the box.")
    return Dataset(tuple(rows))


def test_criterion_7_sentiment():
    ds = _sentiment_dataset()
    lex = default_lexicon()
    rep = aggregate_by_event(ds, score_dataset(ds, lex))
    yc, sub, hb = rep.rows[EventLabel.YELLOW_CARD], rep.rows[EventLabel.SUBSTITUTION], rep.rows[EventLabel.HANDBALL]

    def direct(label, words):
        recs = [r for r in ds if r.label is label]
        return Fraction(sum(any(w in r.text.lower() for w in words) for r in recs), len(recs))

    ok = (
        yc.verdict is SentimentLabel.NEGATIVE and yc.percentage == direct(EventLabel.YELLOW_CARD, ["reckless"]) == Fraction(74, 100)
        and sub.verdict is SentimentLabel.POSITIVE and sub.percentage == direct(EventLabel.SUBSTITUTION, ["superb"])
        and Fraction(1, 100) <= sub.percentage <= Fraction(2, 100)
        and hb.verdict is None and hb.n_pos == hb.n_neg == 0
    )
    report(7, "sentiment aggregation", ok,
           f"Yellow card {yc.verdict} {float(yc.percentage):.2%}, Substitution {sub.verdict} "
           f"{float(sub.percentage):.2%}, Handball {hb.verdict}")


# -- 8. determinism and persistence ---------------------------------------------

def test_criterion_8_determinism(tmp_path, capsys, fixture_split):
    data = tmp_path / "fx.jsonl"
    assert cli_main(["gen-fixture", "--seed", "42", "--per-class", "100", "--out", str(data)]) == 0
    runs = []
    for name in ("a", "b"):
        out = tmp_path / name
        assert cli_main(["train", str(data), "--kind", "all", "--out-dir", str(out), "--format", "json"]) == 0
        runs.append({p.name: p.read_bytes() for p in sorted(out.iterdir())})
    capsys.readouterr()
    identical = runs[0] == runs[1] and len(runs[0]) >= 10

    train_ds, test_ds = fixture_split
    rnd = np.random.default_rng(8)
    exact = True
    for kind in KINDS:
        model = fit_model(train_ds, kind)
        vecs = [model.embed_text(r.text) for r in test_ds]
        dim = model.tfidf.dim
        while len(vecs) < 1000:
            dense = np.where(rnd.random(dim) < 0.01, rnd.random(dim) * (3 if kind == "naive_bayes" else 1), 0.0)
            if kind == "naive_bayes":
                dense = np.floor(dense)
            vecs.append(SparseVector.from_dense(dense))
        path = tmp_path / f"{kind}.json"
        save_model(model, path)
        loaded = load_model(path)
        exact &= np.array_equal(predict_scores_batch(model, vecs), predict_scores_batch(loaded, vecs))
        exact &= predict_batch(model, vecs) == predict_batch(loaded, vecs)
    report(8, "determinism and persistence", identical and exact,
           f"rerun byte-identical={identical} ({len(runs[0])} files), reload exact on 1000 vectors x 4 kinds={exact}")


# -- 9. cross-source generalisation ---------------------------------------------

def test_criterion_9_cross_source(fixture_split):
    train_ds, _ = fixture_split
    other = gen_fixture(seed=43, per_class=100, template_set="b")
    accs = {kind: evaluate_dataset(fit_model(train_ds, kind), other).accuracy for kind in KINDS}
    ok = all(a >= 0.85 for a in accs.values())
    report(9, "cross-source accuracy", ok, ", ".join(f"{k} {a:.4f}" for k, a in accs.items()))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
