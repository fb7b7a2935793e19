"""Command-line entry point: stats, train, predict, eval, sentiment-report, gen-fixture."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import classify
from .classify import TrainConfig, load_model, predict_scores_batch, save_model
from .corpus import EventLabel, compute_stats, load_dataset, save_dataset, split_shuffled
from .errors import CommentaryError
from .evaluate import compare_models, dumps_json
from .fixtures import Confusion, gen_fixture
from .pipeline import ExperimentConfig, evaluate_dataset, fit_model
from .sentiment import aggregate_by_event, default_lexicon, load_external_sentiments, read_lexicon, score_dataset
from .textprep import PipelineConfig, default_stopwords, read_lemma_table, read_stopwords

DEFAULT_SEED = 42
KIND_ALIASES = {"svm": "svm_ovr", "softmax": "softmax", "nb": "naive_bayes", "boost": "boosted_stumps"}

log = logging.getLogger("commentary_events")


class CliError(Exception):
    pass


def _emit(args, obj: dict, text: str) -> None:
    sys.stdout.write(dumps_json(obj) if args.format == "json" else text)


def _require_file(path, what: str) -> Path:
    p = Path(path)
    if not p.is_file():
        raise CliError(f"{what} not found: {p}")
    return p


def _load(path):
    return load_dataset(_require_file(path, "dataset"))


# -- stats --------------------------------------------------------------------

def cmd_stats(args) -> int:
    stats = compute_stats(_load(args.dataset))
    lines = [
        f"records        {stats.n_records}",
        f"avg words      {float(stats.avg_words):.3f}",
        f"avg characters {float(stats.avg_chars):.3f}",
    ]
    if stats.per_class_counts is not None:
        top = max(stats.per_class_counts.values()) or 1
        lines.append("")
        for label, count in stats.per_class_counts.items():
            bar = "#" * round(40 * count / top)
            lines.append(f"{int(label):>2} {label.display_name:<20}{count:>8}  {bar}")
        share = float(stats.majority_share)
        verdict = "no class above 50%" if share <= 0.5 else "one class holds more than 50%"
        lines.append(f"\nlargest class share {share:.2%}: {verdict}")
    _emit(args, stats.to_json(), "\n".join(lines) + "\n")
    return 0


# -- train / eval / predict ---------------------------------------------------

def _experiment_config(args) -> ExperimentConfig:
    stopwords = read_stopwords(_require_file(args.stopwords, "stop-word list")) if args.stopwords else default_stopwords()
    lemmas = read_lemma_table(_require_file(args.lemmas, "lemma table")) if args.lemmas else {}
    pipeline = PipelineConfig(
        lowercase=args.lowercase,
        strip_punct=args.strip_punct,
        remove_stopwords=args.remove_stopwords,
        stem=args.stem and not args.lemmatize,
        lemmatize=args.lemmatize,
        stopword_list=stopwords,
        lemma_table=lemmas,
    )
    train = TrainConfig(
        epochs=args.epochs, lam=args.lam, seed=args.seed, alpha=args.alpha,
        n_rounds=args.rounds, learning_rate_boost=args.lr_boost,
    )
    return ExperimentConfig(pipeline, train, args.min_df, args.l2, args.oversample, args.smote_k)


def cmd_train(args) -> int:
    ds = _load(args.dataset)
    cross = _load(args.cross_dataset) if args.cross_dataset else None
    cfg = _experiment_config(args)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    train_ds, test_ds = split_shuffled(ds, args.ratio, args.seed)
    save_dataset(train_ds, out / "train.jsonl")
    save_dataset(test_ds, out / "test.jsonl")
    kinds = list(KIND_ALIASES.values()) if args.kind == "all" else [KIND_ALIASES[args.kind]]

    reports, cross_reports, summary, text = {}, {}, {}, []
    text.append(f"split: {len(train_ds)} train / {len(test_ds)} test (ratio {args.ratio}, seed {args.seed})\n")
    for kind in kinds:
        model = fit_model(train_ds, kind, cfg)
        model_path = out / f"{kind}.model.json"
        save_model(model, model_path)
        entry: dict = {"model": str(model_path)}
        text.append(f"\n== {kind} -> {model_path}\n")
        if len(test_ds):
            report = evaluate_dataset(model, test_ds)
            reports[kind] = report
            (out / f"{kind}.report.json").write_text(dumps_json(report.to_json()), encoding="utf-8")
            entry["test"] = report.to_json()
            text.append(report.to_text())
        else:
            text.append("test split is empty; nothing to evaluate\n")
        if cross is not None:
            cross_reports[kind] = evaluate_dataset(model, cross)
            entry["cross_source"] = cross_reports[kind].to_json()
        summary[kind] = entry

    result = {"n_train": len(train_ds), "n_test": len(test_ds), "models": summary}
    if reports and (len(kinds) > 1 or cross is not None):
        table = compare_models(reports, cross_reports or None)
        (out / "comparison.json").write_text(dumps_json(table.to_json()), encoding="utf-8")
        result["comparison"] = table.to_json()
        text.append("\n" + table.to_text())
    _emit(args, result, "".join(text))
    return 0


def cmd_eval(args) -> int:
    ds = _load(args.dataset)
    reports = {}
    for path in args.model:
        model = load_model(_require_file(path, "model file"))
        name = Path(path).name.removesuffix(".json").removesuffix(".model")
        if name in reports:
            name = str(path)
        reports[name] = evaluate_dataset(model, ds)
    if len(reports) == 1:
        (report,) = reports.values()
        _emit(args, report.to_json(), report.to_text())
    else:
        table = compare_models(reports)
        obj = {"reports": {n: r.to_json() for n, r in reports.items()}, "comparison": table.to_json()}
        _emit(args, obj, table.to_text())
    return 0


def cmd_predict(args) -> int:
    model = load_model(_require_file(args.model, "model file"))
    if args.text is not None:
        x = model.embed_text(args.text)
        scores = predict_scores_batch(model, x)[0]
        label = EventLabel(classify.predict(model, x))
        if args.format == "json":
            obj = {"predicted_label": int(label), "name": label.display_name}
            if args.scores:
                obj["scores"] = dict(zip(map(str, model.class_ids), scores.tolist()))
            sys.stdout.write(json.dumps(obj) + "\n")
        else:
            sys.stdout.write(label.display_name + "\n")
        return 0
    if args.dataset is None:
        raise CliError("predict needs --dataset or --text")
    ds = _load(args.dataset)
    X = [model.embed_text(r.text) for r in ds]
    scores = predict_scores_batch(model, X) if X else []
    labels = classify.predict_batch(model, X) if X else []
    for rec, label, row in zip(ds, labels, scores):
        obj = {"id": rec.id, "predicted_label": int(label)}
        if args.scores:
            obj["scores"] = dict(zip(map(str, model.class_ids), row.tolist()))
        sys.stdout.write(json.dumps(obj) + "\n")
    return 0


# -- sentiment / fixtures -----------------------------------------------------

def cmd_sentiment_report(args) -> int:
    ds = _load(args.dataset)
    if args.lexicon and args.external:
        raise CliError("give either --lexicon or --external, not both")
    if args.external:
        sentiments = load_external_sentiments(_require_file(args.external, "sentiment file"))
    else:
        lex = read_lexicon(_require_file(args.lexicon, "lexicon")) if args.lexicon else default_lexicon()
        sentiments = score_dataset(ds, lex)
    report = aggregate_by_event(ds, sentiments)
    _emit(args, report.to_json(), report.to_text())
    return 0


def cmd_gen_fixture(args) -> int:
    confusions = tuple(Confusion.parse(c) for c in args.confuse)
    ds = gen_fixture(args.seed, args.per_class, args.noise, args.template_set, confusions)
    if args.out:
        save_dataset(ds, args.out)
    else:
        for rec in ds:
            sys.stdout.write(json.dumps(rec.to_json(), ensure_ascii=False) + "\n")
    return 0


# -- argument parsing ---------------------------------------------------------

def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON file of option defaults (keys = option names); flags override it")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--format", choices=("text", "json"), default="text")


def _add_training(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("preprocessing")
    g.add_argument("--no-lowercase", dest="lowercase", action="store_false")
    g.add_argument("--no-strip-punct", dest="strip_punct", action="store_false")
    g.add_argument("--keep-stopwords", dest="remove_stopwords", action="store_false")
    g.add_argument("--no-stem", dest="stem", action="store_false")
    g.add_argument("--lemmatize", action="store_true", help="table lemmatization (turns stemming off)")
    g.add_argument("--stopwords", help="stop-word list file")
    g.add_argument("--lemmas", help="TSV lemma table")
    g = p.add_argument_group("vectorizer")
    g.add_argument("--min-df", type=int, default=1)
    g.add_argument("--no-l2", dest="l2", action="store_false")
    g.add_argument("--oversample", choices=("none", "random", "smote"), default="none")
    g.add_argument("--smote-k", type=int, default=5)
    g = p.add_argument_group("training")
    g.add_argument("--epochs", type=int, default=10)
    g.add_argument("--lambda", dest="lam", type=float, default=1e-4)
    g.add_argument("--alpha", type=float, default=1.0)
    g.add_argument("--rounds", type=int, default=200)
    g.add_argument("--lr-boost", type=float, default=0.3)


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(prog="commentary-events", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    subs = {}

    p = subs["stats"] = sub.add_parser("stats", help="dataset statistics and class histogram")
    p.add_argument("dataset")
    p.set_defaults(func=cmd_stats)

    p = subs["train"] = sub.add_parser("train", help="split, train, save model(s), evaluate")
    p.add_argument("dataset")
    p.add_argument("--kind", choices=(*KIND_ALIASES, "all"), default="svm")
    p.add_argument("--out-dir", default="runs")
    p.add_argument("--ratio", type=float, default=0.8, help="train fraction")
    p.add_argument("--cross-dataset", help="extra labeled dataset from another source")
    _add_training(p)
    p.set_defaults(func=cmd_train)

    p = subs["predict"] = sub.add_parser("predict", help="label a dataset or a single sentence")
    p.add_argument("--model", required=True)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--dataset")
    src.add_argument("--text")
    p.add_argument("--scores", action="store_true", help="include per-class scores")
    p.set_defaults(func=cmd_predict)

    p = subs["eval"] = sub.add_parser("eval", help="evaluate saved model(s) on a labeled dataset")
    p.add_argument("dataset")
    p.add_argument("--model", action="append", required=True)
    p.set_defaults(func=cmd_eval)

    p = subs["sentiment-report"] = sub.add_parser("sentiment-report", help="per-event-type sentiment table")
    p.add_argument("dataset")
    p.add_argument("--lexicon", help="lexicon file with [positive]/[negative] sections")
    p.add_argument("--external", help="JSONL of precomputed sentence sentiments")
    p.set_defaults(func=cmd_sentiment_report)

    p = subs["gen-fixture"] = sub.add_parser("gen-fixture", help="write a synthetic labeled corpus")
    p.add_argument("--per-class", type=int, default=100)
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--template-set", choices=("a", "b"), default="a")
    p.add_argument("--confuse", action="append", default=[], metavar="SRC:DST:FRAC",
                   help="render FRAC of class SRC with class DST's wording, keeping label SRC")
    p.add_argument("--out", help="output JSONL path (default: stdout)")
    p.set_defaults(func=cmd_gen_fixture)

    for p in subs.values():
        _add_common(p)
    return parser, subs


def _apply_config(argv, parser, subs) -> argparse.Namespace:
    args = parser.parse_args(argv)
    if not getattr(args, "config", None):
        return args
    path = _require_file(args.config, "config file")
    try:
        values = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise CliError(f"config file {path}: {exc}") from None
    if not isinstance(values, dict):
        raise CliError(f"config file {path}: expected a flat JSON object")
    sp = subs[args.command]
    known = {a.dest for a in sp._actions}
    values = {k.replace("-", "_"): v for k, v in values.items()}
    values = {("lam" if k == "lambda" else k): v for k, v in values.items()}
    unknown = sorted(set(values) - known)
    if unknown:
        raise CliError(f"config file {path}: unknown key(s) {', '.join(unknown)}")
    sp.set_defaults(**values)
    return parser.parse_args(argv)


def main(argv: list[str] | None = None) -> int:
    parser, subs = build_parser()
    try:
        args = _apply_config(argv, parser, subs)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s: %(message)s")
        return args.func(args)
    except (CliError, CommentaryError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
