import sys
import json

import pytest

from commentary_events.corpus import CommentaryRecord, Dataset, EventLabel


def write_jsonl(path, rows):
    path.write_text("".join(json.dumps(r) + "\n" for r in rows), encoding="utf-8")
    return path


def make_dataset(labels, texts=None):
    texts = texts or [f"sentence number {i}" for i in range(len(labels))]
    return Dataset(tuple(
        CommentaryRecord(id=f"r{i}", text=t, label=EventLabel(l)) for i, (l, t) in enumerate(zip(labels, texts))
    ))


@pytest.fixture
def tiny_jsonl(tmp_path):
    return write_jsonl(tmp_path / "tiny.jsonl", [
        {"id": "a", "text": "Corner for Liverpool.", "label": 2},
        {"id": "b", "text": "Foul by Harry Kane.", "label": 3, "minute": 12},
        {"id": "c", "text": "Attempt saved.", "label": 1, "league": "La Liga", "match_id": "m1"},
    ])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
