from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from commentary_events.corpus import (
    CommentaryRecord,
    Dataset,
    EventLabel,
    compute_stats,
    load_dataset,
    oversample_random,
    save_dataset,
    split_shuffled,
)
from commentary_events.errors import (
    DuplicateId,
    EmptyDataset,
    InvalidLabel,
    ParseError,
    UnlabeledDataset,
)

from conftest import make_dataset, write_jsonl

TABLE = [
    (0, "No event"), (1, "Attempt"), (2, "Corner"), (3, "Foul"), (4, "Yellow card"),
    (5, "Second yellow card"), (6, "Red card"), (7, "Substitution"), (8, "Free kick won"),
    (9, "Offside"), (10, "Handball"), (11, "Penalty conceded"),
]


@pytest.mark.parametrize("code,name", TABLE)
def test_label_names_round_trip(code, name):
    label = EventLabel.from_code(code)
    assert label.display_name == name
    assert EventLabel.from_name(name) is label
    assert int(EventLabel.from_name(name.upper())) == code


def test_exactly_twelve_labels():
    assert [int(l) for l in EventLabel] == list(range(12))


@pytest.mark.parametrize("bad", [-1, 12, True, 2.0, "3"])
def test_from_code_rejects(bad):
    with pytest.raises(ValueError):
        EventLabel.from_code(bad)


def test_load_jsonl_keeps_order(tiny_jsonl):
    ds = load_dataset(tiny_jsonl)
    assert ds.ids == ["a", "b", "c"]
    assert ds.labeled
    assert ds.records[1].minute == 12
    assert ds.records[2].league == "La Liga"


def test_load_empty_file(tmp_path):
    path = tmp_path / "empty.jsonl"
    path.write_text("")
    ds = load_dataset(path)
    assert len(ds) == 0 and ds.labeled


def test_invalid_label_names_line(tmp_path):
    path = write_jsonl(tmp_path / "x.jsonl", [{"id": "a", "text": "ok", "label": 1},
                                               {"id": "b", "text": "bad", "label": 12}])
    with pytest.raises(InvalidLabel) as info:
        load_dataset(path)
    assert info.value.line == 2
    assert "line 2" in str(info.value)


def test_malformed_line(tmp_path):
    path = tmp_path / "x.jsonl"
    path.write_text('{"id": "a", "text": "ok"}\n{not json\n')
    with pytest.raises(ParseError) as info:
        load_dataset(path)
    assert info.value.line == 2


def test_duplicate_id(tmp_path):
    path = write_jsonl(tmp_path / "x.jsonl", [{"id": "a", "text": "one"}, {"id": "a", "text": "two"}])
    with pytest.raises(DuplicateId):
        load_dataset(path)


def test_blank_text_rejected(tmp_path):
    path = write_jsonl(tmp_path / "x.jsonl", [{"id": "a", "text": "   "}])
    with pytest.raises(ParseError):
        load_dataset(path)


def test_unknown_keys_counted(tmp_path):
    path = write_jsonl(tmp_path / "x.jsonl", [{"id": "a", "text": "one", "source": "bbc", "x": 1}])
    assert load_dataset(path).unknown_keys == 2


def test_unlabeled_records(tmp_path):
    path = write_jsonl(tmp_path / "x.jsonl", [{"id": "a", "text": "one", "label": 1}, {"id": "b", "text": "two"}])
    assert not load_dataset(path).labeled


def test_csv_with_quoting(tmp_path):
    path = tmp_path / "x.csv"
    path.write_text('id,text,label,match_id,minute,league\n'
                    'a,"Foul by Kane, in the box",3,,,\n'
                    'b,"He said ""corner""",2,m1,45,Serie A\n'
                    'c,No label here,,,,\n')
    ds = load_dataset(path)
    assert ds.texts == ["Foul by Kane, in the box", 'He said "corner"', "No label here"]
    assert ds.records[1].minute == 45 and ds.records[1].league == "Serie A"
    assert ds.records[2].label is None and ds.records[0].match_id is None


def test_csv_bad_label(tmp_path):
    path = tmp_path / "x.csv"
    path.write_text("a,text,99\n")
    with pytest.raises(InvalidLabel):
        load_dataset(path)


def test_save_load_round_trip(tmp_path, tiny_jsonl):
    ds = load_dataset(tiny_jsonl)
    save_dataset(ds, tmp_path / "copy.jsonl")
    assert load_dataset(tmp_path / "copy.jsonl") == ds


def test_stats_small():
    ds = make_dataset([2, 2], ["Goal by Kane", "Corner"])
    stats = compute_stats(ds)
    assert stats.avg_words == 2 and stats.n_records == 2
    assert stats.avg_chars == Fraction(12 + 6, 2)


def test_stats_single_record():
    stats = compute_stats(make_dataset([3]))
    assert stats.per_class_counts[EventLabel.FOUL] == 1
    assert sum(stats.per_class_counts.values()) == 1
    assert stats.majority_share == 1


def test_stats_empty():
    with pytest.raises(EmptyDataset):
        compute_stats(Dataset())


def test_stats_unlabeled_has_no_counts():
    ds = Dataset((CommentaryRecord("a", "hello there"),))
    assert compute_stats(ds).per_class_counts is None


def test_split_sizes_and_disjoint():
    ds = make_dataset([i % 12 for i in range(10)])
    train, test = split_shuffled(ds, 0.8, 42)
    assert len(train) == 8 and len(test) == 2
    assert not set(train.ids) & set(test.ids)


def test_split_ratio_one():
    ds = make_dataset([1, 2, 3])
    train, test = split_shuffled(ds, 1.0, 0)
    assert len(train) == 3 and len(test) == 0


def test_split_deterministic():
    ds = make_dataset([i % 12 for i in range(50)])
    assert split_shuffled(ds, 0.7, 9) == split_shuffled(ds, 0.7, 9)
    assert split_shuffled(ds, 0.7, 9) != split_shuffled(ds, 0.7, 10)


def test_split_floor_is_exact_decimal():
    ds = make_dataset([0] * 100)
    assert len(split_shuffled(ds, 0.29, 1)[0]) == 29


def test_split_unlabeled():
    with pytest.raises(UnlabeledDataset):
        split_shuffled(Dataset((CommentaryRecord("a", "x"),)), 0.5, 0)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 11), min_size=1, max_size=60), st.floats(0.01, 1.0), st.integers(0, 2**31))
def test_split_partitions(labels, ratio, seed):
    ds = make_dataset(labels)
    train, test = split_shuffled(ds, ratio, seed)
    assert Counter(train.ids) + Counter(test.ids) == Counter(ds.ids)
    assert len(train) == int(Fraction(repr(ratio)) * len(ds))


def test_oversample_example():
    ds = make_dataset([1, 1, 1, 2], ["shot one", "shot two", "shot three", "corner kick"])
    out = oversample_random(ds, seed=3)
    counts = Counter(r.label for r in out)
    assert counts == {EventLabel.ATTEMPT: 3, EventLabel.CORNER: 3}
    dups = out.records[4:]
    assert [r.id for r in dups] == ["r3#dup1", "r3#dup2"]
    assert all(r.text == "corner kick" for r in dups)
    assert out.records[:4] == ds.records


def test_oversample_balanced_is_identity():
    ds = make_dataset([1, 2, 3, 1, 2, 3])
    assert oversample_random(ds, 5) == ds


def test_oversample_deterministic():
    ds = make_dataset([0] * 7 + [4] * 2 + [9])
    assert oversample_random(ds, 11) == oversample_random(ds, 11)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 11), min_size=1, max_size=60), st.integers(0, 1000))
def test_oversample_balances(labels, seed):
    ds = make_dataset(labels)
    out = oversample_random(ds, seed)
    before = Counter(labels)
    after = Counter(int(r.label) for r in out)
    assert set(after) == set(before)
    assert set(after.values()) == {max(before.values())}
    assert out.records[: len(ds)] == ds.records
    # compute_stats agrees with the class tally
    assert sum(compute_stats(out).per_class_counts.values()) == len(out)
