import json
from pathlib import Path

import pytest

from commentary_events.porter import stem_porter

VOCAB = json.loads((Path(__file__).parent / "data" / "porter_vocab.json").read_text())


@pytest.mark.parametrize("word,stem", [
    ("caresses", "caress"), ("ponies", "poni"), ("goal", "goal"), ("scores", "score"),
    ("feed", "feed"), ("agreed", "agre"), ("hopping", "hop"), ("filing", "file"), ("sky", "sky"),
    ("relational", "relat"), ("rational", "ration"), ("generalizations", "gener"),
])
def test_known_stems(word, stem):
    assert stem_porter(word) == stem


@pytest.mark.parametrize("word", ["a", "is", "as", "90"])
def test_short_tokens_unchanged(word):
    assert stem_porter(word) == word


def test_frozen_vocabulary():
    assert len(VOCAB) == 100
    assert {w: stem_porter(w) for w in VOCAB} == VOCAB


def test_live_reference_agreement():
    nltk_porter = pytest.importorskip("nltk.stem.porter")
    ref = nltk_porter.PorterStemmer(mode=nltk_porter.PorterStemmer.ORIGINAL_ALGORITHM)
    words = list(VOCAB) + ["electricity", "happiness", "relativity", "conditionally", "managing", "possessed"]
    assert [stem_porter(w) for w in words] == [ref.stem(w) for w in words]
