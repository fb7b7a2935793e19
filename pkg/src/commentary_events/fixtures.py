"""Seeded synthetic commentary corpora for desk-scale experiments.

Every non-"No event" sentence carries its class keyword phrase (Corner
sentences always contain "corner", and so on); the rest of the sentence is
drawn from a filler pool. Two template sets share keywords but differ in
sentence shape and filler vocabulary, which gives a cross-source evaluation
pair.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .corpus import CommentaryRecord, Dataset, EventLabel

_KEYWORDS: dict[EventLabel, tuple[str, ...]] = {
    EventLabel.ATTEMPT: ("attempt saved", "attempt blocked", "attempt goes wide"),
    EventLabel.CORNER: ("wins a corner", "corner conceded", "corner kick taken"),
    EventLabel.FOUL: ("foul by", "commits a foul", "foul committed"),
    EventLabel.YELLOW_CARD: ("is shown the yellow card", "yellow card for", "booked with a yellow card"),
    EventLabel.SECOND_YELLOW_CARD: ("second yellow card for", "is shown a second yellow card",
                                    "receives a second yellow card"),
    EventLabel.RED_CARD: ("is shown a straight red card", "red card for", "sees red card"),
    EventLabel.SUBSTITUTION: ("substitution replaces", "substitution made", "makes a substitution"),
    EventLabel.FREE_KICK_WON: ("wins a free kick", "free kick won", "earns a free kick"),
    EventLabel.OFFSIDE: ("is caught offside", "offside flag raised", "offside again"),
    EventLabel.HANDBALL: ("handball by", "penalised for handball", "handball called"),
    EventLabel.PENALTY_CONCEDED: ("penalty conceded by", "concedes a penalty", "penalty conceded after"),
}

_NO_EVENT = (
    "keeps possession in midfield",
    "the first half begins",
    "the second half is under way",
    "the players return to the pitch",
    "a delay while the physio comes on",
    "lineups are announced",
)

_PLAYERS = (
    "Harry Kane", "Kylian Mbappé", "Lionel Messi", "Robert Lewandowski", "Mohamed Salah",
    "Kevin De Bruyne", "Virgil van Dijk", "Luka Modric", "Erling Haaland", "Marco Verratti",
    "Thomas Müller", "Sergio Ramos", "Paulo Dybala", "Antoine Griezmann", "Jordan Henderson",
    "Ciro Immobile", "Joshua Kimmich", "Riyad Mahrez", "Wissam Ben Yedder", "Iago Aspas",
)

_TEAMS = (
    "Juventus", "Paris Saint-Germain", "Real Madrid", "Bayern Munich", "Liverpool",
    "Manchester City", "Napoli", "Lyon", "Sevilla", "Borussia Dortmund", "Inter", "Monaco",
)

_LEAGUES = ("Serie A", "Ligue 1", "La Liga", "Bundesliga", "Premier League")

_FILLER = {
    "a": (
        "from the left wing", "on the right side", "in the defensive half", "near the box",
        "from outside the area", "after a quick break", "with a low cross", "from a long ball",
        "down the flank", "in the attacking third",
    ),
    "b": (
        "as the crowd roars", "under the floodlights", "with tension rising", "in front of the home fans",
        "while the stadium holds its breath", "to loud whistles", "amid a noisy atmosphere",
        "as the rain keeps falling",
    ),
}

_SHAPES = {
    "a": ("{player} ({team}) {kw} {filler}.", "{kw} {player} ({team}) {filler}."),
    "b": ("What a moment, {kw} - {team}, {filler}!", "{team}: {player} {kw} {filler}",
          "Live: {kw} {filler} ({player})"),
}


def _sentence(rng: random.Random, template_set: str, label: EventLabel) -> str:
    kw = rng.choice(_NO_EVENT if label is EventLabel.NO_EVENT else _KEYWORDS[label])
    shape = rng.choice(_SHAPES[template_set])
    return shape.format(
        player=rng.choice(_PLAYERS), team=rng.choice(_TEAMS), kw=kw, filler=rng.choice(_FILLER[template_set])
    )


@dataclass(frozen=True)
class Confusion:
    """Render ``fraction`` of ``source``-labeled records with ``target``'s template."""

    source: EventLabel
    target: EventLabel
    fraction: float

    @classmethod
    def parse(cls, spec: str) -> "Confusion":
        src, dst, frac = spec.split(":")
        out = cls(EventLabel.from_code(int(src)), EventLabel.from_code(int(dst)), float(frac))
        if not 0 <= out.fraction <= 1:
            raise ValueError("confusion fraction must lie in [0, 1]")
        return out


def gen_fixture(
    seed: int = 42,
    per_class: int = 100,
    noise: float = 0.0,
    template_set: str = "a",
    confusions: tuple[Confusion, ...] = (),
    counts: dict[EventLabel, int] | None = None,
) -> Dataset:
    """Generate a labeled, keyword-separable commentary dataset.

    ``noise`` mislabels exactly floor(noise * N) records with a random wrong
    label. ``counts`` overrides ``per_class`` for individual classes.
    """
    if per_class < 1:
        raise ValueError("per_class must be >= 1")
    if not 0 <= noise < 1:
        raise ValueError("noise must lie in [0, 1)")
    if template_set not in _SHAPES:
        raise ValueError(f"template_set must be one of {sorted(_SHAPES)}")
    rng = random.Random(seed)
    sizes = {label: per_class for label in EventLabel}
    sizes.update(counts or {})

    rendered_as: list[tuple[EventLabel, EventLabel]] = []
    for label in EventLabel:
        kinds = [label] * sizes[label]
        for conf in confusions:
            if conf.source is label:
                k = round(conf.fraction * sizes[label])
                kinds[:k] = [conf.target] * k
        rendered_as.extend((label, k) for k in kinds)
    rng.shuffle(rendered_as)

    labels = [lab for lab, _ in rendered_as]
    n = len(labels)
    n_noisy = int(noise * n)
    # own stream so the rendered sentences do not depend on the noise level
    noise_rng = random.Random(f"noise-{seed}")
    for i in noise_rng.sample(range(n), n_noisy):
        labels[i] = noise_rng.choice([lab for lab in EventLabel if lab is not labels[i]])

    records = []
    for i, ((_, shape_label), label) in enumerate(zip(rendered_as, labels)):
        records.append(
            CommentaryRecord(
                id=f"{template_set}{seed}-{i:06d}",
                text=_sentence(rng, template_set, shape_label),
                label=label,
                match_id=f"m{rng.randrange(10_000):04d}",
                minute=rng.randrange(1, 91),
                league=rng.choice(_LEAGUES),
            )
        )
    return Dataset(tuple(records))
