"""Shared test worlds: small scripted backends with self-consistent scores."""

from __future__ import annotations

from pathlib import Path
from types import SimpleNamespace

import pytest

from anima.animacy import DEFAULT_HUMANSET
from anima.backends.scripted import ScriptedBackend

FIXTURES_DIR = Path(__file__).resolve().parent.parent / "fixtures"

# (original, expected literal) for the recorded de-personification session;
# the last two rows are negative examples that stay partly or fully unchanged.
TRANSCRIPTS = [
    (
        "How far that little candle throws its beams!",
        "How far that little candle can spread its beams!",
    ),
    (
        "A book is a fragile creature, it suffers the wear of time, "
        "it fears rodents, the elements and clumsy hands.",
        "A book is fragile, it can break from the wear of time, "
        "it can be eaten by rodents, the elements and clumsy hands.",
    ),
    (
        "The camera loves her since she is so pretty.",
        "The camera is always on her since she is so pretty.",
    ),
    (
        "Any trust I had for him walked right out the door.",
        "Any trust I had for him had gone right out the door.",
    ),
    (
        "The full moon peeped through partial clouds.",
        "The full moon was visible through partial clouds.",
    ),
    (
        "Opportunity was knocking at her door.",
        "Opportunity was knocking at her door.",
    ),
    (
        "The killing moon will come too soon.",
        "The killing moon will be here too soon.",
    ),
]

# Person-likeness calibration aggregates: phrase -> (IsAPerson score, class).
CALIBRATION = {
    "she": (5.31, "animate"),
    "person": (6.41, "animate"),
    "joe": (5.804, "animate"),
    "jane": (4.976, "animate"),
    "the police officer": (6.462, "animate"),
    "my friend": (6.805, "animate"),
    "moon": (8.743, "inanimate"),
    "opportunity": (9.488, "inanimate"),
    "stars": (8.717, "inanimate"),
    "my new iphone": (10.055, "inanimate"),
}


def isa_scores(table: dict[str, float]) -> dict[tuple[str, str, str], float]:
    """IsA fixture entries where each humanset query returns the aggregate."""
    return {
        (phrase, "IsA", member): value
        for phrase, value in table.items()
        for member in DEFAULT_HUMANSET
    }


@pytest.fixture
def calibration_backend() -> ScriptedBackend:
    return ScriptedBackend(
        relation_scores=isa_scores({k: v for k, (v, _) in CALIBRATION.items()})
    )


KETTLE = "The kettle screamed in the kitchen."
KETTLE_LITERAL = "The kettle whistled in the kitchen."
KETTLE_MASKED = "The kettle <mask> in the kitchen."
SHE_SENTENCE = "She screamed loudly."

KETTLE_ROWS = [
    ("The", "determiner", "det", 1),
    ("kettle", "noun", "nsubj", 2),
    ("screamed", "verb", "root", -1),
    ("in", "other", "prep", 2),
    ("the", "determiner", "det", 5),
    ("kitchen", "noun", "pobj", 3),
    (".", "other", "punct", 2),
]

KETTLE_LITERAL_ROWS = [
    ("The", "determiner", "det", 1),
    ("kettle", "noun", "nsubj", 2),
    ("whistled", "verb", "root", -1),
    ("in", "other", "prep", 2),
    ("the", "determiner", "det", 5),
    ("kitchen", "noun", "pobj", 3),
    (".", "other", "punct", 2),
]

SHE_ROWS = [
    ("She", "pronoun", "nsubj", 1),
    ("screamed", "verb", "root", -1),
    ("loudly", "adverb", "advmod", 1),
    (".", "other", "punct", 1),
]


def capable_of(table: dict[str, tuple[float, float]], topic: str):
    """CapableOf entries from attribute -> (human raw, topic raw) profiles."""
    scores = {}
    for attribute, (human_raw, topic_raw) in table.items():
        for member in DEFAULT_HUMANSET:
            scores[(member, "CapableOf", attribute)] = human_raw
        scores[(topic, "CapableOf", attribute)] = topic_raw
    return scores


def kettle_backend() -> ScriptedBackend:
    """A small world where de-personifying the kettle picks "whistled"."""
    relation_scores = isa_scores({"the kettle": 9.0, "she": 5.31})
    relation_scores.update(
        capable_of(
            # literal "whistled" reads inanimate (high human raw, low topic raw)
            {"whistled": (8.0, 2.0), "screamed": (2.0, 9.0), "sang": (2.5, 9.0)},
            topic="the kettle",
        )
    )
    return ScriptedBackend(
        relation_scores=relation_scores,
        infills={
            KETTLE_MASKED: [("whistled", -0.5), ("screamed", -1.2), ("sang", -0.8)],
        },
        similarities={
            ("The kettle whistled in the kitchen.", KETTLE): 0.92,
            ("The kettle screamed in the kitchen.", KETTLE): 1.0,
            ("The kettle sang in the kitchen.", KETTLE): 0.90,
            (KETTLE_LITERAL, KETTLE_LITERAL): 0.999,
            (KETTLE, KETTLE): 0.999,
            (KETTLE, KETTLE_LITERAL): 0.92,
        },
        perplexities={KETTLE: 6.1, KETTLE_LITERAL: 4.2, SHE_SENTENCE: 3.3},
        seq2seq_map={KETTLE_LITERAL: KETTLE, SHE_SENTENCE: SHE_SENTENCE},
        parses={
            KETTLE: KETTLE_ROWS,
            KETTLE_LITERAL: KETTLE_LITERAL_ROWS,
            SHE_SENTENCE: SHE_ROWS,
        },
    )


@pytest.fixture
def kettle_world() -> SimpleNamespace:
    return SimpleNamespace(
        backend=kettle_backend(),
        sentence=KETTLE,
        literal=KETTLE_LITERAL,
        masked=KETTLE_MASKED,
        animate_sentence=SHE_SENTENCE,
    )
