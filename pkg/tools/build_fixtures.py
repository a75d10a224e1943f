#!/usr/bin/env python3
"""Regenerate the recorded fixture files under fixtures/.

Each fixture is produced by running the real pipeline against a scripted
backend and recording every exchange. The script asserts the intended
transcript at every step, so a fixture can only be written when the
pipeline actually reproduces it.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

from anima.animacy import ANIMATE, AnimacyConfig, classify_animacy, is_a_person_score
from anima.backends.fixture import record_backend
from anima.backends.scripted import ScriptedBackend, stable_unit
from anima.corpus import build_parallel_corpus
from anima.depersonify import depersonify
from anima.metrics import diversity_report, evaluate_run, fluency
from anima.personify import comet_personify, infill_personify, seq2seq_personify

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"

HUMANSET = AnimacyConfig().humanset

DECOYS = [
    "shimmered",
    "lingered",
    "paused",
    "rested",
    "waited",
    "hovered",
    "stood",
    "remained",
    "endured",
]

# CapableOf raw-score profiles (lower = stronger match):
# an "animate" attribute is one humans attract strongly and the topic does not.
ANIMATE_PROFILE = (2.2, 8.8)  # (human raw, topic raw)
INANIMATE_PROFILE = (8.0, 2.5)
DECOY_PROFILE_HUMAN = lambda j: 2.0 + 0.07 * j  # noqa: E731


class World:
    """Accumulates scripted tables for one fixture file."""

    def __init__(self):
        self.relation_scores = {}
        self.relation_tails = {}
        self.infills = {}
        self.similarities = {}
        self.perplexities = {}
        self.seq2seq = {}
        self.parses = {}
        self.similarity_fn = None
        self.perplexity_fn = None

    def add_topic(self, phrase: str, isa: float) -> None:
        for member in HUMANSET:
            self._put(self.relation_scores, (phrase, "IsA", member), isa)

    def add_attr(self, attr: str, topics: list[str], profile: tuple[float, float]) -> None:
        human_raw, topic_raw = profile
        for member in HUMANSET:
            self._put(self.relation_scores, (member, "CapableOf", attr), human_raw)
        for topic in topics:
            self._put(self.relation_scores, (topic, "CapableOf", attr), topic_raw)

    def add_decoys(self, topics: list[str]) -> None:
        for j, decoy in enumerate(DECOYS):
            self.add_attr(decoy, topics, (DECOY_PROFILE_HUMAN(j), 9.0))

    def add_mask(self, masked: str, winner: str, base: str, flue: float = -0.4) -> None:
        """Register infill candidates and their meaning-preservation scores."""
        candidates = [(winner, flue)]
        candidates += [(decoy, -1.0 - 0.15 * j) for j, decoy in enumerate(DECOYS)]
        self._put(self.infills, masked, candidates)
        for j, (span, _) in enumerate(candidates):
            filled = masked.replace("<mask>", span)
            value = (0.97 if filled == base else 0.93) if j == 0 else 0.80 - 0.01 * (j - 1)
            self._put(self.similarities, (filled, base), value)

    @staticmethod
    def _put(table: dict, key, value) -> None:
        if key in table and table[key] != value:
            raise SystemExit(f"conflicting fixture value for {key!r}")
        table[key] = value

    def backend(self) -> ScriptedBackend:
        return ScriptedBackend(
            relation_scores=self.relation_scores,
            relation_tails=self.relation_tails,
            infills=self.infills,
            similarities=self.similarities,
            similarity_fn=self.similarity_fn,
            perplexities=self.perplexities,
            perplexity_fn=self.perplexity_fn,
            seq2seq_map=self.seq2seq,
            parses=self.parses,
        )


# --------------------------------------------------------------------------
# De-personification transcripts (seven sentences, two of them unchanged by
# design) plus the second-pass sessions that keep the first pass's choices.
# --------------------------------------------------------------------------

D = "determiner"
N = "noun"
P = "pronoun"
V = "verb"
A = "adjective"
R = "adverb"
O = "other"

TABLE1 = [
    {
        "original": "How far that little candle throws its beams!",
        "literal": "How far that little candle can spread its beams!",
        "topics": {"that candle": 9.0},
        "winners": ["can spread", "spread"],
        "context": [],
        "masks": [("How far that little candle <mask> its beams!", "can spread")],
        "masks2": [("How far that little candle can <mask> its beams!", "spread")],
        "parses": {
            "How far that little candle throws its beams!": [
                ("How", R, "advmod", 1),
                ("far", R, "advmod", 5),
                ("that", D, "det", 4),
                ("little", A, "amod", 4),
                ("candle", N, "nsubj", 5),
                ("throws", V, "root", -1),
                ("its", P, "poss", 7),
                ("beams", N, "dobj", 5),
                ("!", O, "punct", 5),
            ],
            "How far that little candle can spread its beams!": [
                ("How", R, "advmod", 1),
                ("far", R, "advmod", 6),
                ("that", D, "det", 4),
                ("little", A, "amod", 4),
                ("candle", N, "nsubj", 6),
                ("can", V, "aux", 6),
                ("spread", V, "root", -1),
                ("its", P, "poss", 8),
                ("beams", N, "dobj", 6),
                ("!", O, "punct", 6),
            ],
        },
    },
    {
        "original": (
            "A book is a fragile creature, it suffers the wear of time, "
            "it fears rodents, the elements and clumsy hands."
        ),
        "literal": (
            "A book is fragile, it can break from the wear of time, "
            "it can be eaten by rodents, the elements and clumsy hands."
        ),
        "topics": {"a book": 9.1, "it": 8.9},
        "winners": ["fragile", "can break from", "can be eaten by", "break", "eaten"],
        "context": ["suffers", "fears"],
        "masks": [
            (
                "A book is <mask>, it suffers the wear of time, "
                "it fears rodents, the elements and clumsy hands.",
                "fragile",
            ),
            (
                "A book is fragile, it <mask> the wear of time, "
                "it fears rodents, the elements and clumsy hands.",
                "can break from",
            ),
            (
                "A book is fragile, it can break from the wear of time, "
                "it <mask> rodents, the elements and clumsy hands.",
                "can be eaten by",
            ),
        ],
        "masks2": [
            (
                "A book is <mask>, it can break from the wear of time, "
                "it can be eaten by rodents, the elements and clumsy hands.",
                "fragile",
            ),
            (
                "A book is fragile, it can <mask> from the wear of time, "
                "it can be eaten by rodents, the elements and clumsy hands.",
                "break",
            ),
            (
                "A book is fragile, it can break from the wear of time, "
                "it can be <mask> by rodents, the elements and clumsy hands.",
                "eaten",
            ),
        ],
        "parses": {
            (
                "A book is a fragile creature, it suffers the wear of time, "
                "it fears rodents, the elements and clumsy hands."
            ): [
                ("A", D, "det", 1),
                ("book", N, "nsubj", 5),
                ("is", V, "cop", 5),
                ("a", D, "det", 5),
                ("fragile", A, "acomp", 5),
                ("creature", N, "root", -1),
                (",", O, "punct", 5),
                ("it", P, "nsubj", 8),
                ("suffers", V, "conj", 5),
                ("the", D, "det", 10),
                ("wear", N, "dobj", 8),
                ("of", O, "prep", 10),
                ("time", N, "pobj", 11),
                (",", O, "punct", 8),
                ("it", P, "nsubj", 15),
                ("fears", V, "conj", 5),
                ("rodents", N, "dobj", 15),
                (",", O, "punct", 16),
                ("the", D, "det", 19),
                ("elements", N, "conj", 16),
                ("and", O, "cc", 16),
                ("clumsy", A, "amod", 22),
                ("hands", N, "conj", 16),
                (".", O, "punct", 5),
            ],
            (
                "A book is fragile, it suffers the wear of time, "
                "it fears rodents, the elements and clumsy hands."
            ): [
                ("A", D, "det", 1),
                ("book", N, "nsubj", 3),
                ("is", V, "cop", 3),
                ("fragile", A, "root", -1),
                (",", O, "punct", 3),
                ("it", P, "nsubj", 6),
                ("suffers", V, "conj", 3),
                ("the", D, "det", 8),
                ("wear", N, "dobj", 6),
                ("of", O, "prep", 8),
                ("time", N, "pobj", 9),
                (",", O, "punct", 6),
                ("it", P, "nsubj", 13),
                ("fears", V, "conj", 3),
                ("rodents", N, "dobj", 13),
                (",", O, "punct", 14),
                ("the", D, "det", 17),
                ("elements", N, "conj", 14),
                ("and", O, "cc", 14),
                ("clumsy", A, "amod", 20),
                ("hands", N, "conj", 14),
                (".", O, "punct", 3),
            ],
            (
                "A book is fragile, it can break from the wear of time, "
                "it fears rodents, the elements and clumsy hands."
            ): [
                ("A", D, "det", 1),
                ("book", N, "nsubj", 3),
                ("is", V, "cop", 3),
                ("fragile", A, "root", -1),
                (",", O, "punct", 3),
                ("it", P, "nsubj", 7),
                ("can", V, "aux", 7),
                ("break", V, "conj", 3),
                ("from", O, "prep", 7),
                ("the", D, "det", 10),
                ("wear", N, "pobj", 8),
                ("of", O, "prep", 10),
                ("time", N, "pobj", 11),
                (",", O, "punct", 7),
                ("it", P, "nsubj", 15),
                ("fears", V, "conj", 3),
                ("rodents", N, "dobj", 15),
                (",", O, "punct", 16),
                ("the", D, "det", 19),
                ("elements", N, "conj", 16),
                ("and", O, "cc", 16),
                ("clumsy", A, "amod", 22),
                ("hands", N, "conj", 16),
                (".", O, "punct", 3),
            ],
            (
                "A book is fragile, it can break from the wear of time, "
                "it can be eaten by rodents, the elements and clumsy hands."
            ): [
                ("A", D, "det", 1),
                ("book", N, "nsubj", 3),
                ("is", V, "cop", 3),
                ("fragile", A, "root", -1),
                (",", O, "punct", 3),
                ("it", P, "nsubj", 7),
                ("can", V, "aux", 7),
                ("break", V, "conj", 3),
                ("from", O, "prep", 7),
                ("the", D, "det", 10),
                ("wear", N, "pobj", 8),
                ("of", O, "prep", 10),
                ("time", N, "pobj", 11),
                (",", O, "punct", 7),
                ("it", P, "nsubj", 17),
                ("can", V, "aux", 17),
                ("be", V, "aux", 17),
                ("eaten", V, "conj", 3),
                ("by", O, "prep", 17),
                ("rodents", N, "pobj", 18),
                (",", O, "punct", 17),
                ("the", D, "det", 22),
                ("elements", N, "conj", 19),
                ("and", O, "cc", 19),
                ("clumsy", A, "amod", 25),
                ("hands", N, "conj", 19),
                (".", O, "punct", 3),
            ],
        },
    },
    {
        "original": "The camera loves her since she is so pretty.",
        "literal": "The camera is always on her since she is so pretty.",
        "topics": {"the camera": 8.6, "she": 5.31},
        "winners": ["is always on", "is"],
        "context": [],
        "masks": [("The camera <mask> her since she is so pretty.", "is always on")],
        "masks2": [
            ("The camera <mask> always on her since she is so pretty.", "is")
        ],
        "parses": {
            "The camera loves her since she is so pretty.": [
                ("The", D, "det", 1),
                ("camera", N, "nsubj", 2),
                ("loves", V, "root", -1),
                ("her", P, "dobj", 2),
                ("since", O, "mark", 8),
                ("she", P, "nsubj", 8),
                ("is", V, "cop", 8),
                ("so", R, "advmod", 8),
                ("pretty", A, "advcl", 2),
                (".", O, "punct", 2),
            ],
            "The camera is always on her since she is so pretty.": [
                ("The", D, "det", 1),
                ("camera", N, "nsubj", 2),
                ("is", V, "root", -1),
                ("always", R, "advmod", 2),
                ("on", O, "prep", 2),
                ("her", P, "pobj", 4),
                ("since", O, "mark", 10),
                ("she", P, "nsubj", 10),
                ("is", V, "cop", 10),
                ("so", R, "advmod", 10),
                ("pretty", A, "advcl", 2),
                (".", O, "punct", 2),
            ],
        },
    },
    {
        "original": "Any trust I had for him walked right out the door.",
        "literal": "Any trust I had for him had gone right out the door.",
        "topics": {"any trust": 9.3, "i": 5.1},
        "winners": ["had gone", "gone"],
        "context": [],
        "masks": [
            ("Any trust I had for him <mask> right out the door.", "had gone")
        ],
        "masks2": [
            ("Any trust I had for him had <mask> right out the door.", "gone")
        ],
        "parses": {
            "Any trust I had for him walked right out the door.": [
                ("Any", D, "det", 1),
                ("trust", N, "nsubj", 6),
                ("I", P, "nsubj", 3),
                ("had", V, "relcl", 1),
                ("for", O, "prep", 3),
                ("him", P, "pobj", 4),
                ("walked", V, "root", -1),
                ("right", R, "advmod", 8),
                ("out", O, "prep", 6),
                ("the", D, "det", 10),
                ("door", N, "pobj", 8),
                (".", O, "punct", 6),
            ],
            "Any trust I had for him had gone right out the door.": [
                ("Any", D, "det", 1),
                ("trust", N, "nsubj", 7),
                ("I", P, "nsubj", 3),
                ("had", V, "relcl", 1),
                ("for", O, "prep", 3),
                ("him", P, "pobj", 4),
                ("had", V, "aux", 7),
                ("gone", V, "root", -1),
                ("right", R, "advmod", 9),
                ("out", O, "prep", 7),
                ("the", D, "det", 11),
                ("door", N, "pobj", 9),
                (".", O, "punct", 7),
            ],
        },
    },
    {
        "original": "The full moon peeped through partial clouds.",
        "literal": "The full moon was visible through partial clouds.",
        "topics": {"the full moon": 8.7},
        "winners": ["was visible", "visible"],
        "context": [],
        "masks": [("The full moon <mask> through partial clouds.", "was visible")],
        "masks2": [("The full moon was <mask> through partial clouds.", "visible")],
        "parses": {
            "The full moon peeped through partial clouds.": [
                ("The", D, "det", 2),
                ("full", A, "compound", 2),
                ("moon", N, "nsubj", 3),
                ("peeped", V, "root", -1),
                ("through", O, "prep", 3),
                ("partial", A, "amod", 6),
                ("clouds", N, "pobj", 4),
                (".", O, "punct", 3),
            ],
            "The full moon was visible through partial clouds.": [
                ("The", D, "det", 2),
                ("full", A, "compound", 2),
                ("moon", N, "nsubj", 4),
                ("was", V, "cop", 4),
                ("visible", A, "root", -1),
                ("through", O, "prep", 4),
                ("partial", A, "amod", 7),
                ("clouds", N, "pobj", 5),
                (".", O, "punct", 4),
            ],
        },
    },
    {
        # negative example: the original attribute wins selection
        "original": "Opportunity was knocking at her door.",
        "literal": "Opportunity was knocking at her door.",
        "topics": {"opportunity": 9.488},
        "winners": ["knocking"],
        "context": [],
        "masks": [("Opportunity was <mask> at her door.", "knocking")],
        "masks2": [("Opportunity was <mask> at her door.", "knocking")],
        "parses": {
            "Opportunity was knocking at her door.": [
                ("Opportunity", N, "nsubj", 2),
                ("was", V, "aux", 2),
                ("knocking", V, "root", -1),
                ("at", O, "prep", 2),
                ("her", P, "poss", 5),
                ("door", N, "pobj", 3),
                (".", O, "punct", 2),
            ],
        },
    },
    {
        "original": "The killing moon will come too soon.",
        "literal": "The killing moon will be here too soon.",
        "topics": {"the killing moon": 8.8},
        "winners": ["be here", "be"],
        "context": [],
        "masks": [("The killing moon will <mask> too soon.", "be here")],
        "masks2": [("The killing moon will <mask> here too soon.", "be")],
        "parses": {
            "The killing moon will come too soon.": [
                ("The", D, "det", 2),
                ("killing", A, "compound", 2),
                ("moon", N, "nsubj", 4),
                ("will", V, "aux", 4),
                ("come", V, "root", -1),
                ("too", R, "advmod", 6),
                ("soon", R, "advmod", 4),
                (".", O, "punct", 4),
            ],
            "The killing moon will be here too soon.": [
                ("The", D, "det", 2),
                ("killing", A, "compound", 2),
                ("moon", N, "nsubj", 4),
                ("will", V, "aux", 4),
                ("be", V, "root", -1),
                ("here", R, "advmod", 4),
                ("too", R, "advmod", 7),
                ("soon", R, "advmod", 4),
                (".", O, "punct", 4),
            ],
        },
    },
]


def build_table1() -> None:
    world = World()
    for row in TABLE1:
        topics = list(row["topics"])
        for phrase, isa in row["topics"].items():
            world.add_topic(phrase, isa)
        for attr in row["winners"]:
            world.add_attr(attr, topics, INANIMATE_PROFILE)
        for attr in row["context"]:
            world.add_attr(attr, topics, ANIMATE_PROFILE)
        world.add_decoys(topics)
        for text, rows in row["parses"].items():
            world._put(world.parses, text, rows)
        for masked, winner in row["masks"]:
            world.add_mask(masked, winner, row["original"])
        for masked, winner in row["masks2"]:
            if masked not in world.infills:
                world.add_mask(masked, winner, row["literal"])

    FIXTURES.mkdir(exist_ok=True)
    with record_backend(world.backend(), FIXTURES / "table1.jsonl") as backend:
        for row in TABLE1:
            result = depersonify(row["original"], backend)
            assert not result.skipped, row["original"]
            assert result.literal == row["literal"], (
                f"pass 1 mismatch:\n  got      {result.literal!r}\n"
                f"  expected {row['literal']!r}"
            )
            second = depersonify(result.literal, backend)
            assert second.literal == result.literal, (
                f"pass 2 drifted: {second.literal!r}"
            )

    sentences = FIXTURES / "table1_sentences.txt"
    sentences.write_text(
        "".join(row["original"] + "\n" for row in TABLE1), encoding="utf-8"
    )
    print(f"wrote {FIXTURES / 'table1.jsonl'} and {sentences}")


# --------------------------------------------------------------------------
# Generation transcripts: knowledge-graph baseline, infill baseline, seq2seq.
# --------------------------------------------------------------------------

NEWS = "The news hit me hard."
NEWS_OUT = "The news report event late me hard."
PANIC = "Panic is sweeping through the streets contagiously."
PANIC_OUT = "Panic is running through the streets contagiously."
SEQ2SEQ_PAIRS = [
    (
        "You are at a business dinner with your boss when your phone rings out loud",
        "You are at a business dinner with your boss when your phone yells out loud",
    ),
    ("In most horror settings, silence is key.", "In most horror settings, silence is a ghost."),
    ("The wind blew through me fast.", "The wind ran me fast."),
]

NEWS_TAILS = [
    "report event late",
    "be on tv",
    "travel fast",
    "spread quickly",
    "inform people",
    "be false",
    "break hearts",
    "change minds",
    "arrive daily",
    "bore everyone",
]


def build_generation() -> None:
    world = World()

    world.add_topic("the news", 9.4)
    world.parses[NEWS] = [
        ("The", D, "det", 1),
        ("news", N, "nsubj", 2),
        ("hit", V, "root", -1),
        ("me", P, "dobj", 2),
        ("hard", R, "advmod", 2),
        (".", O, "punct", 2),
    ]
    world.relation_tails[("the news", "CapableOf")] = NEWS_TAILS
    for j, tail in enumerate(NEWS_TAILS):
        human = 2.0 if tail == "report event late" else 4.0 + 0.3 * j
        for member in HUMANSET:
            world._put(world.relation_scores, (member, "CapableOf", tail), human)

    world.add_topic("panic", 9.6)
    world.parses[PANIC] = [
        ("Panic", N, "nsubj", 2),
        ("is", V, "aux", 2),
        ("sweeping", V, "root", -1),
        ("through", O, "prep", 2),
        ("the", D, "det", 5),
        ("streets", N, "pobj", 3),
        ("contagiously", R, "advmod", 2),
        (".", O, "punct", 2),
    ]
    world.add_attr("running", ["panic"], (1.5, 9.0))
    for j, decoy in enumerate(DECOYS):
        world.add_attr(decoy, ["panic"], INANIMATE_PROFILE)
    masked = "Panic is <mask> through the streets contagiously."
    candidates = [("running", -0.3)] + [
        (decoy, -1.0 - 0.15 * j) for j, decoy in enumerate(DECOYS)
    ]
    world.infills[masked] = candidates
    for j, (span, _) in enumerate(candidates):
        filled = masked.replace("<mask>", span)
        world.similarities[(filled, PANIC)] = 0.94 if j == 0 else 0.80 - 0.01 * (j - 1)

    for source, target in SEQ2SEQ_PAIRS:
        world.seq2seq[source] = target

    with record_backend(world.backend(), FIXTURES / "generation.jsonl") as backend:
        comet = comet_personify(NEWS, backend)
        assert comet.personified == NEWS_OUT, comet.personified
        infill = infill_personify(PANIC, backend)
        assert infill.personified == PANIC_OUT, infill.personified
        for source, target in SEQ2SEQ_PAIRS:
            result = seq2seq_personify(source, backend)
            assert result.personified == target, result.personified
    print(f"wrote {FIXTURES / 'generation.jsonl'}")


# --------------------------------------------------------------------------
# Animacy calibration aggregates and the two quoted fluency scores.
# --------------------------------------------------------------------------

CALIBRATION = {
    "she": 5.31,
    "person": 6.41,
    "joe": 5.804,
    "jane": 4.976,
    "the police officer": 6.462,
    "my friend": 6.805,
    "moon": 8.743,
    "opportunity": 9.488,
    "stars": 8.717,
    "my new iphone": 10.055,
}

FLUENCY_POINTS = {
    "The stars danced playfully": 7.02,
    "The stars twinkled brightly": 5.24,
}


def build_calibration() -> None:
    world = World()
    for phrase, value in CALIBRATION.items():
        world.add_topic(phrase, value)
    world.perplexities.update(FLUENCY_POINTS)

    config = AnimacyConfig()
    with record_backend(world.backend(), FIXTURES / "calibration.jsonl") as backend:
        for phrase, value in CALIBRATION.items():
            score = is_a_person_score(phrase, backend, config)
            assert abs(score - value) < 1e-9, (phrase, score)
            expected = ANIMATE if value < 7.0 else "inanimate"
            assert classify_animacy(phrase, backend, config) == expected
        for text, loss in FLUENCY_POINTS.items():
            assert fluency(text, backend) == loss
    print(f"wrote {FIXTURES / 'calibration.jsonl'}")


# --------------------------------------------------------------------------
# Diversity sample: 30 generations, 27 unique attributes, 3 repeats, 9 novel.
# --------------------------------------------------------------------------

DIVERSITY_VERBS = [
    "sighed", "wept", "laughed", "sang", "danced", "groaned", "yawned",
    "argued", "chuckled", "moaned", "cheered", "sobbed", "whistled",
    "mumbled", "shrieked", "pouted", "bragged", "fretted",
    "dozed", "marched", "saluted", "winked", "shrugged", "stumbled",
    "cackled", "hollered", "fidgeted",
]
DIVERSITY_NOVEL = DIVERSITY_VERBS[18:]  # the nine unseen in training
DIVERSITY_NOUNS = [
    "teacup", "stove", "hinge", "awning", "gutter", "mailbox", "plough",
    "dune", "reef", "spire", "culvert", "easel", "sundial", "turbine",
    "quarry", "trellis", "gazebo", "silo", "knoll", "brook", "crag",
    "fjord", "grove", "heath", "inlet", "jetty", "lagoon", "marsh",
    "outcrop", "pier",
]


def build_diversity() -> None:
    attributes = DIVERSITY_VERBS + DIVERSITY_VERBS[:3]  # three repeats
    sentences = [
        f"The {noun} {verb} tonight."
        for noun, verb in zip(DIVERSITY_NOUNS, attributes)
    ]
    inventory = DIVERSITY_VERBS[:18] + ["twinkled", "flickered"]

    world = World()
    for noun in DIVERSITY_NOUNS:
        world.add_topic(f"the {noun}", 9.0)
    for sentence, noun, verb in zip(sentences, DIVERSITY_NOUNS, attributes):
        world.parses[sentence] = [
            ("The", D, "det", 1),
            (noun, N, "nsubj", 2),
            (verb, V, "root", -1),
            ("tonight", R, "advmod", 2),
            (".", O, "punct", 2),
        ]

    with record_backend(world.backend(), FIXTURES / "diversity.jsonl") as backend:
        report = diversity_report(sentences, inventory, backend)
        assert report.sample_size == 30, report
        assert report.unique_attributes == 27, report
        assert report.repeat_count == 3, report
        assert report.novel_attributes == 9, report

    meta = {"sentences": sentences, "training_attributes": inventory}
    (FIXTURES / "diversity.json").write_text(
        json.dumps(meta, indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
    )
    print(f"wrote {FIXTURES / 'diversity.jsonl'} and diversity.json")


# --------------------------------------------------------------------------
# End-to-end world: 50 input sentences (4 with animate topics), the full
# depersonify -> corpus -> seq2seq -> evaluate chain.
# --------------------------------------------------------------------------

E2E_NOUNS = [
    "kettle", "clock", "wind", "river", "engine", "lantern", "fog", "door",
    "train", "mirror", "candle", "telephone", "ocean", "mountain", "oven",
    "furnace", "letter", "photograph", "guitar", "bridge", "storm", "forest",
    "volcano", "glacier", "tractor", "anchor", "chimney", "piano", "kite",
    "compass", "barrel", "curtain", "ladder", "hammer", "bell", "wagon",
    "windmill", "lighthouse", "staircase", "cellar", "teapot", "radiator",
    "typewriter", "satchel", "canyon", "meadow",
]
E2E_PVERBS = [
    "grumbled", "whispered", "complained", "sighed", "wept", "laughed",
    "shouted", "sang", "danced", "groaned", "yawned", "argued", "chuckled",
    "moaned",
]
E2E_LVERBS = [
    "boiled", "rustled", "rattled", "creaked", "dripped", "flashed", "rang",
    "hummed", "spun", "settled", "cooled", "drifted", "flickered", "swayed",
]
E2E_OUTVERBS = [
    "yelled", "murmured", "protested", "sobbed", "cheered", "giggled",
    "wailed", "bellowed", "whimpered", "chanted", "scolded", "babbled",
    "snored", "applauded",
]
E2E_PLACES = [
    "kitchen", "valley", "hallway", "courtyard", "attic", "street",
    "distance", "morning", "evening", "winter",
]
E2E_ANIMATE = [
    ("She", "complained", "morning", "she", 5.31),
    ("Joe", "shouted", "street", "joe", 5.804),
    ("Jane", "sang", "valley", "jane", 4.976),
    ("My friend", "laughed", "courtyard", "my friend", 6.805),
]


def the_rows(noun, verb, place):
    return [
        ("The", D, "det", 1),
        (noun, N, "nsubj", 2),
        (verb, V, "root", -1),
        ("in", O, "prep", 2),
        ("the", D, "det", 5),
        (place, N, "pobj", 3),
        (".", O, "punct", 2),
    ]


def build_e2e() -> None:
    e2e = FIXTURES / "e2e"
    e2e.mkdir(exist_ok=True)

    world = World()
    world.similarity_fn = lambda a, b: round(0.60 + 0.35 * stable_unit(a + "|" + b), 6)
    world.perplexity_fn = lambda t: round(3.0 + 6.0 * stable_unit("ppl|" + t), 6)

    corpus_lines = []
    plan = []  # (original, literal, generated) for the 46 inanimate rows
    inanimate_index = 0
    animate_iter = iter(E2E_ANIMATE)
    for line in range(50):
        if line % 10 == 9 and line < 40:  # lines 10, 20, 30, 40
            subject, verb, place, phrase, isa = next(animate_iter)
            sentence = f"{subject} {verb} in the {place}."
            world.add_topic(phrase, isa)
            if subject == "My friend":
                rows = [
                    ("My", P, "poss", 1),
                    ("friend", N, "nsubj", 2),
                    (verb, V, "root", -1),
                    ("in", O, "prep", 2),
                    ("the", D, "det", 5),
                    (place, N, "pobj", 3),
                    (".", O, "punct", 2),
                ]
            else:
                pos = P if subject == "She" else N
                rows = [
                    (subject, pos, "nsubj", 1),
                    (verb, V, "root", -1),
                    ("in", O, "prep", 1),
                    ("the", D, "det", 4),
                    (place, N, "pobj", 2),
                    (".", O, "punct", 1),
                ]
            world.parses[sentence] = rows
            corpus_lines.append(sentence)
            continue

        i = inanimate_index
        inanimate_index += 1
        noun = E2E_NOUNS[i]
        pverb = E2E_PVERBS[i % len(E2E_PVERBS)]
        lverb = E2E_LVERBS[i % len(E2E_LVERBS)]
        outverb = E2E_OUTVERBS[i % len(E2E_OUTVERBS)]
        place = E2E_PLACES[i % len(E2E_PLACES)]
        topic = f"the {noun}"

        original = f"The {noun} {pverb} in the {place}."
        literal = f"The {noun} {lverb} in the {place}."
        generated = f"The {noun} {outverb} in the {place}."
        corpus_lines.append(original)
        plan.append((original, literal, generated))

        world.add_topic(topic, 8.2 + (i % 10) * 0.2)
        world.parses[original] = the_rows(noun, pverb, place)
        world.parses[literal] = the_rows(noun, lverb, place)
        world.parses[generated] = the_rows(noun, outverb, place)
        world.add_attr(lverb, [topic], INANIMATE_PROFILE)
        world.add_attr(outverb, [topic], ANIMATE_PROFILE)
        world.add_decoys([topic])
        masked = f"The {noun} <mask> in the {place}."
        world.add_mask(masked, lverb, original)
        world.seq2seq[literal] = generated

    (e2e / "corpus.txt").write_text(
        "".join(line + "\n" for line in corpus_lines), encoding="utf-8"
    )
    (e2e / "config.yaml").write_text("seed: 7\nsplit_ratio: 0.8\n", encoding="utf-8")

    with record_backend(world.backend(), e2e / "session.jsonl") as backend:
        for sentence in corpus_lines:  # the extract pass
            backend.parse(sentence)
        records = [(str(i + 1), s) for i, s in enumerate(corpus_lines)]
        examples, traces, skipped = build_parallel_corpus(records, backend)
        assert len(examples) == 46 and len(skipped) == 4, (len(examples), len(skipped))
        for example, (original, literal, _) in zip(examples, plan):
            assert example.personified == original
            assert example.literal == literal
        outputs = [seq2seq_personify(e.literal, backend).personified for e in examples]
        assert outputs == [generated for _, _, generated in plan]
        report = evaluate_run(
            [e.literal for e in examples],
            outputs,
            [e.personified for e in examples],
            backend,
        )
        assert len(report.rows) == 46
        assert all(row.animacy is not None for row in report.rows)
    print(f"wrote {e2e / 'session.jsonl'}, corpus.txt, config.yaml")


def main() -> int:
    build_table1()
    build_generation()
    build_calibration()
    build_diversity()
    build_e2e()
    return 0


if __name__ == "__main__":
    sys.exit(main())
