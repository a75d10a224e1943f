"""Animacy scoring over knowledge-graph relation queries.

A phrase's person-likeness is the mean of its IsA scores against a
fixed set of human synonyms; thresholding that mean classifies the
phrase animate or inanimate. A (topic, attribute) pair's animacy is the
gap between how strongly humans and how strongly the topic attract the
attribute under CapableOf.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from statistics import fmean
from typing import Sequence

from anima.backends.base import LOWER_BETTER, PipelineBackend

DEFAULT_HUMANSET = (
    "person",
    "human",
    "man",
    "woman",
    "human being",
    "boy",
    "girl",
)

ANIMATE = "animate"
INANIMATE = "inanimate"


class EmptyPairList(ValueError):
    """Sentence animacy is undefined without pairs."""


@dataclass(frozen=True)
class AnimacyConfig:
    humanset: tuple[str, ...] = DEFAULT_HUMANSET
    threshold: float = 7.0
    epsilon: float = 1e-6

    def __post_init__(self) -> None:
        if not self.humanset:
            raise ValueError("humanset must be non-empty")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if not math.isfinite(self.threshold):
            raise ValueError("threshold must be finite")


@dataclass(frozen=True)
class AnimacyBreakdown:
    human_affinity: float
    topic_affinity: float
    pair_animacy: float = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "pair_animacy", self.human_affinity - self.topic_affinity
        )


def is_a_person_score(
    topic: str, backend: PipelineBackend, config: AnimacyConfig
) -> float:
    """Mean IsA score of ``topic`` against every humanset member."""
    if not topic.strip():
        raise ValueError("topic phrase must be non-empty")
    return fmean(
        backend.relation_score(topic, "IsA", member) for member in config.humanset
    )


def classify_animacy(
    topic: str, backend: PipelineBackend, config: AnimacyConfig
) -> str:
    """Animate below the threshold, inanimate at or above it."""
    score = is_a_person_score(topic, backend, config)
    return ANIMATE if score < config.threshold else INANIMATE


def pair_animacy(
    topic: str, attribute: str, backend: PipelineBackend, config: AnimacyConfig
) -> AnimacyBreakdown:
    """Human-vs-topic CapableOf affinity gap for one pair.

    Affinities are the backend's raw relation scores; whether a larger
    gap means "more animate" depends on the backend's declared score
    convention (see ``orient``).
    """
    if not topic.strip() or not attribute.strip():
        raise ValueError("topic and attribute phrases must be non-empty")
    human = fmean(
        backend.relation_score(member, "CapableOf", attribute)
        for member in config.humanset
    )
    topic_aff = backend.relation_score(topic, "CapableOf", attribute)
    return AnimacyBreakdown(human_affinity=human, topic_affinity=topic_aff)


def sentence_animacy(
    pairs: Sequence[tuple[str, str]],
    backend: PipelineBackend,
    config: AnimacyConfig,
) -> float:
    """Mean pair animacy over all (topic, attribute) pairs."""
    if not pairs:
        raise EmptyPairList("sentence animacy needs at least one pair")
    return fmean(
        pair_animacy(topic, attribute, backend, config).pair_animacy
        for topic, attribute in pairs
    )


def orient(value: float, backend: PipelineBackend) -> float:
    """Re-sign a raw animacy value so that higher always means more animate.

    Under the lower-is-better relation convention a strong human match
    is a small score, so the raw human-minus-topic gap runs backwards;
    negating it restores the "higher = more animate" reading that
    selection and evaluation math relies on.
    """
    if backend.relation_convention == LOWER_BETTER:
        return -value
    return value


def oriented_sentence_animacy(
    pairs: Sequence[tuple[str, str]],
    backend: PipelineBackend,
    config: AnimacyConfig,
) -> float:
    return orient(sentence_animacy(pairs, backend, config), backend)
