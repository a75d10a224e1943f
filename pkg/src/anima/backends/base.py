"""Contracts for every external model capability the pipeline consumes.

No module outside this package names a concrete model. The six scoring
and generation contracts (plus sentence parsing) are the whole surface;
implementations answer them from recorded fixtures, scripted tables, or
real model adapters.
"""

from __future__ import annotations

import abc
from dataclasses import dataclass

from anima.deptree import ParsedSentence

RELATIONS = frozenset({"IsA", "CapableOf", "HasProperty"})

LOWER_BETTER = "lower_better"
HIGHER_BETTER = "higher_better"
CONVENTIONS = frozenset({LOWER_BETTER, HIGHER_BETTER})

CONTRACTS = (
    "relation_scorer",
    "relation_generator",
    "infiller",
    "similarity",
    "perplexity",
    "seq2seq",
    "parser",
)


class BackendError(Exception):
    """Base class for backend failures."""


class FixtureMiss(BackendError):
    """A query was not recorded in the fixture; never answered by guessing."""


class FixtureParseError(BackendError):
    """Fixture file violates the schema (bad JSON, conflicting duplicates)."""


class ContractViolation(BackendError):
    """A backend response broke a declared contract invariant."""


def canonical_phrase(text: str) -> str:
    return " ".join(text.strip().lower().split())


@dataclass(frozen=True)
class RelationQuery:
    head: str
    relation: str
    tail: str

    def __post_init__(self) -> None:
        if self.relation not in RELATIONS:
            raise ValueError(f"unsupported relation {self.relation!r}")


@dataclass(frozen=True)
class InfillRequest:
    masked_text: str
    num_candidates: int
    beam_width: int
    mask_token: str = "<mask>"

    def __post_init__(self) -> None:
        if self.num_candidates < 1:
            raise ValueError("num_candidates must be >= 1")
        if self.beam_width < 1:
            raise ValueError("beam_width must be >= 1")
        if self.masked_text.count(self.mask_token) != 1:
            raise ValueError(
                f"masked_text must contain exactly one {self.mask_token!r}"
            )


@dataclass(frozen=True)
class InfillCandidate:
    filled_text: str
    replacement_span: str
    generation_score: float


def check_infill_response(
    request: InfillRequest, candidates: list[InfillCandidate]
) -> list[InfillCandidate]:
    for cand in candidates:
        expected = request.masked_text.replace(
            request.mask_token, cand.replacement_span
        )
        if cand.filled_text != expected:
            raise ContractViolation(
                f"infill candidate {cand.replacement_span!r} does not rebuild "
                f"its filled_text from the masked input"
            )
    return candidates


class PipelineBackend(abc.ABC):
    """The pluggable model surface.

    ``relation_score`` follows a declared direction: with the default
    ``lower_better`` convention a smaller score is a stronger match
    (the knowledge-graph inference convention); ``higher_better`` flips
    that. Downstream selection math reads ``relation_convention`` rather
    than assuming either direction.
    """

    relation_convention: str = LOWER_BETTER

    @abc.abstractmethod
    def relation_score(self, head: str, relation: str, tail: str) -> float:
        """Score the triple (head, relation, tail)."""

    @abc.abstractmethod
    def relation_tails(self, head: str, relation: str, k: int) -> list[str]:
        """Top-k tail phrases for (head, relation), best first."""

    @abc.abstractmethod
    def infill(self, request: InfillRequest) -> list[InfillCandidate]:
        """Candidate fills for the single mask, best first."""

    @abc.abstractmethod
    def similarity(self, candidate: str, reference: str) -> float:
        """Semantic similarity in [0, 1], F1-style."""

    @abc.abstractmethod
    def perplexity(self, text: str) -> float:
        """Mean per-token negative log-likelihood; lower is more fluent."""

    @abc.abstractmethod
    def seq2seq(self, text: str, beam_width: int = 10) -> str:
        """Run the fine-tuned rewriter on a sentence."""

    @abc.abstractmethod
    def parse(self, text: str) -> ParsedSentence:
        """Dependency-parse a sentence (the upstream parser capability)."""
