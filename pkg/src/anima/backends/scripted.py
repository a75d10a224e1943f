"""A deterministic, table-driven backend for tests and fixture authoring.

Every contract answers from an explicit mapping first and an optional
fallback function second; anything else raises. Useful as the inner
backend of a recording session and as a stand-in model in unit tests.
"""

from __future__ import annotations

import hashlib
from typing import Callable, Mapping, Sequence

from anima.backends.base import (
    LOWER_BETTER,
    BackendError,
    InfillCandidate,
    InfillRequest,
    PipelineBackend,
    canonical_phrase,
    check_infill_response,
)
from anima.deptree import ParseNode, ParsedSentence, build_parsed_sentence


def stable_unit(key: str) -> float:
    """Deterministic pseudo-random value in [0, 1) derived from a string."""
    digest = hashlib.sha256(key.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") / 2**64


def sentence_from_rows(rows: Sequence[tuple[str, str, str, int]]) -> ParsedSentence:
    """Build a ParsedSentence from (text, pos, dep_label, head_index) rows."""
    nodes = [
        ParseNode(index=i, text=text, pos=pos, dep_label=dep, head_index=head)
        for i, (text, pos, dep, head) in enumerate(rows)
    ]
    return build_parsed_sentence(nodes)


class ScriptedBackend(PipelineBackend):
    def __init__(
        self,
        *,
        relation_scores: Mapping[tuple[str, str, str], float] | None = None,
        relation_score_fn: Callable[[str, str, str], float] | None = None,
        relation_tails: Mapping[tuple[str, str], Sequence[str]] | None = None,
        infills: Mapping[str, Sequence[tuple[str, float]]] | None = None,
        similarities: Mapping[tuple[str, str], float] | None = None,
        similarity_fn: Callable[[str, str], float] | None = None,
        perplexities: Mapping[str, float] | None = None,
        perplexity_fn: Callable[[str], float] | None = None,
        seq2seq_map: Mapping[str, str] | None = None,
        parses: Mapping[str, ParsedSentence | Sequence[tuple[str, str, str, int]]]
        | None = None,
        convention: str = LOWER_BETTER,
    ):
        self._relation_scores = {
            (canonical_phrase(h), r, canonical_phrase(t)): v
            for (h, r, t), v in (relation_scores or {}).items()
        }
        self._relation_score_fn = relation_score_fn
        self._relation_tails = {
            (canonical_phrase(h), r): list(tails)
            for (h, r), tails in (relation_tails or {}).items()
        }
        self._infills = {k.strip(): list(v) for k, v in (infills or {}).items()}
        self._similarities = {
            (a.strip(), b.strip()): v for (a, b), v in (similarities or {}).items()
        }
        self._similarity_fn = similarity_fn
        self._perplexities = {k.strip(): v for k, v in (perplexities or {}).items()}
        self._perplexity_fn = perplexity_fn
        self._seq2seq = {k.strip(): v for k, v in (seq2seq_map or {}).items()}
        self._parses = {}
        for text, value in (parses or {}).items():
            if not isinstance(value, ParsedSentence):
                value = sentence_from_rows(value)
            self._parses[text.strip()] = value
        self.relation_convention = convention

    def relation_score(self, head: str, relation: str, tail: str) -> float:
        key = (canonical_phrase(head), relation, canonical_phrase(tail))
        if key in self._relation_scores:
            return self._relation_scores[key]
        if self._relation_score_fn is not None:
            return self._relation_score_fn(*key)
        raise BackendError(f"no scripted relation score for {key}")

    def relation_tails(self, head: str, relation: str, k: int) -> list[str]:
        key = (canonical_phrase(head), relation)
        if key not in self._relation_tails:
            raise BackendError(f"no scripted tails for {key}")
        return self._relation_tails[key][:k]

    def infill(self, request: InfillRequest) -> list[InfillCandidate]:
        masked = request.masked_text.strip()
        if masked not in self._infills:
            raise BackendError(f"no scripted infill for {masked!r}")
        candidates = [
            InfillCandidate(
                filled_text=request.masked_text.replace(request.mask_token, span),
                replacement_span=span,
                generation_score=score,
            )
            for span, score in self._infills[masked][: request.num_candidates]
        ]
        return check_infill_response(request, candidates)

    def similarity(self, candidate: str, reference: str) -> float:
        key = (candidate.strip(), reference.strip())
        if key in self._similarities:
            return self._similarities[key]
        if self._similarity_fn is not None:
            return self._similarity_fn(*key)
        raise BackendError(f"no scripted similarity for {key}")

    def perplexity(self, text: str) -> float:
        text = text.strip()
        if text in self._perplexities:
            return self._perplexities[text]
        if self._perplexity_fn is not None:
            return self._perplexity_fn(text)
        raise BackendError(f"no scripted perplexity for {text!r}")

    def seq2seq(self, text: str, beam_width: int = 10) -> str:
        text = text.strip()
        if text not in self._seq2seq:
            raise BackendError(f"no scripted seq2seq output for {text!r}")
        return self._seq2seq[text]

    def parse(self, text: str) -> ParsedSentence:
        text = text.strip()
        if text not in self._parses:
            raise BackendError(f"no scripted parse for {text!r}")
        return self._parses[text]
