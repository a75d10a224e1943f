"""Rewriting personifications into literal sentences.

For each extracted pair whose topic is inanimate, the ascribed attribute
is masked out, candidate fills are generated, and each candidate is
scored on animacy, fluency, and meaning preservation. The composite

    S_i = alpha * (-log(max(S_anim, eps))) + beta * S_flue + gamma * S_mean

picks the replacement; masks are processed left to right with a re-parse
after every applied replacement so later spans stay valid.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from sklearn.base import BaseEstimator, TransformerMixin

from anima.animacy import (
    ANIMATE,
    AnimacyConfig,
    classify_animacy,
    orient,
    sentence_animacy,
)
from anima.backends.base import BackendError, InfillCandidate, InfillRequest, PipelineBackend
from anima.deptree import (
    TopicAttributePair,
    align_tokens,
    extract_topic_attribute_pairs,
    merge_modifiers,
)
from anima.validation import check_backend, check_sentence, check_sentences

logger = logging.getLogger(__name__)


class SpanMismatch(ValueError):
    """Attribute span cannot be located in the raw sentence text."""


class EmptyCandidates(ValueError):
    """An operation that needs candidates received none."""


class AllCandidatesFailed(RuntimeError):
    """Every candidate was dropped while scoring."""


@dataclass(frozen=True)
class SelectionWeights:
    alpha: float = 1.0
    beta: float = 1.0
    gamma: float = 1.0

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "gamma"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")


@dataclass(frozen=True)
class GenerationConfig:
    k: int = 10
    beam_width: int = 10
    mask_token: str = "<mask>"

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.beam_width < 1:
            raise ValueError("beam_width must be >= 1")
        if not self.mask_token:
            raise ValueError("mask_token must be non-empty")


@dataclass(frozen=True)
class ScoredCandidate:
    filled_text: str
    replacement_span: str
    s_anim: float  # oriented sentence animacy of the filled text's pairs
    s_flue: float  # backend generation score
    s_mean: float  # similarity against the original personification
    composite: float


@dataclass(frozen=True)
class PairOutcome:
    topic: str
    attribute: str
    attribute_category: str
    masked_text: str
    chosen: ScoredCandidate | None
    candidates: tuple[ScoredCandidate, ...]
    note: str = ""


@dataclass(frozen=True)
class DepersonalizationResult:
    original: str
    literal: str
    per_mask: tuple[PairOutcome, ...]
    skipped: bool
    skip_reason: str = ""


def attribute_char_span(
    sentence: str,
    pair: TopicAttributePair,
    tokens: tuple[str, ...] | None = None,
) -> tuple[int, int]:
    """Character span of the pair's attribute inside the raw sentence.

    With the full token sequence available the whole sentence is aligned
    and the exact member-token spans are used; otherwise the attribute's
    tokens are located left to right. Non-contiguous attribute spans and
    unlocatable tokens raise SpanMismatch.
    """
    indices = pair.attribute.token_indices
    members = set(indices)
    for j in range(indices[0], indices[-1] + 1):
        if j not in members:
            raise SpanMismatch(
                f"attribute {pair.attribute.surface!r} is not contiguous in its sentence"
            )
    try:
        if tokens is not None:
            spans = align_tokens(sentence, tokens)
            return spans[indices[0]][0], spans[indices[-1]][1]
        spans = align_tokens(sentence, pair.attribute.token_texts)
    except ValueError as exc:
        raise SpanMismatch(str(exc)) from exc
    start, end = spans[0][0], spans[-1][1]
    squeezed = "".join(sentence[start:end].split())
    if squeezed != "".join(pair.attribute.token_texts):
        raise SpanMismatch(
            f"attribute {pair.attribute.surface!r} is interleaved with other text"
        )
    return start, end


def mask_attribute(
    sentence: str,
    pair: TopicAttributePair,
    config: GenerationConfig,
    tokens: tuple[str, ...] | None = None,
) -> str:
    """Replace the pair's attribute span with exactly one mask token."""
    start, end = attribute_char_span(sentence, pair, tokens)
    return sentence[:start] + config.mask_token + sentence[end:]


def score_candidates(
    original: str,
    candidates: list[InfillCandidate],
    candidate_pairs: list[list[tuple[str, str]]],
    backend: PipelineBackend,
    weights: SelectionWeights,
    animacy_config: AnimacyConfig,
    log_sign: float = -1.0,
) -> list[ScoredCandidate]:
    """Attach animacy/fluency/meaning components and the composite score.

    ``candidate_pairs[i]`` lists the (topic, attribute) pairs to treat as
    candidate i's inanimate pairs. A candidate whose scoring fails is
    dropped with a logged reason; AllCandidatesFailed if none survive.
    """
    if not candidates:
        raise EmptyCandidates("no candidates to score")
    if len(candidate_pairs) != len(candidates):
        raise ValueError("candidate_pairs must align with candidates")
    scored = []
    for index, (candidate, pairs) in enumerate(zip(candidates, candidate_pairs)):
        try:
            s_anim = orient(sentence_animacy(pairs, backend, animacy_config), backend)
            s_mean = backend.similarity(candidate.filled_text, original)
        except BackendError as exc:
            logger.warning(
                "dropping candidate %d (%r): %s", index, candidate.replacement_span, exc
            )
            continue
        s_flue = candidate.generation_score
        composite = (
            weights.alpha * (log_sign * math.log(max(s_anim, animacy_config.epsilon)))
            + weights.beta * s_flue
            + weights.gamma * s_mean
        )
        scored.append(
            ScoredCandidate(
                filled_text=candidate.filled_text,
                replacement_span=candidate.replacement_span,
                s_anim=s_anim,
                s_flue=s_flue,
                s_mean=s_mean,
                composite=composite,
            )
        )
    if not scored:
        raise AllCandidatesFailed("every candidate failed scoring")
    return scored


def select_best(scored: list[ScoredCandidate]) -> ScoredCandidate:
    """Argmax by composite; ties go to higher fluency, then earlier index."""
    if not scored:
        raise EmptyCandidates("cannot select from an empty candidate list")
    best = scored[0]
    for candidate in scored[1:]:
        if candidate.composite > best.composite or (
            candidate.composite == best.composite and candidate.s_flue > best.s_flue
        ):
            best = candidate
    return best


def _inanimate_pairs(
    text: str, backend: PipelineBackend, animacy_config: AnimacyConfig
) -> tuple[list[TopicAttributePair], tuple[str, ...]]:
    parsed = backend.parse(text)
    merged = merge_modifiers(parsed)
    pairs = extract_topic_attribute_pairs(merged, sentence_ref=text)
    kept = [
        p
        for p in pairs
        if classify_animacy(p.topic_text, backend, animacy_config) != ANIMATE
    ]
    return kept, tuple(t.text for t in parsed.tokens)


def depersonify(
    sentence: str,
    backend: PipelineBackend,
    weights: SelectionWeights | None = None,
    gen_config: GenerationConfig | None = None,
    animacy_config: AnimacyConfig | None = None,
    log_sign: float = -1.0,
) -> DepersonalizationResult:
    """Run the full mask -> infill -> score -> select pipeline on one sentence.

    Pairs with animate topics are discarded up front. The number of mask
    steps is fixed by the initial parse; each step re-parses the current
    text (so spans survive earlier replacements) and targets the step-th
    inanimate pair in topic order. A sentence with no inanimate pair is
    returned untouched with ``skipped=True``.
    """
    check_sentence(sentence)
    check_backend(backend)
    weights = weights or SelectionWeights()
    gen_config = gen_config or GenerationConfig()
    animacy_config = animacy_config or AnimacyConfig()

    initial_pairs, tokens = _inanimate_pairs(sentence, backend, animacy_config)
    if not initial_pairs:
        return DepersonalizationResult(
            original=sentence,
            literal=sentence,
            per_mask=(),
            skipped=True,
            skip_reason="no inanimate topic-attribute pair",
        )

    current = sentence
    per_mask: list[PairOutcome] = []
    for step in range(len(initial_pairs)):
        if step == 0:
            pairs = initial_pairs
        else:
            pairs, tokens = _inanimate_pairs(current, backend, animacy_config)
            if len(pairs) <= step:
                break
        pair = pairs[step]
        masked = mask_attribute(current, pair, gen_config, tokens)
        request = InfillRequest(
            masked_text=masked,
            num_candidates=gen_config.k,
            beam_width=gen_config.beam_width,
            mask_token=gen_config.mask_token,
        )
        candidates = backend.infill(request)
        context = [(p.topic_text, p.attribute_text) for p in pairs]
        candidate_pairs = []
        for candidate in candidates:
            pairs_for = list(context)
            pairs_for[step] = (pair.topic_text, candidate.replacement_span)
            candidate_pairs.append(pairs_for)
        try:
            if not candidates:
                raise AllCandidatesFailed("backend produced no candidates")
            # meaning preservation is judged against the untouched input
            scored = score_candidates(
                sentence,
                candidates,
                candidate_pairs,
                backend,
                weights,
                animacy_config,
                log_sign=log_sign,
            )
        except AllCandidatesFailed as exc:
            per_mask.append(
                PairOutcome(
                    topic=pair.topic_text,
                    attribute=pair.attribute_text,
                    attribute_category=pair.attribute_category,
                    masked_text=masked,
                    chosen=None,
                    candidates=(),
                    note=f"kept original attribute: {exc}",
                )
            )
            continue
        chosen = select_best(scored)
        per_mask.append(
            PairOutcome(
                topic=pair.topic_text,
                attribute=pair.attribute_text,
                attribute_category=pair.attribute_category,
                masked_text=masked,
                chosen=chosen,
                candidates=tuple(scored),
            )
        )
        current = chosen.filled_text

    return DepersonalizationResult(
        original=sentence, literal=current, per_mask=tuple(per_mask), skipped=False
    )


def result_to_dict(result: DepersonalizationResult) -> dict:
    def candidate_dict(c: ScoredCandidate) -> dict:
        return {
            "filled_text": c.filled_text,
            "replacement_span": c.replacement_span,
            "s_anim": c.s_anim,
            "s_flue": c.s_flue,
            "s_mean": c.s_mean,
            "composite": c.composite,
        }

    return {
        "original": result.original,
        "literal": result.literal,
        "skipped": result.skipped,
        "skip_reason": result.skip_reason,
        "per_mask": [
            {
                "topic": p.topic,
                "attribute": p.attribute,
                "attribute_category": p.attribute_category,
                "masked_text": p.masked_text,
                "chosen": None if p.chosen is None else candidate_dict(p.chosen),
                "candidates": [candidate_dict(c) for c in p.candidates],
                "note": p.note,
            }
            for p in result.per_mask
        ],
    }


class Depersonifier(TransformerMixin, BaseEstimator):
    """Sentence-to-sentence transformer that literalizes personifications.

    Stateless in the sklearn sense: ``fit`` only validates parameters, so
    the estimator composes with pipelines and parameter search without a
    training phase. ``transform`` maps each input sentence to its literal
    rewrite (skipped sentences pass through unchanged); ``depersonify``
    exposes the full per-mask trace for one sentence.
    """

    def __init__(
        self,
        backend: PipelineBackend | None = None,
        alpha: float = 1.0,
        beta: float = 1.0,
        gamma: float = 1.0,
        k: int = 10,
        beam_width: int = 10,
        mask_token: str = "<mask>",
        humanset: tuple[str, ...] | None = None,
        threshold: float = 7.0,
        epsilon: float = 1e-6,
    ):
        self.backend = backend
        self.alpha = alpha
        self.beta = beta
        self.gamma = gamma
        self.k = k
        self.beam_width = beam_width
        self.mask_token = mask_token
        self.humanset = humanset
        self.threshold = threshold
        self.epsilon = epsilon

    def _configs(self) -> tuple[SelectionWeights, GenerationConfig, AnimacyConfig]:
        check_backend(self.backend)
        weights = SelectionWeights(alpha=self.alpha, beta=self.beta, gamma=self.gamma)
        gen = GenerationConfig(
            k=self.k, beam_width=self.beam_width, mask_token=self.mask_token
        )
        animacy = AnimacyConfig(
            humanset=tuple(self.humanset) if self.humanset else AnimacyConfig().humanset,
            threshold=self.threshold,
            epsilon=self.epsilon,
        )
        return weights, gen, animacy

    def fit(self, X=None, y=None):
        self._configs()
        return self

    def transform(self, X) -> list[str]:
        sentences = check_sentences(X)
        return [self.depersonify(s).literal for s in sentences]

    def depersonify(self, sentence: str) -> DepersonalizationResult:
        weights, gen, animacy_config = self._configs()
        return depersonify(
            sentence,
            self.backend,
            weights=weights,
            gen_config=gen,
            animacy_config=animacy_config,
        )
