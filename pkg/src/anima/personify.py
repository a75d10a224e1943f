"""Three personification strategies over literal input sentences.

* ``comet``: replace each inanimate topic's attribute with the
  knowledge-graph tail (CapableOf for verb attributes, HasProperty for
  adjectives) that humans attract most strongly.
* ``infill_baseline``: the de-personification mask/infill/select flow
  with the animacy term's sign flipped so animate fills win.
* ``seq2seq``: one call to the fine-tuned rewriter.
"""

from __future__ import annotations

from dataclasses import dataclass
from statistics import fmean

from sklearn.base import BaseEstimator, TransformerMixin

from anima.animacy import AnimacyConfig, orient
from anima.backends.base import PipelineBackend
from anima.depersonify import (
    GenerationConfig,
    SelectionWeights,
    attribute_char_span,
    depersonify,
    result_to_dict,
)
from anima.validation import check_backend, check_sentence, check_sentences

STRATEGIES = ("comet", "infill_baseline", "seq2seq")


@dataclass(frozen=True)
class GenerationResult:
    literal: str
    personified: str
    strategy: str
    trace: tuple[dict, ...] = ()


def _human_affinity(
    attribute: str, backend: PipelineBackend, config: AnimacyConfig
) -> float:
    raw = fmean(
        backend.relation_score(member, "CapableOf", attribute)
        for member in config.humanset
    )
    return orient(raw, backend)


def comet_personify(
    literal: str,
    backend: PipelineBackend,
    gen_config: GenerationConfig | None = None,
    animacy_config: AnimacyConfig | None = None,
) -> GenerationResult:
    """Swap attributes for the most human-associated knowledge-graph tail."""
    from anima.depersonify import _inanimate_pairs  # shared extraction flow

    check_sentence(literal)
    check_backend(backend)
    gen_config = gen_config or GenerationConfig()
    animacy_config = animacy_config or AnimacyConfig()

    initial_pairs, tokens = _inanimate_pairs(literal, backend, animacy_config)
    current = literal
    trace = []
    for step in range(len(initial_pairs)):
        if step == 0:
            pairs = initial_pairs
        else:
            pairs, tokens = _inanimate_pairs(current, backend, animacy_config)
            if len(pairs) <= step:
                break
        pair = pairs[step]
        relation = "HasProperty" if pair.attribute_category == "adjective" else "CapableOf"
        tails = backend.relation_tails(pair.topic_text, relation, gen_config.k)
        record = {
            "topic": pair.topic_text,
            "attribute": pair.attribute_text,
            "attribute_category": pair.attribute_category,
            "relation": relation,
            "candidates": [],
            "chosen": None,
        }
        if not tails:
            record["note"] = "kept original attribute: no candidates"
            trace.append(record)
            continue
        scored = [(tail, _human_affinity(tail, backend, animacy_config)) for tail in tails]
        record["candidates"] = [{"tail": t, "human_affinity": a} for t, a in scored]
        chosen = max(scored, key=lambda item: item[1])
        record["chosen"] = chosen[0]
        trace.append(record)
        start, end = attribute_char_span(current, pair, tokens)
        current = current[:start] + chosen[0] + current[end:]
    return GenerationResult(
        literal=literal, personified=current, strategy="comet", trace=tuple(trace)
    )


def infill_personify(
    literal: str,
    backend: PipelineBackend,
    weights: SelectionWeights | None = None,
    gen_config: GenerationConfig | None = None,
    animacy_config: AnimacyConfig | None = None,
    flip_animacy: bool = True,
) -> GenerationResult:
    """Mask/infill/select with the animacy log term rewarding animate fills.

    ``flip_animacy=False`` reuses the de-personification composite
    verbatim instead (both readings of the baseline are defensible).
    """
    result = depersonify(
        literal,
        backend,
        weights=weights,
        gen_config=gen_config,
        animacy_config=animacy_config,
        log_sign=1.0 if flip_animacy else -1.0,
    )
    return GenerationResult(
        literal=literal,
        personified=result.literal,
        strategy="infill_baseline",
        trace=tuple(result_to_dict(result)["per_mask"]),
    )


def seq2seq_personify(
    literal: str, backend: PipelineBackend, beam_width: int = 10
) -> GenerationResult:
    check_sentence(literal)
    check_backend(backend)
    personified = backend.seq2seq(literal, beam_width)
    if not personified:
        raise ValueError("seq2seq backend returned an empty sentence")
    return GenerationResult(literal=literal, personified=personified, strategy="seq2seq")


def personify(
    literal: str,
    backend: PipelineBackend,
    strategy: str,
    weights: SelectionWeights | None = None,
    gen_config: GenerationConfig | None = None,
    animacy_config: AnimacyConfig | None = None,
    flip_animacy: bool = True,
) -> GenerationResult:
    if strategy == "comet":
        return comet_personify(literal, backend, gen_config, animacy_config)
    if strategy == "infill_baseline":
        return infill_personify(
            literal, backend, weights, gen_config, animacy_config, flip_animacy
        )
    if strategy == "seq2seq":
        beam = (gen_config or GenerationConfig()).beam_width
        return seq2seq_personify(literal, backend, beam_width=beam)
    raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")


def generation_to_dict(result: GenerationResult) -> dict:
    return {
        "literal": result.literal,
        "personified": result.personified,
        "strategy": result.strategy,
        "trace": list(result.trace),
    }


class Personifier(TransformerMixin, BaseEstimator):
    """Sentence-to-sentence transformer that adds personifications.

    Stateless like :class:`~anima.depersonify.Depersonifier`; the
    ``strategy`` parameter selects between the knowledge-graph baseline,
    the infill baseline, and the fine-tuned seq2seq rewriter.
    """

    def __init__(
        self,
        backend: PipelineBackend | None = None,
        strategy: str = "seq2seq",
        alpha: float = 1.0,
        beta: float = 1.0,
        gamma: float = 1.0,
        k: int = 10,
        beam_width: int = 10,
        mask_token: str = "<mask>",
        humanset: tuple[str, ...] | None = None,
        threshold: float = 7.0,
        epsilon: float = 1e-6,
        flip_animacy: bool = True,
    ):
        self.backend = backend
        self.strategy = strategy
        self.alpha = alpha
        self.beta = beta
        self.gamma = gamma
        self.k = k
        self.beam_width = beam_width
        self.mask_token = mask_token
        self.humanset = humanset
        self.threshold = threshold
        self.epsilon = epsilon
        self.flip_animacy = flip_animacy

    def _configs(self):
        check_backend(self.backend)
        if self.strategy not in STRATEGIES:
            raise ValueError(
                f"unknown strategy {self.strategy!r}; expected one of {STRATEGIES}"
            )
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
        return [self.personify(s).personified for s in sentences]

    def personify(self, sentence: str) -> GenerationResult:
        weights, gen, animacy_config = self._configs()
        return personify(
            sentence,
            self.backend,
            self.strategy,
            weights=weights,
            gen_config=gen,
            animacy_config=animacy_config,
            flip_animacy=self.flip_animacy,
        )
