"""Automatic evaluation: BLEU, semantic similarity, fluency, animacy, diversity.

BLEU is computed per sentence (BLEU-4, lowercased, punctuation split off,
add-one smoothing on the higher-order precisions) and corpus scores are
plain means of sentence scores. Similarity and fluency delegate to the
backend contracts; animacy reuses the candidate-selection metric on the
generated output's inanimate pairs.
"""

from __future__ import annotations

import json
import math
import re
from collections import Counter
from dataclasses import dataclass
from statistics import fmean
from typing import Sequence

from anima.animacy import (
    ANIMATE,
    AnimacyConfig,
    classify_animacy,
    orient,
    sentence_animacy,
)
from anima.backends.base import ContractViolation, PipelineBackend
from anima.deptree import extract_topic_attribute_pairs, merge_modifiers
from anima.validation import check_backend, check_sentence


def bleu_tokenize(text: str) -> list[str]:
    return re.findall(r"\w+|[^\w\s]", text.lower())


def _ngram_counts(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def bleu(candidate: str, reference: str) -> float:
    """Sentence-level smoothed BLEU-4 in [0, 1].

    Unigram precision is left unsmoothed so zero-overlap pairs score 0;
    n >= 2 precisions get add-one smoothing, which keeps short single
    references from zeroing the geometric mean. Identity scores exactly 1.
    """
    check_sentence(candidate)
    check_sentence(reference)
    cand = bleu_tokenize(candidate)
    ref = bleu_tokenize(reference)
    log_sum = 0.0
    for n in range(1, 5):
        counts = _ngram_counts(cand, n)
        ref_counts = _ngram_counts(ref, n)
        matches = sum(min(count, ref_counts[gram]) for gram, count in counts.items())
        total = sum(counts.values())
        if n == 1:
            if matches == 0:
                return 0.0
            precision = matches / total
        else:
            precision = (matches + 1) / (total + 1)
        log_sum += 0.25 * math.log(precision)
    brevity = 1.0 if len(cand) >= len(ref) else math.exp(1 - len(ref) / len(cand))
    return brevity * math.exp(log_sum)


def similarity(candidate: str, reference: str, backend: PipelineBackend) -> float:
    check_sentence(candidate)
    check_sentence(reference)
    score = check_backend(backend).similarity(candidate, reference)
    if not 0.0 <= score <= 1.0:
        raise ContractViolation(f"similarity score {score} outside [0, 1]")
    return score


def fluency(sentence: str, backend: PipelineBackend) -> float:
    """Mean per-token negative log-likelihood; lower is more fluent."""
    check_sentence(sentence)
    return check_backend(backend).perplexity(sentence)


def output_animacy(
    sentence: str,
    backend: PipelineBackend,
    animacy_config: AnimacyConfig | None = None,
) -> float | None:
    """Oriented sentence animacy of the inanimate pairs; None when there are none.

    Null-marked (None) sentences are excluded from aggregate means rather
    than counted as zero.
    """
    check_sentence(sentence)
    check_backend(backend)
    animacy_config = animacy_config or AnimacyConfig()
    merged = merge_modifiers(backend.parse(sentence))
    pairs = [
        (p.topic_text, p.attribute_text)
        for p in extract_topic_attribute_pairs(merged, sentence_ref=sentence)
        if classify_animacy(p.topic_text, backend, animacy_config) != ANIMATE
    ]
    if not pairs:
        return None
    return orient(sentence_animacy(pairs, backend, animacy_config), backend)


@dataclass(frozen=True)
class MetricRow:
    bleu_vs_input: float
    bleu_vs_gold: float
    sim_vs_input: float
    sim_vs_gold: float
    fluency: float
    animacy: float | None


@dataclass(frozen=True)
class EvaluationReport:
    aggregate: MetricRow
    rows: tuple[MetricRow, ...]


@dataclass(frozen=True)
class DiversityReport:
    sample_size: int
    unique_attributes: int
    repeat_count: int
    novel_attributes: int


def diversity_from_attributes(
    attributes: Sequence[str], training_attributes: Sequence[str]
) -> DiversityReport:
    """Count unique, repeated, and training-unseen attribute surfaces."""
    folded = [a.strip().lower() for a in attributes]
    inventory = {a.strip().lower() for a in training_attributes}
    unique = set(folded)
    return DiversityReport(
        sample_size=len(folded),
        unique_attributes=len(unique),
        repeat_count=len(folded) - len(unique),
        novel_attributes=len(unique - inventory),
    )


def diversity_report(
    sentences: Sequence[str],
    training_attributes: Sequence[str],
    backend: PipelineBackend,
    animacy_config: AnimacyConfig | None = None,
) -> DiversityReport:
    """Extract one personified attribute per output and summarize diversity.

    Each sentence contributes the attribute of its first inanimate-topic
    pair; sentences without one contribute nothing.
    """
    check_backend(backend)
    animacy_config = animacy_config or AnimacyConfig()
    attributes = []
    for sentence in sentences:
        merged = merge_modifiers(backend.parse(sentence))
        for pair in extract_topic_attribute_pairs(merged, sentence_ref=sentence):
            if classify_animacy(pair.topic_text, backend, animacy_config) != ANIMATE:
                attributes.append(pair.attribute_text)
                break
    return diversity_from_attributes(attributes, training_attributes)


def evaluate_run(
    inputs: Sequence[str],
    outputs: Sequence[str],
    golds: Sequence[str],
    backend: PipelineBackend,
    animacy_config: AnimacyConfig | None = None,
) -> EvaluationReport:
    """Score aligned (input, output, gold) triples and average the rows."""
    if not len(inputs) == len(outputs) == len(golds):
        raise ValueError(
            f"length mismatch: {len(inputs)} inputs, {len(outputs)} outputs, "
            f"{len(golds)} golds"
        )
    if not inputs:
        raise ValueError("nothing to evaluate")
    rows = []
    for inp, out, gold in zip(inputs, outputs, golds):
        rows.append(
            MetricRow(
                bleu_vs_input=bleu(out, inp),
                bleu_vs_gold=bleu(out, gold),
                sim_vs_input=similarity(out, inp, backend),
                sim_vs_gold=similarity(out, gold, backend),
                fluency=fluency(out, backend),
                animacy=output_animacy(out, backend, animacy_config),
            )
        )
    animacies = [r.animacy for r in rows if r.animacy is not None]
    aggregate = MetricRow(
        bleu_vs_input=fmean(r.bleu_vs_input for r in rows),
        bleu_vs_gold=fmean(r.bleu_vs_gold for r in rows),
        sim_vs_input=fmean(r.sim_vs_input for r in rows),
        sim_vs_gold=fmean(r.sim_vs_gold for r in rows),
        fluency=fmean(r.fluency for r in rows),
        animacy=fmean(animacies) if animacies else None,
    )
    return EvaluationReport(aggregate=aggregate, rows=tuple(rows))


_COLUMNS = (
    "bleu_vs_input",
    "bleu_vs_gold",
    "sim_vs_input",
    "sim_vs_gold",
    "fluency",
    "animacy",
)


def _row_dict(row: MetricRow) -> dict:
    return {name: getattr(row, name) for name in _COLUMNS}


def report_to_json(report: EvaluationReport) -> str:
    payload = {
        "aggregate": _row_dict(report.aggregate),
        "rows": [_row_dict(r) for r in report.rows],
    }
    return json.dumps(payload, sort_keys=True, ensure_ascii=False, indent=2)


def report_to_tsv(report: EvaluationReport) -> str:
    def fmt(value: float | None) -> str:
        return "" if value is None else f"{value:.6f}"

    lines = ["row\t" + "\t".join(_COLUMNS)]
    for i, row in enumerate(report.rows, start=1):
        lines.append(f"{i}\t" + "\t".join(fmt(getattr(row, c)) for c in _COLUMNS))
    lines.append(
        "aggregate\t" + "\t".join(fmt(getattr(report.aggregate, c)) for c in _COLUMNS)
    )
    return "\n".join(lines) + "\n"
