"""Personification generation and de-personification toolkit.

The pipeline turns personifications into literal sentences, builds
parallel literal/personified corpora from that process, generates
personifications by three strategies, and scores generations with
automatic metrics. Every model capability (relation scoring, masked
infilling, similarity, perplexity, seq2seq rewriting, parsing) sits
behind a pluggable backend contract with record/replay fixtures.
"""

from anima.animacy import (
    ANIMATE,
    DEFAULT_HUMANSET,
    INANIMATE,
    AnimacyBreakdown,
    AnimacyConfig,
    classify_animacy,
    is_a_person_score,
    pair_animacy,
    sentence_animacy,
)
from anima.backends import (
    FixtureBackend,
    FixtureMiss,
    FixtureParseError,
    InfillCandidate,
    InfillRequest,
    PipelineBackend,
    RecordingBackend,
    ScriptedBackend,
    load_fixture,
    record_backend,
)
from anima.corpus import (
    ParallelExample,
    SplitManifest,
    TrainingConfig,
    build_parallel_corpus,
    export_training_config,
    ingest_corpus,
    split_corpus,
)
from anima.depersonify import (
    DepersonalizationResult,
    Depersonifier,
    GenerationConfig,
    ScoredCandidate,
    SelectionWeights,
    depersonify,
    mask_attribute,
    score_candidates,
    select_best,
)
from anima.deptree import (
    MalformedTree,
    MergedNode,
    ParsedSentence,
    ParseNode,
    TopicAttributePair,
    build_parsed_sentence,
    extract_topic_attribute_pairs,
    merge_modifiers,
)
from anima.metrics import (
    DiversityReport,
    EvaluationReport,
    MetricRow,
    bleu,
    diversity_report,
    evaluate_run,
    fluency,
    output_animacy,
    similarity,
)
from anima.personify import (
    GenerationResult,
    Personifier,
    comet_personify,
    infill_personify,
    personify,
    seq2seq_personify,
)

__version__ = "0.1.0"

__all__ = [
    "ANIMATE",
    "AnimacyBreakdown",
    "AnimacyConfig",
    "DEFAULT_HUMANSET",
    "DepersonalizationResult",
    "Depersonifier",
    "DiversityReport",
    "EvaluationReport",
    "FixtureBackend",
    "FixtureMiss",
    "FixtureParseError",
    "GenerationConfig",
    "GenerationResult",
    "INANIMATE",
    "InfillCandidate",
    "InfillRequest",
    "MalformedTree",
    "MergedNode",
    "MetricRow",
    "ParallelExample",
    "ParseNode",
    "ParsedSentence",
    "Personifier",
    "PipelineBackend",
    "RecordingBackend",
    "ScoredCandidate",
    "ScriptedBackend",
    "SelectionWeights",
    "SplitManifest",
    "TopicAttributePair",
    "TrainingConfig",
    "bleu",
    "build_parallel_corpus",
    "build_parsed_sentence",
    "classify_animacy",
    "comet_personify",
    "depersonify",
    "diversity_report",
    "evaluate_run",
    "export_training_config",
    "extract_topic_attribute_pairs",
    "fluency",
    "infill_personify",
    "ingest_corpus",
    "is_a_person_score",
    "load_fixture",
    "mask_attribute",
    "merge_modifiers",
    "output_animacy",
    "pair_animacy",
    "personify",
    "record_backend",
    "score_candidates",
    "select_best",
    "sentence_animacy",
    "seq2seq_personify",
    "similarity",
    "split_corpus",
]
