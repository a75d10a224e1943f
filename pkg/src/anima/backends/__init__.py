from anima.backends.base import (
    CONTRACTS,
    HIGHER_BETTER,
    LOWER_BETTER,
    RELATIONS,
    BackendError,
    ContractViolation,
    FixtureMiss,
    FixtureParseError,
    InfillCandidate,
    InfillRequest,
    PipelineBackend,
    RelationQuery,
    canonical_phrase,
)
from anima.backends.fixture import (
    FixtureBackend,
    RecordingBackend,
    load_fixture,
    record_backend,
)
from anima.backends.scripted import ScriptedBackend, sentence_from_rows, stable_unit

__all__ = [
    "CONTRACTS",
    "HIGHER_BETTER",
    "LOWER_BETTER",
    "RELATIONS",
    "BackendError",
    "ContractViolation",
    "FixtureBackend",
    "FixtureMiss",
    "FixtureParseError",
    "InfillCandidate",
    "InfillRequest",
    "PipelineBackend",
    "RecordingBackend",
    "RelationQuery",
    "ScriptedBackend",
    "canonical_phrase",
    "load_fixture",
    "record_backend",
    "sentence_from_rows",
    "stable_unit",
]
