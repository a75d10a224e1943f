"""Light input checks shared by the estimator-style entry points."""

from __future__ import annotations

from typing import Iterable

from anima.backends.base import PipelineBackend


def check_sentence(value: object) -> str:
    if not isinstance(value, str):
        raise TypeError(f"expected a sentence string, got {type(value).__name__}")
    if not value.strip():
        raise ValueError("sentence must be non-empty")
    return value


def check_sentences(values: Iterable[object]) -> list[str]:
    if isinstance(values, str):
        raise TypeError("expected an iterable of sentences, got a single string")
    return [check_sentence(v) for v in values]


def check_backend(backend: object) -> PipelineBackend:
    if not isinstance(backend, PipelineBackend):
        raise TypeError(
            "backend must be a PipelineBackend (e.g. a loaded fixture); "
            f"got {type(backend).__name__}"
        )
    return backend


def check_positive(name: str, value: float) -> float:
    if value <= 0:
        raise ValueError(f"{name} must be positive, got {value}")
    return value
