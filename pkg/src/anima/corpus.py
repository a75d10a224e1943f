"""Corpus ingestion, batch literalization, splitting, and training-config export."""

from __future__ import annotations

import json
import logging
import math
import random
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Sequence

from anima.animacy import AnimacyConfig
from anima.backends.base import BackendError, PipelineBackend
from anima.depersonify import (
    DepersonalizationResult,
    GenerationConfig,
    SelectionWeights,
    depersonify,
)
from anima.validation import check_backend

logger = logging.getLogger(__name__)


class CorpusParseError(ValueError):
    """Input corpus line could not be parsed; message carries the line number."""


class CorpusTooSmall(ValueError):
    """Splitting needs at least two examples."""


@dataclass(frozen=True)
class ParallelExample:
    id: str
    literal: str
    personified: str
    source: str = ""
    trace_ref: str = ""

    def __post_init__(self) -> None:
        if not self.literal or not self.personified:
            raise ValueError("literal and personified must be non-empty")


@dataclass(frozen=True)
class SplitManifest:
    seed: int
    ratio: float
    train_ids: tuple[str, ...]
    val_ids: tuple[str, ...]


@dataclass(frozen=True)
class TrainingConfig:
    learning_rate: float = 2e-5
    batch_size: int = 4
    epochs: int = 20
    warmup_steps: int = 400
    max_input_tokens: int = 64
    decode_beam: int = 10
    selection_rule: str = "lowest validation loss"


def ingest_corpus(path: str | Path, fmt: str = "lines") -> list[tuple[str, str]]:
    """Read (id, sentence) records from a text or JSONL file.

    ``lines``: one sentence per line, blank lines skipped, ids are the
    1-based line numbers. ``jsonl``: objects with ``text`` (or
    ``sentence``) and an optional ``id``; missing ids fall back to line
    numbers.
    """
    if fmt not in ("lines", "jsonl"):
        raise ValueError(f"unknown corpus format {fmt!r}")
    records: list[tuple[str, str]] = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            if fmt == "lines":
                records.append((str(lineno), line))
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusParseError(f"{path}:{lineno}: bad JSON ({exc})") from exc
            text = obj.get("text", obj.get("sentence"))
            if not isinstance(text, str) or not text.strip():
                raise CorpusParseError(f"{path}:{lineno}: missing text field")
            records.append((str(obj.get("id", lineno)), text.strip()))
    seen = set()
    for record_id, _ in records:
        if record_id in seen:
            raise CorpusParseError(f"{path}: duplicate id {record_id!r}")
        seen.add(record_id)
    return records


def build_parallel_corpus(
    records: Sequence[tuple[str, str]],
    backend: PipelineBackend,
    weights: SelectionWeights | None = None,
    gen_config: GenerationConfig | None = None,
    animacy_config: AnimacyConfig | None = None,
    source: str = "",
) -> tuple[list[ParallelExample], dict[str, DepersonalizationResult], list[dict]]:
    """Literalize every sentence; pair outputs with their originals.

    Sentences without an inanimate pair and sentences whose processing
    fails are excluded from the corpus and reported in the skip log.
    """
    check_backend(backend)
    examples: list[ParallelExample] = []
    traces: dict[str, DepersonalizationResult] = {}
    skipped: list[dict] = []
    for record_id, sentence in records:
        try:
            result = depersonify(
                sentence,
                backend,
                weights=weights,
                gen_config=gen_config,
                animacy_config=animacy_config,
            )
        except (BackendError, ValueError) as exc:
            logger.warning("skipping %s: %s", record_id, exc)
            skipped.append({"id": record_id, "sentence": sentence, "reason": str(exc)})
            continue
        if result.skipped:
            skipped.append(
                {"id": record_id, "sentence": sentence, "reason": result.skip_reason}
            )
            continue
        traces[record_id] = result
        examples.append(
            ParallelExample(
                id=record_id,
                literal=result.literal,
                personified=sentence,
                source=source,
                trace_ref=record_id,
            )
        )
    return examples, traces, skipped


def train_size(total: int, ratio: float) -> int:
    """Round half-up, then clamp so both sides stay non-empty."""
    size = math.floor(ratio * total + 0.5)
    return min(max(size, 1), total - 1)


def split_corpus(ids: Sequence[str], seed: int, ratio: float = 0.8) -> SplitManifest:
    """Deterministic seeded shuffle into train/validation id sets."""
    if not 0 < ratio < 1:
        raise ValueError("ratio must lie strictly between 0 and 1")
    ids = [str(i) for i in ids]
    if len(ids) != len(set(ids)):
        raise ValueError("corpus ids must be unique")
    if len(ids) < 2:
        raise CorpusTooSmall(f"need at least 2 examples, got {len(ids)}")
    shuffled = list(ids)
    random.Random(seed).shuffle(shuffled)
    cut = train_size(len(shuffled), ratio)
    return SplitManifest(
        seed=seed,
        ratio=ratio,
        train_ids=tuple(shuffled[:cut]),
        val_ids=tuple(shuffled[cut:]),
    )


def export_training_config(**overrides) -> TrainingConfig:
    """Fine-tuning defaults with explicit overrides; rejects bad values."""
    known = {f.name for f in fields(TrainingConfig)}
    unknown = set(overrides) - known
    if unknown:
        raise ValueError(f"unknown training-config keys: {sorted(unknown)}")
    config = TrainingConfig(**overrides)
    for name in (
        "learning_rate",
        "batch_size",
        "epochs",
        "warmup_steps",
        "max_input_tokens",
        "decode_beam",
    ):
        if getattr(config, name) <= 0:
            raise ValueError(f"{name} must be positive")
    return config


def example_to_dict(example: ParallelExample) -> dict:
    return asdict(example)


def write_corpus(path: str | Path, examples: Sequence[ParallelExample]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for example in examples:
            handle.write(
                json.dumps(example_to_dict(example), sort_keys=True, ensure_ascii=False)
                + "\n"
            )


def read_corpus(path: str | Path) -> list[ParallelExample]:
    examples = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
                examples.append(ParallelExample(**obj))
            except (json.JSONDecodeError, TypeError, ValueError) as exc:
                raise CorpusParseError(f"{path}:{lineno}: {exc}") from exc
    return examples


def save_manifest(manifest: SplitManifest, path: str | Path) -> None:
    payload = {
        "seed": manifest.seed,
        "ratio": manifest.ratio,
        "train_ids": list(manifest.train_ids),
        "val_ids": list(manifest.val_ids),
    }
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        json.dump(payload, handle, sort_keys=True, ensure_ascii=False, indent=2)
        handle.write("\n")


def load_manifest(path: str | Path) -> SplitManifest:
    with open(path, encoding="utf-8") as handle:
        payload = json.load(handle)
    return SplitManifest(
        seed=payload["seed"],
        ratio=payload["ratio"],
        train_ids=tuple(payload["train_ids"]),
        val_ids=tuple(payload["val_ids"]),
    )


def save_training_config(config: TrainingConfig, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        json.dump(asdict(config), handle, sort_keys=True, ensure_ascii=False, indent=2)
        handle.write("\n")
