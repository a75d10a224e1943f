"""Command-line entry point for the whole pipeline.

One YAML config file carries every knob (animacy threshold, selection
weights, candidate counts, seed, backend descriptor); command-line flags
override it. All commands stream JSONL and are reproducible: identical
inputs, config, fixtures, and seed give byte-identical outputs.

Exit codes: 0 success, 1 runtime failure, 2 usage/config/parse error.
"""

from __future__ import annotations

import argparse
import importlib
import json
import sys
from dataclasses import dataclass, fields
from pathlib import Path

import yaml

from anima import corpus as corpus_mod
from anima import metrics as metrics_mod
from anima.animacy import DEFAULT_HUMANSET, AnimacyConfig
from anima.backends.base import BackendError, PipelineBackend
from anima.backends.fixture import load_fixture
from anima.depersonify import (
    GenerationConfig,
    SelectionWeights,
    depersonify,
    result_to_dict,
)
from anima.deptree import (
    MalformedTree,
    extract_topic_attribute_pairs,
    merge_modifiers,
    merged_to_dict,
    pair_to_dict,
)
from anima.personify import STRATEGIES, generation_to_dict, personify


class ConfigError(ValueError):
    """Pipeline config file is malformed or carries unknown keys."""


@dataclass
class PipelineConfig:
    humanset: tuple[str, ...] = DEFAULT_HUMANSET
    threshold: float = 7.0
    epsilon: float = 1e-6
    alpha: float = 1.0
    beta: float = 1.0
    gamma: float = 1.0
    k: int = 10
    beam_width: int = 10
    mask_token: str = "<mask>"
    seed: int = 0
    split_ratio: float = 0.8
    backend: str | None = None
    strategy: str = "seq2seq"
    flip_animacy: bool = True

    def weights(self) -> SelectionWeights:
        return SelectionWeights(alpha=self.alpha, beta=self.beta, gamma=self.gamma)

    def generation(self) -> GenerationConfig:
        return GenerationConfig(
            k=self.k, beam_width=self.beam_width, mask_token=self.mask_token
        )

    def animacy(self) -> AnimacyConfig:
        return AnimacyConfig(
            humanset=tuple(self.humanset),
            threshold=self.threshold,
            epsilon=self.epsilon,
        )


def load_config(path: str | Path) -> PipelineConfig:
    with open(path, encoding="utf-8") as handle:
        try:
            payload = yaml.safe_load(handle)
        except yaml.YAMLError as exc:
            raise ConfigError(f"{path}: invalid YAML ({exc})") from exc
    if payload is None:
        payload = {}
    if not isinstance(payload, dict):
        raise ConfigError(f"{path}: config must be a mapping")
    known = {f.name for f in fields(PipelineConfig)}
    unknown = set(payload) - known
    if unknown:
        raise ConfigError(f"{path}: unknown config keys: {sorted(unknown)}")
    if "humanset" in payload:
        payload["humanset"] = tuple(payload["humanset"])
    try:
        config = PipelineConfig(**payload)
        config.weights(), config.generation(), config.animacy()
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    return config


def resolve_backend(descriptor: str) -> PipelineBackend:
    """Turn a backend descriptor into a live backend.

    ``fixture:<path>`` (or a bare path) loads a recorded fixture;
    ``import:<module>:<factory>`` imports and calls a zero-argument
    factory, the hook for real model adapters.
    """
    if descriptor.startswith("import:"):
        _, module_name, factory_name = descriptor.split(":", 2)
        module = importlib.import_module(module_name)
        return getattr(module, factory_name)()
    if descriptor.startswith("fixture:"):
        descriptor = descriptor.split(":", 1)[1]
    return load_fixture(descriptor)


def _corpus_format(path: str, explicit: str | None) -> str:
    if explicit:
        return explicit
    return "jsonl" if path.endswith(".jsonl") else "lines"


def _read_output_sentences(path: str) -> list[str]:
    """Plain text (one sentence per line) or generation-result JSONL."""
    if not path.endswith(".jsonl"):
        return [text for _, text in corpus_mod.ingest_corpus(path, "lines")]
    sentences = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            for key in ("personified", "literal", "text"):
                if key in obj:
                    sentences.append(obj[key])
                    break
            else:
                raise corpus_mod.CorpusParseError(
                    f"{path}:{lineno}: no sentence field found"
                )
    return sentences


def _config_from_args(args) -> PipelineConfig:
    config = load_config(args.config) if args.config else PipelineConfig()
    for name in ("seed", "ratio", "strategy", "backend"):
        value = getattr(args, name, None)
        if value is not None:
            if name == "ratio":
                config.split_ratio = value
            else:
                setattr(config, name, value)
    return config


def _require_backend(parser: argparse.ArgumentParser, config: PipelineConfig):
    if not config.backend:
        parser.error("a backend is required (--backend or config key 'backend')")
    return resolve_backend(config.backend)


def _write_jsonl(path: str, records) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for record in records:
            handle.write(json.dumps(record, sort_keys=True, ensure_ascii=False) + "\n")


def cmd_extract(args, parser) -> int:
    config = _config_from_args(args)
    backend = _require_backend(parser, config)
    records = corpus_mod.ingest_corpus(args.infile, _corpus_format(args.infile, args.format))

    def rows():
        for record_id, sentence in records:
            merged = merge_modifiers(backend.parse(sentence))
            pairs = extract_topic_attribute_pairs(merged, sentence_ref=record_id)
            yield {
                "id": record_id,
                "text": sentence,
                "merged": [merged_to_dict(m) for m in merged],
                "pairs": [pair_to_dict(p) for p in pairs],
            }

    _write_jsonl(args.outfile, rows())
    return 0


def cmd_depersonify(args, parser) -> int:
    config = _config_from_args(args)
    backend = _require_backend(parser, config)
    records = corpus_mod.ingest_corpus(args.infile, _corpus_format(args.infile, args.format))

    def rows():
        for record_id, sentence in records:
            result = depersonify(
                sentence,
                backend,
                weights=config.weights(),
                gen_config=config.generation(),
                animacy_config=config.animacy(),
            )
            payload = result_to_dict(result)
            payload["id"] = record_id
            yield payload

    _write_jsonl(args.outfile, rows())
    return 0


def cmd_personify(args, parser) -> int:
    config = _config_from_args(args)
    backend = _require_backend(parser, config)
    records = corpus_mod.ingest_corpus(args.infile, _corpus_format(args.infile, args.format))

    def rows():
        for record_id, sentence in records:
            result = personify(
                sentence,
                backend,
                config.strategy,
                weights=config.weights(),
                gen_config=config.generation(),
                animacy_config=config.animacy(),
                flip_animacy=config.flip_animacy,
            )
            payload = generation_to_dict(result)
            payload["id"] = record_id
            yield payload

    _write_jsonl(args.outfile, rows())
    return 0


def cmd_build_corpus(args, parser) -> int:
    config = _config_from_args(args)
    backend = _require_backend(parser, config)
    records = corpus_mod.ingest_corpus(args.infile, _corpus_format(args.infile, args.format))
    examples, traces, skipped = corpus_mod.build_parallel_corpus(
        records,
        backend,
        weights=config.weights(),
        gen_config=config.generation(),
        animacy_config=config.animacy(),
        source=args.source,
    )
    corpus_mod.write_corpus(args.outfile, examples)
    if args.traces:
        _write_jsonl(
            args.traces,
            (
                {"id": ref, "result": result_to_dict(result)}
                for ref, result in traces.items()
            ),
        )
    if args.skip_log:
        _write_jsonl(args.skip_log, skipped)
    train_config_path = args.train_config or str(
        Path(args.outfile).with_suffix(".train_config.json")
    )
    corpus_mod.save_training_config(corpus_mod.export_training_config(), train_config_path)
    print(
        f"built {len(examples)} parallel examples ({len(skipped)} skipped)",
        file=sys.stderr,
    )
    return 0


def cmd_split(args, parser) -> int:
    config = _config_from_args(args)
    examples = corpus_mod.read_corpus(args.infile)
    manifest = corpus_mod.split_corpus(
        [e.id for e in examples], seed=config.seed, ratio=config.split_ratio
    )
    corpus_mod.save_manifest(manifest, args.outfile)
    if args.train_out or args.val_out:
        by_id = {e.id: e for e in examples}
        if args.train_out:
            corpus_mod.write_corpus(
                args.train_out, [by_id[i] for i in manifest.train_ids]
            )
        if args.val_out:
            corpus_mod.write_corpus(args.val_out, [by_id[i] for i in manifest.val_ids])
    return 0


def cmd_evaluate(args, parser) -> int:
    config = _config_from_args(args)
    backend = _require_backend(parser, config)
    inputs = [t for _, t in corpus_mod.ingest_corpus(args.infile, "lines")]
    outputs = _read_output_sentences(args.outputs)
    golds = [t for _, t in corpus_mod.ingest_corpus(args.gold, "lines")]
    report = metrics_mod.evaluate_run(
        inputs, outputs, golds, backend, animacy_config=config.animacy()
    )
    with open(args.outfile, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(metrics_mod.report_to_json(report) + "\n")
    if args.tsv:
        with open(args.tsv, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(metrics_mod.report_to_tsv(report))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="anima",
        description="Personification generation and de-personification pipeline",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, out_required: bool = True) -> None:
        p.add_argument("--in", dest="infile", required=True, help="input sentences")
        p.add_argument("--out", dest="outfile", required=out_required)
        p.add_argument("--config", help="pipeline config YAML")
        p.add_argument("--backend", help="fixture path or import:<module>:<factory>")
        p.add_argument("--format", choices=("lines", "jsonl"), default=None)

    p = sub.add_parser("extract", help="dump merged trees and topic/attribute pairs")
    common(p)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("depersonify", help="rewrite personifications literally")
    common(p)
    p.set_defaults(func=cmd_depersonify)

    p = sub.add_parser("personify", help="generate personifications")
    common(p)
    p.add_argument("--strategy", choices=STRATEGIES, default=None)
    p.set_defaults(func=cmd_personify)

    p = sub.add_parser("build-corpus", help="build a parallel literal/personified corpus")
    common(p)
    p.add_argument("--traces", help="write per-sentence traces to this JSONL file")
    p.add_argument("--skip-log", help="write skipped-sentence log to this JSONL file")
    p.add_argument("--train-config", help="training-config JSON path")
    p.add_argument("--source", default="", help="source tag stored on each example")
    p.set_defaults(func=cmd_build_corpus)

    p = sub.add_parser("split", help="deterministic train/validation split")
    p.add_argument("--in", dest="infile", required=True, help="corpus JSONL")
    p.add_argument("--out", dest="outfile", required=True, help="manifest JSON")
    p.add_argument("--config", help="pipeline config YAML")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--ratio", type=float, default=None)
    p.add_argument("--train-out", help="optional train-split corpus JSONL")
    p.add_argument("--val-out", help="optional validation-split corpus JSONL")
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("evaluate", help="score generations against inputs and golds")
    p.add_argument("--in", dest="infile", required=True, help="literal inputs (text)")
    p.add_argument("--outputs", required=True, help="generated sentences (text or JSONL)")
    p.add_argument("--gold", required=True, help="reference personifications (text)")
    p.add_argument("--out", dest="outfile", required=True, help="report JSON")
    p.add_argument("--tsv", help="optional TSV report path")
    p.add_argument("--config", help="pipeline config YAML")
    p.add_argument("--backend", help="fixture path or import:<module>:<factory>")
    p.set_defaults(func=cmd_evaluate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except (ConfigError, corpus_mod.CorpusParseError, MalformedTree) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: no such file: {exc.filename}", file=sys.stderr)
        return 1
    except (BackendError, corpus_mod.CorpusTooSmall, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
