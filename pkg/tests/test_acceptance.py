"""Acceptance suite: one test per criterion, replayed from recorded fixtures.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one PASS line
per criterion.
"""

import json
import random
import socket
import time
from pathlib import Path

import pytest

from anima.animacy import AnimacyConfig, classify_animacy, is_a_person_score
from anima.backends.base import InfillCandidate
from anima.backends.fixture import load_fixture
from anima.backends.scripted import ScriptedBackend
from anima.cli import main
from anima.corpus import export_training_config, read_corpus, split_corpus
from anima.depersonify import (
    SelectionWeights,
    depersonify,
    score_candidates,
    select_best,
)
from anima.deptree import (
    MERGE_PRIORITY,
    build_parsed_sentence,
    extract_topic_attribute_pairs,
    merge_modifiers,
)
from anima.metrics import bleu, diversity_report, fluency
from anima.personify import comet_personify, infill_personify, seq2seq_personify

from conftest import TRANSCRIPTS
from oracles import BLEU_PAIRS, oracle_bleu
from test_deptree import ALARM_CLOCK, OPPORTUNITY, nodes, random_tree

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def report(line: str) -> None:
    print(f"\n[acceptance] {line}")


def test_criterion_1_merge_algorithm():
    started = time.perf_counter()

    merged = merge_modifiers(build_parsed_sentence(nodes(ALARM_CLOCK)))
    assert [m.surface for m in merged] == ["The alarm clock", "yells"]
    pairs = extract_topic_attribute_pairs(merged)
    assert (pairs[0].topic_text, pairs[0].attribute_text) == ("The alarm clock", "yells")

    merged = merge_modifiers(build_parsed_sentence(nodes(OPPORTUNITY[:-1])))
    assert [m.surface for m in merged] == ["Opportunity", "was", "knocking", "at her door"]
    pairs = extract_topic_attribute_pairs(merged)
    assert (pairs[0].topic_text, pairs[0].attribute_text) == ("Opportunity", "knocking")

    rng = random.Random(11)
    for _ in range(200):
        size = rng.randint(1, 14)
        sentence = build_parsed_sentence(nodes(random_tree(rng, size)))
        merged = merge_modifiers(sentence)
        covered = sorted(i for unit in merged for i in unit.token_indices)
        assert covered == list(range(size))
        for unit in merged:
            if unit.head_id is None:
                continue
            head = sentence.tokens[unit.head_token_index]
            if any(ch.isalnum() for ch in head.text):
                assert unit.dep_label not in MERGE_PRIORITY
        # fixpoint: a second application has nothing left to merge
        assert merge_modifiers(sentence) == merged

    elapsed = time.perf_counter() - started
    assert elapsed < 1.0, f"merge criterion took {elapsed:.3f}s"
    report(f"criterion 1 PASS: merge traces + 200 random trees in {elapsed:.3f}s")


CALIBRATION = {
    "she": (5.31, "animate"),
    "person": (6.41, "animate"),
    "joe": (5.804, "animate"),
    "jane": (4.976, "animate"),
    "the police officer": (6.462, "animate"),
    "my friend": (6.805, "animate"),
    "moon": (8.743, "inanimate"),
    "opportunity": (9.488, "inanimate"),
    "stars": (8.717, "inanimate"),
    "my new iphone": (10.055, "inanimate"),
}


def test_criterion_2_animacy_calibration():
    backend = load_fixture(FIXTURES / "calibration.jsonl")
    config = AnimacyConfig()
    for phrase, (expected_score, expected_class) in CALIBRATION.items():
        score = is_a_person_score(phrase, backend, config)
        assert abs(score - expected_score) <= 1e-9, (phrase, score)
        assert classify_animacy(phrase, backend, config) == expected_class, phrase
    report("criterion 2 PASS: ten calibration phrases exact to 1e-9 under t=7.0")


def test_criterion_3_composite_selection():
    rng = random.Random(314159)
    spans = [f"w{i}" for i in range(12)]

    def stable(head, relation, tail):
        return (hash((head, tail)) % 173) / 10.0

    backend = ScriptedBackend(
        relation_score_fn=stable,
        similarity_fn=lambda a, b: (hash((a, b)) % 100) / 100.0,
    )
    config = AnimacyConfig()

    for trial in range(500):
        count = rng.randint(1, 12)
        candidates = [
            InfillCandidate(
                filled_text=f"s{trial} {span}",
                replacement_span=span,
                generation_score=round(rng.uniform(-4.0, 0.0), 2),
            )
            for span in rng.sample(spans, count)
        ]
        candidate_pairs = [[("topic", c.replacement_span)] for c in candidates]
        weights = SelectionWeights(
            alpha=rng.uniform(0.1, 3.0),
            beta=rng.uniform(0.1, 3.0),
            gamma=rng.uniform(0.1, 3.0),
        )
        scored = score_candidates(
            f"orig {trial}", candidates, candidate_pairs, backend, weights, config
        )
        chosen = select_best(scored)
        brute = max(
            range(len(scored)),
            key=lambda i: (scored[i].composite, scored[i].s_flue, -i),
        )
        assert chosen is scored[brute]

        scale = rng.uniform(0.05, 20.0)
        rescaled = SelectionWeights(
            alpha=scale * weights.alpha,
            beta=scale * weights.beta,
            gamma=scale * weights.gamma,
        )
        scored_scaled = score_candidates(
            f"orig {trial}", candidates, candidate_pairs, backend, rescaled, config
        )
        for before, after in zip(scored, scored_scaled):
            assert after.composite == pytest.approx(scale * before.composite, rel=1e-9)
        assert select_best(scored_scaled).replacement_span == chosen.replacement_span
    report("criterion 3 PASS: 500 candidate sets match brute force; scaling invariant")


def test_criterion_4_depersonification_transcripts():
    backend = load_fixture(FIXTURES / "table1.jsonl")
    for original, expected in TRANSCRIPTS:
        result = depersonify(original, backend)
        assert result.literal == expected, (
            f"transcript mismatch for {original!r}:\n"
            f"  got      {result.literal!r}\n  expected {expected!r}"
        )
        assert not result.skipped
    # the unchanged negative example still ran selection; the original
    # attribute simply won
    unchanged = depersonify("Opportunity was knocking at her door.", backend)
    assert unchanged.literal == unchanged.original
    assert unchanged.per_mask[0].chosen.replacement_span == "knocking"
    report("criterion 4 PASS: all 7 de-personification rows replay byte-for-byte")


def test_criterion_5_generation_transcripts():
    backend = load_fixture(FIXTURES / "generation.jsonl")
    replayed = 0

    comet = comet_personify("The news hit me hard.", backend)
    assert comet.personified == "The news report event late me hard."
    replayed += 1

    infill = infill_personify(
        "Panic is sweeping through the streets contagiously.", backend
    )
    assert infill.personified == "Panic is running through the streets contagiously."
    replayed += 1

    for source, target in [
        (
            "You are at a business dinner with your boss when your phone rings out loud",
            "You are at a business dinner with your boss when your phone yells out loud",
        ),
        (
            "In most horror settings, silence is key.",
            "In most horror settings, silence is a ghost.",
        ),
        ("The wind blew through me fast.", "The wind ran me fast."),
    ]:
        assert seq2seq_personify(source, backend).personified == target
        replayed += 1

    assert replayed >= 4
    report(f"criterion 5 PASS: {replayed} generation transcripts replay exactly")


def test_criterion_6_metrics():
    assert bleu("The house fell silent.", "The house fell silent.") == 1.0
    for cand, ref in BLEU_PAIRS:
        assert abs(bleu(cand, ref) - oracle_bleu(cand, ref)) <= 1e-6, (cand, ref)
    assert len(BLEU_PAIRS) == 20

    backend = load_fixture(FIXTURES / "calibration.jsonl")
    assert fluency("The stars danced playfully", backend) == 7.02
    assert fluency("The stars twinkled brightly", backend) == 5.24

    meta = json.loads((FIXTURES / "diversity.json").read_text())
    diversity_backend = load_fixture(FIXTURES / "diversity.jsonl")
    result = diversity_report(
        meta["sentences"], meta["training_attributes"], diversity_backend
    )
    assert result.sample_size == 30
    assert result.unique_attributes == 27
    assert result.repeat_count == 3
    assert result.novel_attributes == 9
    report(
        "criterion 6 PASS: BLEU identity/oracle, fluency 7.02/5.24, diversity 27/3/9"
    )


def test_criterion_7_corpus_determinism():
    ids = [str(i) for i in range(1, 11)]
    manifest = split_corpus(ids, seed=7)
    # frozen expectation pins cross-run, cross-platform reproducibility
    assert manifest.train_ids == ("9", "4", "2", "5", "8", "1", "10", "7")
    assert manifest.val_ids == ("3", "6")
    assert split_corpus(ids, seed=7) == manifest

    for size in range(2, 1001):
        split = split_corpus([str(i) for i in range(size)], seed=size)
        train, val = set(split.train_ids), set(split.val_ids)
        assert len(train) + len(val) == size
        assert not train & val
        assert train and val
        assert abs(len(train) - 0.8 * size) <= 1

    config = export_training_config()
    assert (
        config.learning_rate,
        config.batch_size,
        config.epochs,
        config.warmup_steps,
        config.max_input_tokens,
        config.decode_beam,
    ) == (2e-5, 4, 20, 400, 64, 10)
    assert config.selection_rule == "lowest validation loss"
    report("criterion 7 PASS: splits reproducible, 2..1000 partitions hold, defaults exact")


def test_criterion_8_end_to_end_cli(tmp_path, monkeypatch):
    def refuse_network(*args, **kwargs):
        raise AssertionError("network access attempted during fixture run")

    monkeypatch.setattr(socket, "socket", refuse_network)
    monkeypatch.setattr(socket, "create_connection", refuse_network)

    e2e = FIXTURES / "e2e"
    backend_arg = ["--backend", str(e2e / "session.jsonl")]
    config_arg = ["--config", str(e2e / "config.yaml")]
    corpus_txt = str(e2e / "corpus.txt")

    started = time.perf_counter()

    trees = tmp_path / "trees.jsonl"
    assert main(["extract", "--in", corpus_txt, "--out", str(trees), *backend_arg]) == 0

    results = tmp_path / "results.jsonl"
    assert (
        main(
            ["depersonify", "--in", corpus_txt, "--out", str(results), *backend_arg, *config_arg]
        )
        == 0
    )

    corpus_jsonl = tmp_path / "corpus.jsonl"
    traces = tmp_path / "traces.jsonl"
    assert (
        main(
            [
                "build-corpus",
                "--in", corpus_txt,
                "--out", str(corpus_jsonl),
                "--traces", str(traces),
                *backend_arg,
                *config_arg,
            ]
        )
        == 0
    )

    manifest_path = tmp_path / "manifest.json"
    assert (
        main(
            ["split", "--in", str(corpus_jsonl), "--out", str(manifest_path), *config_arg]
        )
        == 0
    )

    examples = read_corpus(corpus_jsonl)
    assert len(examples) == 46  # 50 inputs minus 4 animate-topic skips
    literals = tmp_path / "literals.txt"
    literals.write_text("".join(e.literal + "\n" for e in examples))
    golds = tmp_path / "golds.txt"
    golds.write_text("".join(e.personified + "\n" for e in examples))

    generated = tmp_path / "generated.jsonl"
    assert (
        main(
            [
                "personify",
                "--in", str(literals),
                "--out", str(generated),
                "--strategy", "seq2seq",
                *backend_arg,
                *config_arg,
            ]
        )
        == 0
    )

    report_path = tmp_path / "report.json"
    assert (
        main(
            [
                "evaluate",
                "--in", str(literals),
                "--outputs", str(generated),
                "--gold", str(golds),
                "--out", str(report_path),
                *backend_arg,
            ]
        )
        == 0
    )
    elapsed = time.perf_counter() - started
    assert elapsed < 30.0, f"pipeline took {elapsed:.1f}s"

    payload = json.loads(report_path.read_text())
    rows = payload["rows"]
    assert len(rows) == 46

    # spreadsheet-style recomputation of every aggregate from the rows
    for column in (
        "bleu_vs_input",
        "bleu_vs_gold",
        "sim_vs_input",
        "sim_vs_gold",
        "fluency",
        "animacy",
    ):
        values = [row[column] for row in rows if row[column] is not None]
        recomputed = sum(values) / len(values)
        assert abs(payload["aggregate"][column] - recomputed) <= 1e-9, column

    manifest = json.loads(manifest_path.read_text())
    assert len(manifest["train_ids"]) == 37  # round(0.8 * 46)
    assert len(manifest["val_ids"]) == 9
    assert set(manifest["train_ids"]) | set(manifest["val_ids"]) == {
        e.id for e in examples
    }

    report(
        f"criterion 8 PASS: CLI chain on 50 sentences in {elapsed:.2f}s, "
        "aggregates re-verified to 1e-9"
    )
