"""Record/replay backends: a closed world of (request, response) entries.

Fixture files are JSON Lines, UTF-8, one entry per line:

    {"contract": "<name>", "request": {...}, "response": {...}}

Replay answers only what was recorded and raises FixtureMiss otherwise;
it never fabricates a score. Recording wraps a live backend, tees every
exchange to disk (deduplicated), and replaying the file reproduces the
session exactly.
"""

from __future__ import annotations

import json
import threading
from pathlib import Path

from anima.backends.base import (
    CONTRACTS,
    CONVENTIONS,
    LOWER_BETTER,
    ContractViolation,
    FixtureMiss,
    FixtureParseError,
    InfillCandidate,
    InfillRequest,
    PipelineBackend,
    RelationQuery,
    canonical_phrase,
    check_infill_response,
)
from anima.deptree import ParseNode, ParsedSentence, build_parsed_sentence


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def canonical_request(contract: str, payload: dict) -> str:
    """Stable string key for a request; phrase fields are case-folded."""
    if contract in ("relation_scorer", "relation_generator"):
        payload = dict(payload)
        payload["head"] = canonical_phrase(payload["head"])
        if "tail" in payload:
            payload["tail"] = canonical_phrase(payload["tail"])
    return _dumps(payload)


def _parse_response_tokens(tokens: list[dict]) -> ParsedSentence:
    nodes = [
        ParseNode(
            index=t["index"],
            text=t["text"],
            pos=t["pos"],
            dep_label=t["dep"],
            head_index=t["head"],
        )
        for t in tokens
    ]
    return build_parsed_sentence(nodes)


class FixtureBackend(PipelineBackend):
    """Replays a recorded session; every miss is an error."""

    def __init__(self, entries: dict[tuple[str, str], object], convention: str):
        self._entries = entries
        self.relation_convention = convention

    def _lookup(self, contract: str, payload: dict):
        key = canonical_request(contract, payload)
        try:
            return self._entries[(contract, key)]
        except KeyError:
            raise FixtureMiss(f"unrecorded {contract} query: {key}") from None

    def relation_score(self, head: str, relation: str, tail: str) -> float:
        query = RelationQuery(head=head, relation=relation, tail=tail)
        response = self._lookup(
            "relation_scorer",
            {"head": query.head, "relation": query.relation, "tail": query.tail},
        )
        return float(response["score"])

    def relation_tails(self, head: str, relation: str, k: int) -> list[str]:
        RelationQuery(head=head, relation=relation, tail="_")
        response = self._lookup(
            "relation_generator", {"head": head, "relation": relation, "k": k}
        )
        return list(response["tails"])

    def infill(self, request: InfillRequest) -> list[InfillCandidate]:
        response = self._lookup(
            "infiller",
            {
                "masked_text": request.masked_text.strip(),
                "num_candidates": request.num_candidates,
                "beam_width": request.beam_width,
            },
        )
        candidates = [
            InfillCandidate(
                filled_text=c["filled_text"],
                replacement_span=c["replacement_span"],
                generation_score=float(c["generation_score"]),
            )
            for c in response["candidates"]
        ]
        return check_infill_response(request, candidates)

    def similarity(self, candidate: str, reference: str) -> float:
        response = self._lookup(
            "similarity",
            {"candidate": candidate.strip(), "reference": reference.strip()},
        )
        return float(response["score"])

    def perplexity(self, text: str) -> float:
        response = self._lookup("perplexity", {"text": text.strip()})
        return float(response["score"])

    def seq2seq(self, text: str, beam_width: int = 10) -> str:
        response = self._lookup(
            "seq2seq", {"text": text.strip(), "beam_width": beam_width}
        )
        return response["text"]

    def parse(self, text: str) -> ParsedSentence:
        response = self._lookup("parser", {"text": text.strip()})
        return _parse_response_tokens(response["tokens"])


def load_fixture(path: str | Path) -> FixtureBackend:
    """Load a fixture file into a replay backend.

    Raises FixtureParseError on malformed JSON, unknown contracts,
    entries whose key repeats with a different response, or mixed
    relation-score conventions.
    """
    entries: dict[tuple[str, str], object] = {}
    conventions = set()
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise FixtureParseError(f"{path}:{lineno}: bad JSON ({exc})") from exc
            try:
                contract = record["contract"]
                request = record["request"]
                response = record["response"]
            except (KeyError, TypeError):
                raise FixtureParseError(
                    f"{path}:{lineno}: entry must have contract/request/response"
                ) from None
            if contract not in CONTRACTS:
                raise FixtureParseError(
                    f"{path}:{lineno}: unknown contract {contract!r}"
                )
            if contract == "relation_scorer":
                convention = response.get("convention", LOWER_BETTER)
                if convention not in CONVENTIONS:
                    raise FixtureParseError(
                        f"{path}:{lineno}: unknown convention {convention!r}"
                    )
                conventions.add(convention)
            key = (contract, canonical_request(contract, request))
            if key in entries and _dumps(entries[key]) != _dumps(response):
                raise FixtureParseError(
                    f"{path}:{lineno}: conflicting duplicate for {key[1]}"
                )
            entries[key] = response
    if len(conventions) > 1:
        raise FixtureParseError(f"{path}: mixed relation-score conventions")
    convention = conventions.pop() if conventions else LOWER_BETTER
    return FixtureBackend(entries, convention)


class RecordingBackend(PipelineBackend):
    """Pass-through wrapper that logs every exchange to a fixture file."""

    def __init__(self, inner: PipelineBackend, path: str | Path):
        self._inner = inner
        self._path = Path(path)
        self._lock = threading.Lock()
        self._written: dict[tuple[str, str], str] = {}
        self._handle = open(self._path, "w", encoding="utf-8", newline="\n")
        self.relation_convention = inner.relation_convention

    def close(self) -> None:
        self._handle.close()

    def __enter__(self) -> "RecordingBackend":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    def _record(self, contract: str, request: dict, response) -> None:
        key = (contract, canonical_request(contract, request))
        blob = _dumps(response)
        with self._lock:
            previous = self._written.get(key)
            if previous is not None:
                if previous != blob:
                    raise ContractViolation(
                        f"inner backend answered {key[1]} inconsistently"
                    )
                return
            self._written[key] = blob
            self._handle.write(
                _dumps({"contract": contract, "request": request, "response": response})
                + "\n"
            )
            self._handle.flush()

    def relation_score(self, head: str, relation: str, tail: str) -> float:
        score = self._inner.relation_score(head, relation, tail)
        self._record(
            "relation_scorer",
            {
                "head": canonical_phrase(head),
                "relation": relation,
                "tail": canonical_phrase(tail),
            },
            {"score": score, "convention": self._inner.relation_convention},
        )
        return score

    def relation_tails(self, head: str, relation: str, k: int) -> list[str]:
        tails = self._inner.relation_tails(head, relation, k)
        self._record(
            "relation_generator",
            {"head": canonical_phrase(head), "relation": relation, "k": k},
            {"tails": list(tails)},
        )
        return tails

    def infill(self, request: InfillRequest) -> list[InfillCandidate]:
        candidates = self._inner.infill(request)
        self._record(
            "infiller",
            {
                "masked_text": request.masked_text.strip(),
                "num_candidates": request.num_candidates,
                "beam_width": request.beam_width,
            },
            {
                "candidates": [
                    {
                        "filled_text": c.filled_text,
                        "replacement_span": c.replacement_span,
                        "generation_score": c.generation_score,
                    }
                    for c in candidates
                ]
            },
        )
        return candidates

    def similarity(self, candidate: str, reference: str) -> float:
        score = self._inner.similarity(candidate, reference)
        self._record(
            "similarity",
            {"candidate": candidate.strip(), "reference": reference.strip()},
            {"score": score},
        )
        return score

    def perplexity(self, text: str) -> float:
        score = self._inner.perplexity(text)
        self._record("perplexity", {"text": text.strip()}, {"score": score})
        return score

    def seq2seq(self, text: str, beam_width: int = 10) -> str:
        output = self._inner.seq2seq(text, beam_width)
        self._record(
            "seq2seq",
            {"text": text.strip(), "beam_width": beam_width},
            {"text": output},
        )
        return output

    def parse(self, text: str) -> ParsedSentence:
        sentence = self._inner.parse(text)
        self._record(
            "parser",
            {"text": text.strip()},
            {
                "tokens": [
                    {
                        "index": t.index,
                        "text": t.text,
                        "pos": t.pos,
                        "dep": t.dep_label,
                        "head": t.head_index,
                    }
                    for t in sentence.tokens
                ]
            },
        )
        return sentence


def record_backend(inner: PipelineBackend, path: str | Path) -> RecordingBackend:
    """Wrap ``inner`` so every exchange is logged to ``path``."""
    return RecordingBackend(inner, path)
