"""Dependency-tree representation and topic/attribute pair extraction.

A sentence arrives as a flat list of tokens with POS tags and dependency
edges (one head per token, one root). Modifier tokens are folded into
their parents until a fixpoint, and the surviving units are scanned for
nominal-subject edges to produce (topic, attribute) pairs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

ROOT = -1

POS_TAGS = frozenset(
    {"noun", "pronoun", "verb", "adjective", "adverb", "determiner", "other"}
)

NSUBJ = "nsubj"

# Mergeable edge labels, lower number = merged earlier within a pass.
MERGE_PRIORITY = {
    "compound": 1,
    "nmod": 2,
    "poss": 3,
    "neg": 4,
    "det": 5,
    "pobj": 6,
    "acomp": 7,
}


class MalformedTree(ValueError):
    """Token list does not encode a single-rooted tree."""


@dataclass(frozen=True)
class ParseNode:
    index: int
    text: str
    pos: str
    dep_label: str
    head_index: int

    def __post_init__(self) -> None:
        if self.pos not in POS_TAGS:
            raise ValueError(f"unknown POS tag {self.pos!r}")
        if not self.text:
            raise ValueError("token text must be non-empty")


@dataclass(frozen=True)
class ParsedSentence:
    tokens: tuple[ParseNode, ...]

    @property
    def root_index(self) -> int:
        for node in self.tokens:
            if node.head_index in (ROOT, node.index):
                return node.index
        raise MalformedTree("no root node")


@dataclass(frozen=True)
class MergedNode:
    """A unit of one or more original tokens after modifier folding."""

    token_indices: tuple[int, ...]
    token_texts: tuple[str, ...]
    surface: str
    head_id: int | None  # position of the parent unit in the merged list
    dep_label: str
    pos_category: str
    head_token_index: int  # the token whose edge/POS the unit inherits


@dataclass(frozen=True)
class TopicAttributePair:
    topic: MergedNode
    attribute: MergedNode
    attribute_category: str  # noun | verb | adjective
    sentence_ref: str

    @property
    def topic_text(self) -> str:
        return _surface_without_punct(self.topic)

    @property
    def attribute_text(self) -> str:
        return _surface_without_punct(self.attribute)


def is_punct(text: str) -> bool:
    return not any(ch.isalnum() for ch in text)


def _surface_without_punct(node: MergedNode) -> str:
    return " ".join(t for t in node.token_texts if not is_punct(t))


def build_parsed_sentence(tokens: Iterable[ParseNode]) -> ParsedSentence:
    """Validate a token list as a single-rooted tree.

    Raises MalformedTree on an empty input, a dangling or out-of-range
    head index, zero or multiple roots, or a cycle.
    """
    toks = tuple(tokens)
    if not toks:
        raise MalformedTree("empty token sequence")
    n = len(toks)
    for i, node in enumerate(toks):
        if node.index != i:
            raise MalformedTree(f"token at position {i} has index {node.index}")
        if node.head_index != ROOT and not 0 <= node.head_index < n:
            raise MalformedTree(f"token {i} has dangling head {node.head_index}")
    roots = [t.index for t in toks if t.head_index in (ROOT, t.index)]
    if len(roots) != 1:
        raise MalformedTree(f"expected exactly one root, found {len(roots)}")
    for node in toks:
        seen = set()
        cur = node.index
        while cur != ROOT and cur != roots[0]:
            if cur in seen:
                raise MalformedTree(f"cycle through token {cur}")
            seen.add(cur)
            cur = toks[cur].head_index
    return ParsedSentence(tokens=toks)


class _Unit:
    __slots__ = ("indices", "head_token")

    def __init__(self, index: int):
        self.indices = {index}
        self.head_token = index


def merge_modifiers(sentence: ParsedSentence) -> tuple[MergedNode, ...]:
    """Fold modifier tokens into their parents until no merge applies.

    Each pass collects every unit whose incoming edge label is mergeable,
    orders them by (label priority, token index), and absorbs each into
    its current parent; children of an absorbed unit re-attach to the
    merged parent. Punctuation tokens are never absorbed. Passes repeat
    until a pass performs no merge, so chained modifiers fold fully.
    """
    toks = sentence.tokens
    root = sentence.root_index
    units: dict[int, _Unit] = {t.index: _Unit(t.index) for t in toks}
    # parent_of maps a unit (by head token) to the unit owning its head token
    owner = {t.index: t.index for t in toks}

    def parent_unit(unit_key: int) -> int | None:
        head = toks[unit_key].head_index
        if unit_key == root or head == ROOT or head == unit_key:
            return None
        return owner[head]

    changed = True
    while changed:
        changed = False
        candidates = [
            key
            for key, unit in units.items()
            if key != root
            and toks[key].dep_label in MERGE_PRIORITY
            and not is_punct(toks[key].text)
        ]
        candidates.sort(key=lambda k: (MERGE_PRIORITY[toks[k].dep_label], k))
        for key in candidates:
            if key not in units:  # absorbed earlier in this pass
                continue
            target = parent_unit(key)
            if target is None or target == key:
                continue
            units[target].indices.update(units[key].indices)
            for idx in units[key].indices:
                owner[idx] = target
            del units[key]
            changed = True

    ordered = sorted(units.values(), key=lambda u: u.head_token)
    position = {unit.head_token: i for i, unit in enumerate(ordered)}
    merged = []
    for unit in ordered:
        indices = tuple(sorted(unit.indices))
        texts = tuple(toks[i].text for i in indices)
        head_tok = toks[unit.head_token]
        parent = parent_unit(unit.head_token)
        merged.append(
            MergedNode(
                token_indices=indices,
                token_texts=texts,
                surface=" ".join(texts),
                head_id=None if parent is None else position[parent],
                dep_label=head_tok.dep_label,
                pos_category=head_tok.pos,
                head_token_index=head_tok.index,
            )
        )
    return tuple(merged)


def _attribute_category(pos: str) -> str:
    if pos == "verb":
        return "verb"
    if pos in ("adjective", "adverb"):
        return "adjective"
    return "noun"


def extract_topic_attribute_pairs(
    merged: Sequence[MergedNode], sentence_ref: str = ""
) -> tuple[TopicAttributePair, ...]:
    """Emit one pair per nominal-subject edge with a noun/pronoun topic."""
    pairs = []
    for node in merged:
        if node.dep_label != NSUBJ or node.head_id is None:
            continue
        if node.pos_category not in ("noun", "pronoun"):
            continue
        attribute = merged[node.head_id]
        pairs.append(
            TopicAttributePair(
                topic=node,
                attribute=attribute,
                attribute_category=_attribute_category(attribute.pos_category),
                sentence_ref=sentence_ref,
            )
        )
    pairs.sort(key=lambda p: p.topic.token_indices[0])
    return tuple(pairs)


def align_tokens(text: str, token_texts: Sequence[str]) -> list[tuple[int, int]]:
    """Map each token to its (start, end) character span in the raw text.

    Greedy left-to-right search; tokens with alphanumeric edges only match
    at word boundaries so that e.g. "is" cannot land inside "his". Returns
    None-free spans or raises ValueError when a token cannot be located.
    """
    spans = []
    pos = 0
    for tok in token_texts:
        pattern = re.escape(tok)
        if tok and tok[0].isalnum():
            pattern = r"(?<!\w)" + pattern
        if tok and tok[-1].isalnum():
            pattern = pattern + r"(?!\w)"
        match = re.compile(pattern).search(text, pos)
        if match is None:
            raise ValueError(f"token {tok!r} not found in text after offset {pos}")
        spans.append((match.start(), match.end()))
        pos = match.end()
    return spans


def merged_to_dict(node: MergedNode) -> dict:
    return {
        "token_indices": list(node.token_indices),
        "surface": node.surface,
        "head_id": node.head_id,
        "dep_label": node.dep_label,
        "pos_category": node.pos_category,
    }


def pair_to_dict(pair: TopicAttributePair) -> dict:
    return {
        "topic": pair.topic_text,
        "attribute": pair.attribute_text,
        "attribute_category": pair.attribute_category,
        "sentence_ref": pair.sentence_ref,
    }
