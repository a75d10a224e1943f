"""Independent reference implementations used only to check the package.

Written separately from the package on purpose: n-grams via slicing into
plain dicts, the geometric mean as a fourth root of a product. Keep this
file free of anima imports.
"""

import math
import re


def oracle_bleu(candidate: str, reference: str) -> float:
    def toks(s):
        return re.findall(r"\w+|[^\w\s]", s.lower())

    cand, ref = toks(candidate), toks(reference)
    precisions = []
    for n in (1, 2, 3, 4):
        cgrams: dict = {}
        for i in range(len(cand) - n + 1):
            gram = tuple(cand[i : i + n])
            cgrams[gram] = cgrams.get(gram, 0) + 1
        rgrams: dict = {}
        for i in range(len(ref) - n + 1):
            gram = tuple(ref[i : i + n])
            rgrams[gram] = rgrams.get(gram, 0) + 1
        overlap = 0
        for gram, count in cgrams.items():
            overlap += min(count, rgrams.get(gram, 0))
        total = max(len(cand) - n + 1, 0)
        if n == 1:
            if overlap == 0:
                return 0.0
            precisions.append(overlap / total)
        else:
            precisions.append((overlap + 1) / (total + 1))
    geometric = (precisions[0] * precisions[1] * precisions[2] * precisions[3]) ** 0.25
    if len(cand) >= len(ref):
        penalty = 1.0
    else:
        penalty = math.exp(1.0 - len(ref) / len(cand))
    return penalty * geometric


# Twenty pairs spanning identity, paraphrase, partial overlap, reorderings,
# punctuation-heavy text, and length mismatches.
BLEU_PAIRS = [
    ("the cat sat on the mat", "the cat is on the mat"),
    ("The stars danced playfully.", "The stars danced playfully."),
    ("The stars danced playfully.", "The stars twinkled brightly."),
    ("a b c d e", "e d c b a"),
    ("Opportunity was knocking at her door.", "Opportunity knocked at the door."),
    ("How far that little candle throws its beams!", "How far the candle casts light!"),
    ("it rains", "it rains a lot these days"),
    ("it rains a lot these days", "it rains"),
    ("one two three four five six seven", "one two three four five six seven eight"),
    ("Hello, world!", "hello world"),
    ("silence is key", "silence is a ghost"),
    ("The wind blew through me fast.", "The wind ran me fast."),
    ("completely different words here", "nothing shared at all"),
    ("the the the the", "the"),
    ("a very long sentence with many common tokens inside it",
     "a very long sentence with several common tokens within it"),
    ("punctuation , everywhere ; truly !", "punctuation everywhere truly"),
    ("The camera loves her.", "The camera is always on her."),
    ("short", "short"),
    ("Any trust walked right out the door.", "Any trust had gone right out the door."),
    ("The full moon peeped through partial clouds.",
     "The full moon was visible through partial clouds."),
]
