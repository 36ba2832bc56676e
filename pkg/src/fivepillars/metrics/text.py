"""Surface-overlap text metrics: LCS F-measure and METEOR.

One tokenizer is shared by every text metric and by the ranking relevance
target, so their scores stay comparable: lowercase, punctuation stripped,
whitespace split.
"""

from __future__ import annotations

import re
from typing import List, Tuple

from .stem import stem

_PUNCT = re.compile(r"[^\w\s]+", re.UNICODE)

METEOR_ALPHA = 0.9
METEOR_BETA = 3.0
METEOR_GAMMA = 0.5


def tokenize(text: str) -> List[str]:
    if not text:
        return []
    return _PUNCT.sub(" ", text.lower()).split()


def _lcs_len(a: List[str], b: List[str]) -> int:
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    for token in a:
        cur = [0] * (len(b) + 1)
        for j, other in enumerate(b, start=1):
            if token == other:
                cur[j] = prev[j - 1] + 1
            else:
                cur[j] = max(prev[j], cur[j - 1])
        prev = cur
    return prev[-1]


def rouge_l(pred: str, ref: str) -> float:
    """LCS-based F-measure over normalized tokens; empty side scores 0."""
    pred_t = tokenize(pred)
    ref_t = tokenize(ref)
    if not pred_t or not ref_t:
        return 0.0
    lcs = _lcs_len(pred_t, ref_t)
    if lcs == 0:
        return 0.0
    precision = lcs / len(pred_t)
    recall = lcs / len(ref_t)
    return 2 * precision * recall / (precision + recall)


def align_unigrams(pred_t: List[str], ref_t: List[str]) -> List[Tuple[int, int]]:
    """Two-stage unigram alignment: exact matches first, then stem matches.

    Within a stage each hypothesis token takes the first still-free
    reference token it can pair with (in-order greedy).
    """
    pairs = []
    used_pred = [False] * len(pred_t)
    used_ref = [False] * len(ref_t)
    stages = [
        (pred_t, ref_t),
        ([stem(t) for t in pred_t], [stem(t) for t in ref_t]),
    ]
    for keyed_pred, keyed_ref in stages:
        for i, token in enumerate(keyed_pred):
            if used_pred[i]:
                continue
            for j, other in enumerate(keyed_ref):
                if not used_ref[j] and token == other:
                    used_pred[i] = True
                    used_ref[j] = True
                    pairs.append((i, j))
                    break
    return sorted(pairs)


def count_chunks(pairs: List[Tuple[int, int]]) -> int:
    """Maximal runs of pairs contiguous on both sides, pairs sorted by i."""
    chunks = 0
    prev = None
    for i, j in pairs:
        if prev is None or i != prev[0] + 1 or j != prev[1] + 1:
            chunks += 1
        prev = (i, j)
    return chunks


def meteor(pred: str, ref: str) -> float:
    """Unigram METEOR with exact+stem matching (no synonym stage)."""
    pred_t = tokenize(pred)
    ref_t = tokenize(ref)
    if not pred_t or not ref_t:
        return 0.0
    pairs = align_unigrams(pred_t, ref_t)
    matches = len(pairs)
    if matches == 0:
        return 0.0
    precision = matches / len(pred_t)
    recall = matches / len(ref_t)
    f_mean = precision * recall / (METEOR_ALPHA * precision + (1 - METEOR_ALPHA) * recall)
    penalty = METEOR_GAMMA * (count_chunks(pairs) / matches) ** METEOR_BETA
    return f_mean * (1 - penalty)
