"""Ranking quality: nDCG against an n-gram-overlap relevance target."""

from __future__ import annotations

import math
from typing import Dict, Sequence

from .text import rouge_l, tokenize

# Evidence sets are small (a handful of pages per image), so nDCG is
# evaluated over at most the top 10 positions.
NDCG_CUTOFF = 10

BODY_TOKEN_LIMIT = 512


def _dcg(gains: Sequence[float]) -> float:
    return sum(g / math.log2(i + 1) for i, g in enumerate(gains, start=1))


def ndcg(ranked: Sequence[str], relevance: Dict[str, float]) -> float:
    """Normalized discounted cumulative gain of a ranking.

    Every ranked id must have a relevance. A relevance vector of all zeros
    is a vacuous ranking task and scores 1.0.
    """
    missing = [rid for rid in ranked if rid not in relevance]
    if missing:
        raise ValueError(f"ranked ids without relevance: {missing[:3]}")
    k = min(NDCG_CUTOFF, len(ranked))
    gains = [relevance[rid] for rid in ranked[:k]]
    ideal = sorted((relevance[rid] for rid in ranked), reverse=True)[:k]
    idcg = _dcg(ideal)
    if idcg == 0.0:
        return 1.0
    return _dcg(gains) / idcg


def truncate_tokens(text: str, limit: int = BODY_TOKEN_LIMIT) -> str:
    tokens = tokenize(text)
    return " ".join(tokens[:limit])


def ranking_target(evidence: Sequence, gold_answer: str) -> Dict[str, float]:
    """Graded relevance per evidence URL: lexical overlap with the gold answer."""
    if not gold_answer:
        raise ValueError("gold answer must be non-empty")
    return {
        item.url: rouge_l(truncate_tokens(item.body_text), gold_answer)
        for item in evidence
    }
