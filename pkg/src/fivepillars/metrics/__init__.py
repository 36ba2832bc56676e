"""Scoring functions for the five pillars plus ranking evaluation."""

from .delta import date_distance, date_em, delta_score
from .ranking import ndcg, ranking_target
from .report import MetricReport, bert_score, provenance_recall, score_run
from .text import meteor, rouge_l, tokenize

__all__ = [
    "MetricReport",
    "bert_score",
    "date_distance",
    "date_em",
    "delta_score",
    "meteor",
    "ndcg",
    "provenance_recall",
    "ranking_target",
    "rouge_l",
    "score_run",
    "tokenize",
]
