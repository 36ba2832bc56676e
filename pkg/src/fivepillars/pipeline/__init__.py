"""End-to-end answer-generation pipeline: ranking, prompting, orchestration."""

from .answers import detect_manipulation, generate_answer, parse_answer
from .prompts import PILLAR_QUESTIONS, build_prompt
from .ranking import identify_original, rank_embedding, rank_time, select_demonstrations
from .run import ImageLoader, RunConfig, run_case, run_split

__all__ = [
    "ImageLoader",
    "PILLAR_QUESTIONS",
    "RunConfig",
    "build_prompt",
    "detect_manipulation",
    "generate_answer",
    "identify_original",
    "parse_answer",
    "rank_embedding",
    "rank_time",
    "run_case",
    "run_split",
    "select_demonstrations",
]
