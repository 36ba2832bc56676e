"""Prompt construction: one deterministic template for all modalities.

The prompt is plain text; image attachments are returned as ordered slots
so the caller controls how bytes reach the chat backend. Given the same
inputs the rendered prompt is byte-identical, which makes cached runs and
golden tests possible.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from ..types import EvidenceItem, ImageCase, Pillar, PillarAnswers

log = logging.getLogger(__name__)

PILLAR_QUESTIONS = {
    Pillar.SOURCE: "Who is the source/author of the image? Answer with one or more person or entities in a few words.",
    Pillar.DATE: "When was the image taken? Answer with one or more dates in a few words.",
    Pillar.LOCATION: "Where was the image taken? Answer with one or more locations in a few words.",
    Pillar.MOTIVATION: "Why was the image taken? Answer in a few words.",
}

INSTRUCTIONS = {
    "image_only": "You are given an image. Your task is to answer a question about the image.",
    "text_only": "You are given online articles that used a certain image. Your task is to answer a question about the image.",
    "multimodal": "You are given an image and online articles that used the image. Your task is to answer a question about the image.",
}

SNIPPET_TOKEN_LIMIT = 512
MAX_PROMPT_CHARS = 16000
ABSENT_ANSWER = "Not enough information"


@dataclass
class BuiltPrompt:
    text: str
    image_slots: List[str] = field(default_factory=list)  # refs, demos first
    notes: List[str] = field(default_factory=list)


def snippet(text: str, limit: int = SNIPPET_TOKEN_LIMIT) -> str:
    words = (text or "").split()
    return " ".join(words[:limit])


def render_gold_answer(pillar: Pillar, gold: PillarAnswers) -> str:
    if pillar is Pillar.DATE:
        return ", ".join(str(d) for d in gold.date) if gold.date else ABSENT_ANSWER
    if pillar is Pillar.LOCATION:
        return ", ".join(loc.text for loc in gold.location) if gold.location else ABSENT_ANSWER
    if pillar is Pillar.SOURCE:
        return gold.source or ABSENT_ANSWER
    if pillar is Pillar.MOTIVATION:
        return gold.motivation or ABSENT_ANSWER
    raise ValueError(f"no question is generated for pillar {pillar}")


def _evidence_block(index: int, item: EvidenceItem, body: str) -> str:
    date = str(item.publication_date) if item.publication_date else "unknown"
    return (
        f"Evidence {index}:\n"
        f"Title: {item.title or 'unknown'}\n"
        f"Date: {date}\n"
        f"Text: {body}"
    )


def build_prompt(pillar: Pillar, cfg, evidence: Sequence[EvidenceItem],
                 demos: Sequence[ImageCase] = ()) -> BuiltPrompt:
    """Render the question prompt for one pillar.

    Layout: modality instruction, numbered demonstrations, numbered
    evidence blocks (title/date/snippet), the pillar question, answer cue.
    Evidence exceeding the length budget is truncated longest-first.
    """
    pillar = Pillar(pillar)
    if pillar not in PILLAR_QUESTIONS:
        raise ValueError(f"no question is generated for pillar {pillar}")
    modality = cfg.modality
    if modality not in INSTRUCTIONS:
        raise ValueError(f"unknown modality {modality!r}")
    if modality == "image_only" and evidence:
        raise ValueError("image_only prompts take no evidence")

    question = PILLAR_QUESTIONS[pillar]
    with_image = modality in ("image_only", "multimodal")
    notes: List[str] = []
    image_slots: List[str] = []

    demo_blocks: List[str] = []
    for k, demo in enumerate(demos, start=1):
        lines = [f"Demonstration {k}:"]
        if with_image:
            lines.append(f"[image {k}]")
            image_slots.append(demo.image_ref)
        lines.append(f"Question: {question}")
        lines.append(f"Answer: {render_gold_answer(pillar, demo.gold)}")
        demo_blocks.append("\n".join(lines))

    bodies = [snippet(item.body_text) for item in evidence]
    while True:
        evidence_blocks = [
            _evidence_block(j, item, body)
            for j, (item, body) in enumerate(zip(evidence, bodies), start=1)
        ]
        query_lines = []
        if with_image:
            query_lines.append("[image]")
        query_lines.append(f"Question: {question}")
        query_lines.append("Answer:")
        parts = [INSTRUCTIONS[modality], *demo_blocks, *evidence_blocks, "\n".join(query_lines)]
        text = "\n\n".join(parts)
        if len(text) <= MAX_PROMPT_CHARS or not any(bodies):
            break
        longest = max(range(len(bodies)), key=lambda i: len(bodies[i]))
        words = bodies[longest].split()
        bodies[longest] = " ".join(words[: max(0, len(words) // 2)])
        notes.append(f"truncated evidence {longest + 1}")

    if notes:
        log.info("prompt for %s truncated: %s", pillar.value, ", ".join(notes))
    if with_image:
        image_slots.append("query")  # resolved by the caller to the active image
    return BuiltPrompt(text=text, image_slots=image_slots, notes=notes)
