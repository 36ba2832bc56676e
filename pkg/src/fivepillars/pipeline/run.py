"""Case and split orchestration for the answer-generation baseline.

A case runs through: manipulation branch (mode-dependent image
substitution) -> reverse image search -> scraping -> temporal filter ->
fact-check-domain filter -> ranking -> top-k -> per-pillar prompting and
answer parsing. Every stage outcome lands in the result's trace and stage
errors never abort the run.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from ..cache import BlobCache
from ..evidence import RetrievalConfig, RetrievalError, filter_fc_domains, filter_temporal, ris_search, scrape_all
from ..types import (
    CaseResult,
    GENERATED_PILLARS,
    ImageCase,
    ImageType,
    Pillar,
    PillarAnswers,
    Provenance,
    ScrapeStatus,
    Split,
)
from ..util import canonical_json, sha256_hex
from .answers import detect_manipulation, generate_answer, parse_answer
from .prompts import build_prompt
from .ranking import rank_embedding, rank_time, select_demonstrations

log = logging.getLogger(__name__)

MODALITIES = ("image_only", "text_only", "multimodal")
RANKINGS = ("embedding", "time")
MANIPULATION_MODES = ("no_detector", "detector", "perfect_detector", "oracle")


@dataclass(frozen=True)
class RunConfig:
    modality: str = "text_only"
    shots: int = 0
    top_k: int = 3
    temperature: float = 0.2
    ranking: str = "embedding"
    manipulation_mode: str = "no_detector"
    seed: int = 0
    max_tokens: int = 256

    def __post_init__(self):
        if self.modality not in MODALITIES:
            raise ValueError(f"modality must be one of {MODALITIES}")
        if not (0 <= self.shots <= 2):
            raise ValueError("shots must be 0, 1 or 2")
        if self.top_k < 1:
            raise ValueError("top_k must be >= 1")
        if self.temperature < 0:
            raise ValueError("temperature must be >= 0")
        if self.ranking not in RANKINGS:
            raise ValueError(f"ranking must be one of {RANKINGS}")
        if self.manipulation_mode not in MANIPULATION_MODES:
            raise ValueError(f"manipulation_mode must be one of {MANIPULATION_MODES}")

    def to_dict(self) -> dict:
        return {
            "modality": self.modality,
            "shots": self.shots,
            "top_k": self.top_k,
            "temperature": self.temperature,
            "ranking": self.ranking,
            "manipulation_mode": self.manipulation_mode,
            "seed": self.seed,
            "max_tokens": self.max_tokens,
        }

    def fingerprint(self) -> str:
        return sha256_hex(canonical_json(self.to_dict()))[:16]


class ImageLoader:
    """Resolves image refs (local paths relative to a base dir, or URLs)."""

    def __init__(self, base_dir, fetcher=None):
        self.base_dir = Path(base_dir)
        self.fetcher = fetcher

    def load(self, ref: str) -> bytes:
        if ref.startswith(("http://", "https://")):
            if self.fetcher is None:
                raise OSError(f"no fetcher configured for remote image {ref}")
            result = self.fetcher.fetch(ref)
            if not result.ok:
                raise OSError(f"image fetch failed for {ref}: status {result.status} {result.error or ''}")
            return result.content
        path = Path(ref)
        if not path.is_absolute():
            path = self.base_dir / path
        return path.read_bytes()


def _retrieve(image_ref: str, image_bytes: bytes, case: ImageCase, retrieval: RetrievalConfig,
              backends, trace: List[str], errors: List[Tuple[str, str]]):
    """RIS + scrape + both filters; returns surviving items (rank order)."""
    try:
        ris = ris_search(image_ref, image_bytes, backends.ris, retrieval)
    except RetrievalError as exc:
        errors.append(("ris", str(exc)))
        trace.append("ris:error")
        return []
    trace.append(f"ris:{len(ris)}")
    items = scrape_all([r.page_url for r in ris], fetcher=backends.fetcher)
    ok_count = sum(1 for i in items if i.scrape_status is ScrapeStatus.OK)
    trace.append(f"scrape:ok={ok_count},err={len(items) - ok_count}")
    kept = filter_temporal(items, case.fc_publication_date, retrieval.strict_undated)
    trace.append(f"filter_temporal:kept={len(kept)},dropped={len(items) - len(kept)}")
    survivors = filter_fc_domains(kept, retrieval.fc_domain_blocklist)
    trace.append(f"filter_fc:kept={len(survivors)},dropped={len(kept) - len(survivors)}")
    return survivors


def _manipulation_branch(case: ImageCase, cfg: RunConfig, backends, image_loader,
                         image_ref: str, image_bytes: bytes, retrieval: RetrievalConfig,
                         trace: List[str], errors: List[Tuple[str, str]]):
    """Possibly substitute the original, unaltered image. Returns the active
    (ref, bytes) plus whether the RIS stage must re-run on it."""
    from .ranking import identify_original

    mode = cfg.manipulation_mode
    if mode == "no_detector":
        trace.append("manipulation:no_detector")
        return image_ref, image_bytes

    if mode == "oracle":
        if case.original_image_ref:
            trace.append(f"manipulation:oracle:substituted:{case.original_image_ref}")
            try:
                original = image_loader.load(case.original_image_ref)
                return case.original_image_ref, original
            except OSError as exc:
                errors.append(("oracle", f"original image unavailable: {exc}"))
                trace.append("manipulation:oracle:load_failed")
                return image_ref, image_bytes
        trace.append("manipulation:oracle:no_original")
        return image_ref, image_bytes

    if mode == "perfect_detector":
        label = "manipulated" if case.image_type is ImageType.MANIPULATED else "non_manipulated"
        trace.append(f"manipulation:perfect_detector:{label}:backend_not_called")
    else:  # detector
        label, score, warning = detect_manipulation(image_bytes, backends.classifier)
        if warning:
            errors.append(("classify", warning))
        trace.append(f"manipulation:detector:{label}")
    if label != "manipulated":
        return image_ref, image_bytes

    first_pass = _retrieve(image_ref, image_bytes, case, retrieval, backends, trace, errors)
    trace.append("evidence_first_pass:" + ",".join(i.url for i in first_pass))
    original_url = identify_original(first_pass)
    if original_url is None:
        trace.append("original_not_found")
        return image_ref, image_bytes
    trace.append(f"original_identified:{original_url}")
    try:
        original_bytes = image_loader.load(original_url)
    except OSError as exc:
        errors.append(("original_image", f"could not fetch {original_url}: {exc}"))
        return image_ref, image_bytes
    trace.append(f"substitute_image:{original_url}")
    return original_url, original_bytes


def run_case(case: ImageCase, cfg: RunConfig, backends, *,
             retrieval: RetrievalConfig = None,
             image_loader: ImageLoader = None,
             train_cases: Sequence[ImageCase] = ()) -> CaseResult:
    """Run the full baseline on one case; stage errors are recorded, never raised."""
    retrieval = retrieval or RetrievalConfig()
    image_loader = image_loader or ImageLoader(Path("."), fetcher=backends.fetcher)
    trace: List[str] = []
    errors: List[Tuple[str, str]] = []

    try:
        image_bytes = image_loader.load(case.image_ref)
    except OSError as exc:
        errors.append(("image", str(exc)))
        return CaseResult(case_id=case.id, errors=errors, stages=["image:unreadable"])

    active_ref, active_bytes = case.image_ref, image_bytes
    evidence: List = []
    if cfg.modality == "image_only":
        trace.append("retrieval:disabled")
        provenance = Provenance.UNKNOWN
    else:
        active_ref, active_bytes = _manipulation_branch(
            case, cfg, backends, image_loader, case.image_ref, image_bytes, retrieval, trace, errors
        )
        if any(t.startswith("substitute_image:") for t in trace):
            trace.append("ris_rerun")  # detector path: search again on the original
        evidence = _retrieve(active_ref, active_bytes, case, retrieval, backends, trace, errors)
        provenance = (
            Provenance.YES
            if any(i.scrape_status is ScrapeStatus.OK for i in evidence)
            else Provenance.UNKNOWN
        )
    trace.append(f"provenance:{provenance.value}")

    if evidence:
        if cfg.ranking == "embedding":
            try:
                evidence = rank_embedding(active_bytes, evidence, backends.embed)
                trace.append("rank:embedding")
            except Exception as exc:  # query embedding failure: keep retrieval order
                errors.append(("rank", f"embedding ranking failed: {exc}"))
                trace.append("rank:retrieval_order_fallback")
        else:
            evidence = rank_time(evidence)
            trace.append("rank:time")
    top_evidence = evidence[: cfg.top_k]

    demos: List[ImageCase] = []
    if cfg.shots > 0:
        demos, warning = select_demonstrations(
            active_bytes, list(train_cases), cfg.shots, backends.embed, image_loader
        )
        if warning:
            errors.append(("demonstrations", warning))
        trace.append("demonstrations:" + (",".join(d.id for d in demos) or "none"))

    raw_answers = {}
    prompts = {}
    parsed = {}
    skip_generation = cfg.modality == "text_only" and not top_evidence
    if skip_generation:
        trace.append("generate:skipped:no_evidence")
    for pillar in GENERATED_PILLARS:
        if skip_generation:
            parsed[pillar] = parse_answer(None, pillar)
            continue
        prompt = build_prompt(
            pillar, cfg, top_evidence if cfg.modality != "image_only" else (), demos
        )
        images = []
        for slot in prompt.image_slots:
            ref = active_ref if slot == "query" else slot
            try:
                images.append(image_loader.load(ref))
            except OSError as exc:
                errors.append(("prompt_image", f"{ref}: {exc}"))
        prompts[pillar.value] = prompt.text
        raw, error = generate_answer(prompt.text, images, backends.chat, cfg)
        raw_answers[pillar.value] = raw
        if error:
            errors.append((f"generate:{pillar.value}", error))
            trace.append(f"generate:{pillar.value}:{'refused' if error == 'refused' else 'error'}")
        else:
            trace.append(f"generate:{pillar.value}:ok")
        parsed[pillar] = parse_answer(raw, pillar)

    predicted = PillarAnswers(
        provenance=provenance,
        source=parsed.get(Pillar.SOURCE),
        date=parsed.get(Pillar.DATE, ()),
        location=parsed.get(Pillar.LOCATION, ()),
        motivation=parsed.get(Pillar.MOTIVATION),
    )
    return CaseResult(
        case_id=case.id,
        predicted=predicted,
        raw_answers=raw_answers,
        evidence_used=[item.url for item in top_evidence],
        demonstrations_used=[d.id for d in demos],
        prompts=prompts,
        errors=errors,
        stages=trace,
    )


def run_split(corpus: Sequence[ImageCase], split, cfg: RunConfig, backends, *,
              retrieval: RetrievalConfig = None,
              image_loader: ImageLoader = None,
              cache: Optional[BlobCache] = None,
              workers: int = 4) -> List[CaseResult]:
    """run_case over a split, parallel and resumable.

    Finished cases are persisted in the cache under the config fingerprint,
    so an interrupted run resumes without recomputation and reruns are
    byte-identical. Output is sorted by case id.
    """
    split = Split(split)
    selected = [case for case in corpus if case.split is split]
    train_cases = [case for case in corpus if case.split is Split.TRAIN]
    fingerprint = cfg.fingerprint()

    def one(case: ImageCase) -> CaseResult:
        key = f"caseresult:{fingerprint}:{case.id}"
        if cache is not None:
            cached = cache.get_json(key)
            if cached is not None:
                log.info("case %s: reusing cached result", case.id)
                return CaseResult.from_dict(cached)
        result = run_case(
            case, cfg, backends,
            retrieval=retrieval, image_loader=image_loader, train_cases=train_cases,
        )
        if cache is not None:
            cache.put_json(key, result.to_dict())
        return result

    if not selected:
        return []
    with ThreadPoolExecutor(max_workers=min(workers, len(selected))) as pool:
        results = list(pool.map(one, selected))
    return sorted(results, key=lambda r: r.case_id)
