"""Per-pillar score aggregation over a run's results."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from ..geo import Gazetteer, haversine_km
from ..types import CaseResult, ImageCase, LocationValue, Provenance
from ..util import canonical_json
from .delta import date_distance, date_em, delta_score
from .text import meteor, rouge_l

log = logging.getLogger(__name__)

KM_PER_UNIT = 1000.0  # coordinate distances are scored in thousands of km


class ScoringError(Exception):
    pass


def provenance_recall(cases: Sequence) -> Optional[float]:
    """Recall over gold-Yes cases: evidence set contains >= 1 scraped page.

    ``cases`` is an iterable of (gold provenance, evidence items). Cases
    whose gold answer is No/Unknown are excluded entirely; with no Yes
    cases the score is undefined and None is returned.
    """
    hits = 0
    total = 0
    for gold, evidence in cases:
        if Provenance(gold) is not Provenance.YES:
            continue
        total += 1
        if any(item.scrape_status.value == "ok" for item in evidence):
            hits += 1
    if total == 0:
        return None
    return hits / total


def bert_score(preds: Sequence[str], refs: Sequence[str], backend) -> List[float]:
    """Semantic similarity F1 per pair, delegated to the scoring backend.

    Pairs with an empty side score 0.0 by contract and are not sent out.
    Backend failures propagate (never silently zero).
    """
    if len(preds) != len(refs):
        raise ValueError("preds and refs must have equal length")
    out = [0.0] * len(preds)
    batch = [(i, p, r) for i, (p, r) in enumerate(zip(preds, refs)) if p.strip() and r.strip()]
    if batch:
        scores = backend.score([p for _, p, _ in batch], [r for _, _, r in batch])
        for (i, _, _), s in zip(batch, scores):
            out[i] = float(s)
    return out


@dataclass
class MetricReport:
    """Per-pillar metric means with case counts, plus the run descriptor."""

    run: dict = field(default_factory=dict)
    pillars: dict = field(default_factory=dict)  # pillar -> metric -> {mean, count}
    skips: dict = field(default_factory=dict)  # metric -> skipped case count

    def to_dict(self) -> dict:
        return {"run": self.run, "pillars": self.pillars, "skips": self.skips}

    def to_json(self) -> str:
        return canonical_json(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "MetricReport":
        return cls(run=d.get("run", {}), pillars=d.get("pillars", {}), skips=d.get("skips", {}))


_COLUMNS = [
    ("source", "rouge_l", "S-RougeL"),
    ("source", "meteor", "S-Meteor"),
    ("date", "em_day", "D-EMd"),
    ("date", "em_month", "D-EMm"),
    ("date", "em_year", "D-EMy"),
    ("date", "delta", "D-Delta"),
    ("location", "rouge_l", "L-RougeL"),
    ("location", "meteor", "L-Meteor"),
    ("location", "hl_delta", "L-HLDelta"),
    ("location", "co_delta", "L-CODelta"),
    ("motivation", "rouge_l", "M-RougeL"),
    ("motivation", "meteor", "M-Meteor"),
    ("motivation", "bert_score", "M-BertS"),
    ("provenance", "recall", "P-Recall"),
]


def render_table(report: MetricReport, stds: dict = None) -> str:
    """Human-readable percentage table (2 decimals), one column per metric."""
    headers, values, counts = [], [], []
    for pillar, metric, label in _COLUMNS:
        stat = report.pillars.get(pillar, {}).get(metric)
        headers.append(label)
        if stat is None or stat.get("mean") is None:
            values.append("-")
            counts.append(f"n={0 if stat is None else stat.get('count', 0)}")
        else:
            cell = f"{100 * stat['mean']:.2f}"
            if stds:
                std = stds.get(pillar, {}).get(metric)
                if std is not None:
                    cell += f"±{100 * std:.2f}"
            values.append(cell)
            counts.append(f"n={stat['count']}")
    widths = [max(len(h), len(v), len(c)) for h, v, c in zip(headers, values, counts)]
    lines = [
        "  ".join(h.rjust(w) for h, w in zip(headers, widths)),
        "  ".join(v.rjust(w) for v, w in zip(values, widths)),
        "  ".join(c.rjust(w) for c, w in zip(counts, widths)),
    ]
    if report.skips:
        skipped = ", ".join(f"{k}: {v}" for k, v in sorted(report.skips.items()))
        lines.append(f"skipped cases ({skipped})")
    if report.run:
        lines.insert(0, "run: " + canonical_json(report.run))
    return "\n".join(lines) + "\n"


def _mean(values: List[float]) -> Optional[float]:
    return sum(values) / len(values) if values else None


def _resolve_location(loc: LocationValue, gazetteer: Gazetteer):
    if loc.gazetteer_id is not None:
        node = gazetteer.get(loc.gazetteer_id)
        if node is not None:
            return node
    return gazetteer.resolve(loc.text)


def _coords_of(loc: LocationValue, gazetteer: Optional[Gazetteer]):
    if loc.coords is not None:
        return loc.coords
    if gazetteer is not None:
        node = _resolve_location(loc, gazetteer)
        if node is not None:
            return (node.lat, node.lon)
    return None


def score_run(
    results: Sequence[CaseResult],
    corpus: Sequence[ImageCase],
    *,
    gazetteer: Optional[Gazetteer] = None,
    score_backend=None,
    run_info: dict = None,
) -> MetricReport:
    """Aggregate a run into the per-pillar metric table.

    Cases with an absent gold answer for a pillar are skipped for that
    pillar; absent predictions score 0 (abstention is penalized, except
    for Provenance which is recall-only).
    """
    by_id = {case.id: case for case in corpus}
    unknown = [r.case_id for r in results if r.case_id not in by_id]
    if unknown:
        raise ScoringError(f"results reference unknown case ids: {unknown[:5]}")

    acc: Dict[str, Dict[str, List[float]]] = {
        "source": {"rouge_l": [], "meteor": []},
        "date": {"em_day": [], "em_month": [], "em_year": [], "delta": []},
        "location": {"rouge_l": [], "meteor": [], "hl_delta": [], "co_delta": []},
        "motivation": {"rouge_l": [], "meteor": []},
    }
    skips = {"hl_delta": 0, "co_delta": 0}
    bert_pairs: List = []
    provenance_yes = 0
    provenance_hits = 0

    for result in results:
        gold = by_id[result.case_id].gold
        pred = result.predicted

        if gold.source is not None:
            hyp = pred.source or ""
            acc["source"]["rouge_l"].append(rouge_l(hyp, gold.source))
            acc["source"]["meteor"].append(meteor(hyp, gold.source))

        if gold.date:
            for gran, key in (("day", "em_day"), ("month", "em_month"), ("year", "em_year")):
                hit = any(date_em(p, g, gran) for p in pred.date for g in gold.date)
                acc["date"][key].append(1.0 if hit else 0.0)
            acc["date"]["delta"].append(delta_score(list(pred.date), list(gold.date), date_distance))

        if gold.location:
            gold_text = ", ".join(loc.text for loc in gold.location)
            pred_text = ", ".join(loc.text for loc in pred.location)
            acc["location"]["rouge_l"].append(rouge_l(pred_text, gold_text))
            acc["location"]["meteor"].append(meteor(pred_text, gold_text))

            if gazetteer is not None:
                gold_nodes = [n for n in (_resolve_location(l, gazetteer) for l in gold.location) if n]
                if not gold_nodes:
                    skips["hl_delta"] += 1
                    log.info("case %s: no gold location resolvable, HL-delta skipped", result.case_id)
                else:
                    pred_nodes = [n for n in (_resolve_location(l, gazetteer) for l in pred.location) if n]
                    acc["location"]["hl_delta"].append(
                        delta_score(pred_nodes, gold_nodes, gazetteer.hierarchy_distance)
                    )
            gold_coords = [c for c in (_coords_of(l, gazetteer) for l in gold.location) if c]
            if not gold_coords:
                skips["co_delta"] += 1
                log.info("case %s: no gold coordinates, CO-delta skipped", result.case_id)
            else:
                pred_coords = [c for c in (_coords_of(l, gazetteer) for l in pred.location) if c]
                acc["location"]["co_delta"].append(
                    delta_score(pred_coords, gold_coords,
                                lambda a, b: haversine_km(a, b) / KM_PER_UNIT)
                )

        if gold.motivation is not None:
            hyp = pred.motivation or ""
            acc["motivation"]["rouge_l"].append(rouge_l(hyp, gold.motivation))
            acc["motivation"]["meteor"].append(meteor(hyp, gold.motivation))
            bert_pairs.append((hyp, gold.motivation))

        if gold.provenance is Provenance.YES:
            provenance_yes += 1
            if pred.provenance is Provenance.YES:
                provenance_hits += 1

    pillars: Dict[str, dict] = {}
    for pillar, metrics_map in acc.items():
        pillars[pillar] = {
            name: {"mean": _mean(values), "count": len(values)}
            for name, values in metrics_map.items()
        }
    if score_backend is not None and bert_pairs:
        scores = bert_score([p for p, _ in bert_pairs], [r for _, r in bert_pairs], score_backend)
        pillars["motivation"]["bert_score"] = {"mean": _mean(scores), "count": len(scores)}
    pillars["provenance"] = {
        "recall": {
            "mean": provenance_hits / provenance_yes if provenance_yes else None,
            "count": provenance_yes,
        }
    }
    return MetricReport(run=run_info or {}, pillars=pillars, skips=skips)


def summarize_repeats(reports: Sequence[MetricReport]) -> dict:
    """Mean and population std per metric across repeated runs."""
    if not reports:
        raise ValueError("no reports to summarize")
    summary: Dict[str, dict] = {}
    stds: Dict[str, dict] = {}
    for pillar in reports[0].pillars:
        summary[pillar] = {}
        stds[pillar] = {}
        for metric, stat in reports[0].pillars[pillar].items():
            means = [r.pillars[pillar][metric].get("mean") for r in reports]
            if any(m is None for m in means):
                summary[pillar][metric] = {"mean": None, "std": None, "count": stat["count"]}
                continue
            mu = sum(means) / len(means)
            var = sum((m - mu) ** 2 for m in means) / len(means)
            summary[pillar][metric] = {
                "mean": mu,
                "std": math.sqrt(var),
                "count": stat["count"],
            }
            stds[pillar][metric] = math.sqrt(var)
    return {"runs": len(reports), "pillars": summary, "stds": stds}
