"""Operator command line: corpus building, retrieval, runs, and reports.

Exit codes: 0 success, 1 fatal error, 2 configuration error.
"""

from __future__ import annotations

import dataclasses
import logging
import sys
from importlib import resources as importlib_resources
from pathlib import Path

import click

from .backends import BackendEndpoints, Backends
from .cache import BlobCache
from .config import AppConfig, ConfigError, load_config
from .corpus import load_corpus, save_corpus
from .dataset import HarvestConfig, build_corpus
from .evidence import CachingRisProvider, RetrievalConfig, load_blocklist
from .fetch import CachingFetcher, HttpFetcher
from .geo import ingest_gazetteer
from .metrics.ranking import ndcg, ranking_target
from .metrics.report import MetricReport, render_table, score_run, summarize_repeats
from .mocks import load_mock_backends
from .pipeline.ranking import rank_embedding, rank_time
from .pipeline.run import ImageLoader, RunConfig, run_split
from .pipeline.run import _retrieve as retrieve_evidence
from .types import CaseResult, Pillar, Split
from .util import atomic_write_text, canonical_json

log = logging.getLogger(__name__)


@click.group()
@click.option("--config", "config_path", type=click.Path(exists=True, path_type=Path),
              default=None, help="YAML configuration file")
@click.option("--verbose", is_flag=True, help="debug logging")
@click.pass_context
def cli(ctx, config_path, verbose):
    logging.basicConfig(level=logging.DEBUG if verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    ctx.obj = load_config(config_path)


def _connect(cfg: AppConfig, mock: bool, backend_url: str | None, cache: BlobCache) -> Backends:
    if mock:
        if cfg.fixtures_dir is None:
            raise ConfigError("--mock requires fixtures_dir in the configuration")
        return load_mock_backends(cfg.fixtures_dir)
    endpoints = cfg.endpoints
    if backend_url:
        endpoints = BackendEndpoints(**{f.name: backend_url for f in dataclasses.fields(BackendEndpoints)})
    backends = endpoints.connect()
    backends.fetcher = CachingFetcher(HttpFetcher(), cache)
    if backends.ris is not None:
        backends.ris = CachingRisProvider(backends.ris, cache)
    return backends


def _retrieval_config(cfg: AppConfig, cache_dir: Path) -> RetrievalConfig:
    if cfg.blocklist is not None:
        patterns = load_blocklist(cfg.blocklist)
    else:
        with importlib_resources.as_file(
            importlib_resources.files("fivepillars") / "resources" / "fc_blocklist.txt"
        ) as packaged:
            patterns = load_blocklist(packaged)
    return RetrievalConfig(
        max_urls=cfg.max_urls,
        fc_domain_blocklist=patterns,
        strict_undated=cfg.strict_undated,
        cache_dir=cache_dir,
    )


def _corpus(cfg: AppConfig):
    if cfg.corpus is None:
        raise ConfigError("no corpus configured")
    return load_corpus(cfg.corpus)


def _gazetteer(cfg: AppConfig):
    return ingest_gazetteer(cfg.gazetteer) if cfg.gazetteer else None


def _run_config(cfg: AppConfig, **overrides) -> RunConfig:
    values = cfg.run.to_dict()
    values.update({k: v for k, v in overrides.items() if v is not None})
    return RunConfig(**values)


def _write_results(path: Path, results) -> None:
    lines = [canonical_json(r.to_dict()) for r in results]
    atomic_write_text(path, "\n".join(lines) + ("\n" if lines else ""))


def _load_results(path: Path):
    import json

    out = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line.strip():
            out.append(CaseResult.from_dict(json.loads(line)))
    return out


_run_options = [
    click.option("--split", default=None, type=click.Choice([s.value for s in Split])),
    click.option("--modality", default=None,
                 type=click.Choice(["image_only", "text_only", "multimodal"])),
    click.option("--shots", default=None, type=click.IntRange(0, 2)),
    click.option("--top-k", "top_k", default=None, type=click.IntRange(min=1)),
    click.option("--ranking", default=None, type=click.Choice(["embedding", "time"])),
    click.option("--manipulation-mode", "manipulation_mode", default=None,
                 type=click.Choice(["no_detector", "detector", "perfect_detector", "oracle"])),
    click.option("--seed", default=None, type=int),
    click.option("--backend-url", default=None, help="one base URL for every backend"),
    click.option("--mock", is_flag=True, help="use the in-repo fixture mocks"),
    click.option("--out", "out_dir", default=None, type=click.Path(path_type=Path)),
]


def with_options(options):
    def wrap(fn):
        for option in reversed(options):
            fn = option(fn)
        return fn
    return wrap


@cli.command("run")
@with_options(_run_options)
@click.option("--repeats", default=None, type=click.IntRange(min=1),
              help="repeated generation runs (reported as mean±std)")
@click.pass_obj
def cmd_run(cfg: AppConfig, split, modality, shots, top_k, ranking, manipulation_mode,
            seed, backend_url, mock, out_dir, repeats):
    """Run the answer-generation pipeline on a split and score it."""
    split = Split(split or "test")
    out = Path(out_dir or cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    cache = BlobCache(cfg.cache_dir)
    backends = _connect(cfg, mock, backend_url, cache)
    retrieval = _retrieval_config(cfg, cfg.cache_dir)
    corpus = _corpus(cfg)
    gazetteer = _gazetteer(cfg)
    loader = ImageLoader(cfg.corpus.parent, fetcher=backends.fetcher)
    repeats = repeats or cfg.repeat_runs
    base = _run_config(cfg, modality=modality, shots=shots, top_k=top_k, ranking=ranking,
                       manipulation_mode=manipulation_mode, seed=seed)

    reports = []
    for i in range(1, repeats + 1):
        run_cfg = dataclasses.replace(base, seed=base.seed + (i - 1))
        results = run_split(corpus, split, run_cfg, backends, retrieval=retrieval,
                            image_loader=loader, cache=cache, workers=cfg.workers)
        _write_results(out / f"results_{i}.jsonl", results)
        report = score_run(results, corpus, gazetteer=gazetteer, score_backend=backends.scorer,
                           run_info={"split": split.value, "iteration": i, **run_cfg.to_dict()})
        atomic_write_text(out / f"report_{i}.json", report.to_json() + "\n")
        reports.append(report)
        click.echo(f"iteration {i}: {len(results)} cases")

    summary = summarize_repeats(reports)
    stds = summary.pop("stds")
    atomic_write_text(out / "report.json", canonical_json(summary) + "\n")
    atomic_write_text(out / "report.txt", render_table(reports[0], stds=stds))
    click.echo((out / "report.txt").read_text(), nl=False)


@cli.command("retrieve")
@with_options(_run_options)
@click.pass_obj
def cmd_retrieve(cfg: AppConfig, split, modality, shots, top_k, ranking,
                 manipulation_mode, seed, backend_url, mock, out_dir):
    """Run only the evidence stage to populate the cache."""
    split = Split(split or "test")
    cache = BlobCache(cfg.cache_dir)
    backends = _connect(cfg, mock, backend_url, cache)
    retrieval = _retrieval_config(cfg, cfg.cache_dir)
    corpus = _corpus(cfg)
    loader = ImageLoader(cfg.corpus.parent, fetcher=backends.fetcher)
    total = 0
    for case in corpus:
        if case.split is not split:
            continue
        trace, errors = [], []
        image = loader.load(case.image_ref)
        survivors = retrieve_evidence(case.image_ref, image, case, retrieval, backends, trace, errors)
        total += len(survivors)
        click.echo(f"{case.id}: {len(survivors)} evidence ({'; '.join(trace)})")
    click.echo(f"retrieved evidence for split {split.value}: {total} surviving items")


@cli.command("evaluate")
@click.option("--results", "results_path", required=True, type=click.Path(exists=True, path_type=Path))
@click.option("--mock", is_flag=True)
@click.option("--backend-url", default=None)
@click.option("--out", "out_dir", default=None, type=click.Path(path_type=Path))
@click.pass_obj
def cmd_evaluate(cfg: AppConfig, results_path, mock, backend_url, out_dir):
    """Score an existing results file against the corpus."""
    cache = BlobCache(cfg.cache_dir)
    backends = _connect(cfg, mock, backend_url, cache)
    corpus = _corpus(cfg)
    results = _load_results(results_path)
    report = score_run(results, corpus, gazetteer=_gazetteer(cfg),
                       score_backend=backends.scorer,
                       run_info={"results": Path(results_path).name})
    out = Path(out_dir or cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    atomic_write_text(out / "report.json", report.to_json() + "\n")
    atomic_write_text(out / "report.txt", render_table(report))
    click.echo((out / "report.txt").read_text(), nl=False)


_GOLD_TEXT = {
    Pillar.SOURCE: lambda gold: gold.source,
    Pillar.DATE: lambda gold: ", ".join(str(d) for d in gold.date) or None,
    Pillar.LOCATION: lambda gold: ", ".join(l.text for l in gold.location) or None,
    Pillar.MOTIVATION: lambda gold: gold.motivation,
}


@cli.command("rank-eval")
@with_options(_run_options)
@click.pass_obj
def cmd_rank_eval(cfg: AppConfig, split, modality, shots, top_k, ranking,
                  manipulation_mode, seed, backend_url, mock, out_dir):
    """Compare embedding vs chronological evidence ranking by nDCG."""
    split = Split(split or "test")
    cache = BlobCache(cfg.cache_dir)
    backends = _connect(cfg, mock, backend_url, cache)
    retrieval = _retrieval_config(cfg, cfg.cache_dir)
    corpus = _corpus(cfg)
    loader = ImageLoader(cfg.corpus.parent, fetcher=backends.fetcher)

    sums = {"embedding": {}, "time": {}}
    counts = {}
    for case in corpus:
        if case.split is not split:
            continue
        trace, errors = [], []
        image = loader.load(case.image_ref)
        evidence = retrieve_evidence(case.image_ref, image, case, retrieval, backends, trace, errors)
        if not evidence:
            continue
        orders = {
            "embedding": [i.url for i in rank_embedding(image, evidence, backends.embed)],
            "time": [i.url for i in rank_time(evidence)],
        }
        for pillar, extract in _GOLD_TEXT.items():
            gold_text = extract(case.gold)
            if not gold_text:
                continue
            relevance = ranking_target(evidence, gold_text)
            for method, order in orders.items():
                sums[method].setdefault(pillar.value, 0.0)
                sums[method][pillar.value] += ndcg(order, relevance)
            counts[pillar.value] = counts.get(pillar.value, 0) + 1

    table = {
        method: {
            pillar: (sums[method][pillar] / counts[pillar]) if counts.get(pillar) else None
            for pillar in ("source", "date", "location", "motivation")
        }
        for method in ("embedding", "time")
    }
    payload = {"split": split.value, "ndcg": table, "counts": counts}
    out = Path(out_dir or cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    atomic_write_text(out / "rank_eval.json", canonical_json(payload) + "\n")
    header = f"{'method':<10}" + "".join(f"{p:>12}" for p in ("source", "date", "location", "motivation"))
    lines = [header]
    for method in ("embedding", "time"):
        cells = "".join(
            f"{(100 * v):>12.2f}" if (v := table[method][p]) is not None else f"{'-':>12}"
            for p in ("source", "date", "location", "motivation")
        )
        lines.append(f"{method:<10}" + cells)
    text = "\n".join(lines) + "\n"
    atomic_write_text(out / "rank_eval.txt", text)
    click.echo(text, nl=False)


@cli.command("build-corpus")
@click.option("--domain", "domains", multiple=True, required=True)
@click.option("--from-year", default=2019, type=int)
@click.option("--to-year", default=2023, type=int)
@click.option("--mock", is_flag=True)
@click.option("--backend-url", default=None)
@click.option("--out", "out_path", required=True, type=click.Path(path_type=Path))
@click.pass_obj
def cmd_build_corpus(cfg: AppConfig, domains, from_year, to_year, mock, backend_url, out_path):
    """Harvest fact-check articles and build an annotated corpus."""
    cache = BlobCache(cfg.cache_dir)
    backends = _connect(cfg, mock, backend_url, cache)
    harvest = HarvestConfig(domains=tuple(domains), date_range=(from_year, to_year))
    report = build_corpus(harvest, backends, out_path)
    if not report.consistent():
        raise RuntimeError("attrition report counts are inconsistent")
    click.echo(canonical_json(report.to_dict()))


@cli.command("report")
@click.option("--report", "report_path", required=True, type=click.Path(exists=True, path_type=Path))
def cmd_report(report_path):
    """Render a stored JSON metric report as a table."""
    import json

    data = json.loads(Path(report_path).read_text(encoding="utf-8"))
    if "pillars" in data and "runs" in data:  # aggregate form
        stds = {p: {m: s.get("std") for m, s in metrics.items()}
                for p, metrics in data["pillars"].items()}
        means = {p: {m: {"mean": s.get("mean"), "count": s.get("count", 0)}
                     for m, s in metrics.items()}
                 for p, metrics in data["pillars"].items()}
        click.echo(render_table(MetricReport(run={"runs": data["runs"]}, pillars=means), stds=stds), nl=False)
    else:
        click.echo(render_table(MetricReport.from_dict(data)), nl=False)


def main():
    try:
        cli(standalone_mode=False)
        return 0
    except ConfigError as exc:
        click.echo(f"configuration error: {exc}", err=True)
        return 2
    except click.UsageError as exc:
        click.echo(f"usage error: {exc.format_message()}", err=True)
        return 2
    except click.exceptions.Abort:
        return 1
    except Exception as exc:  # single-line cause, nonzero exit
        click.echo(f"error: {exc}", err=True)
        return 1


if __name__ == "__main__":
    sys.exit(main())
