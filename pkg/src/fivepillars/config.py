"""Operator configuration: one YAML file, overridable by flags and env vars.

Environment overrides use the prefix ``FIVEPILLARS_`` with the upper-cased
field name, e.g. ``FIVEPILLARS_CACHE_DIR`` or ``FIVEPILLARS_CHAT_URL``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import yaml

from .backends import BackendEndpoints
from .pipeline.run import RunConfig

ENV_PREFIX = "FIVEPILLARS_"

_ENDPOINT_FIELDS = ("chat_url", "embed_url", "classify_url", "score_url", "ris_url", "archive_url")
_PATH_FIELDS = ("corpus", "cache_dir", "gazetteer", "blocklist", "fixtures_dir", "out_dir")


class ConfigError(Exception):
    pass


@dataclass
class AppConfig:
    corpus: Optional[Path] = None
    cache_dir: Path = Path(".fivepillars-cache")
    gazetteer: Optional[Path] = None
    blocklist: Optional[Path] = None
    fixtures_dir: Optional[Path] = None
    out_dir: Path = Path("runs")
    endpoints: BackendEndpoints = field(default_factory=BackendEndpoints)
    run: RunConfig = field(default_factory=RunConfig)
    repeat_runs: int = 3
    max_urls: int = 50
    strict_undated: bool = False
    workers: int = 4

    def __post_init__(self):
        if self.repeat_runs < 1:
            raise ConfigError("repeat_runs must be >= 1")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")


def _env_overrides(data: dict) -> dict:
    for key, value in os.environ.items():
        if not key.startswith(ENV_PREFIX):
            continue
        name = key[len(ENV_PREFIX):].lower()
        data[name] = value
    return data


def load_config(path: Optional[Path] = None) -> AppConfig:
    """Build an AppConfig from YAML (optional) plus env overrides."""
    data: dict = {}
    if path is not None:
        try:
            loaded = yaml.safe_load(Path(path).read_text(encoding="utf-8"))
        except (OSError, yaml.YAMLError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if loaded is not None:
            if not isinstance(loaded, dict):
                raise ConfigError(f"config {path} must be a mapping")
            data.update(loaded)
    data = _env_overrides(data)

    base = Path(path).parent if path is not None else Path.cwd()

    def as_path(value) -> Optional[Path]:
        if value is None:
            return None
        p = Path(str(value))
        return p if p.is_absolute() else base / p

    endpoints = BackendEndpoints(**{
        name: str(data[name]) if data.get(name) else None for name in _ENDPOINT_FIELDS
    })
    run_fields = {}
    for name in ("modality", "ranking", "manipulation_mode"):
        if data.get(name) is not None:
            run_fields[name] = str(data[name])
    for name in ("shots", "top_k", "seed", "max_tokens"):
        if data.get(name) is not None:
            run_fields[name] = int(data[name])
    if data.get("temperature") is not None:
        run_fields["temperature"] = float(data["temperature"])
    try:
        run = RunConfig(**run_fields)
        return AppConfig(
            corpus=as_path(data.get("corpus")),
            cache_dir=as_path(data.get("cache_dir")) or Path(".fivepillars-cache"),
            gazetteer=as_path(data.get("gazetteer")),
            blocklist=as_path(data.get("blocklist")),
            fixtures_dir=as_path(data.get("fixtures_dir")),
            out_dir=as_path(data.get("out_dir")) or Path("runs"),
            endpoints=endpoints,
            run=run,
            repeat_runs=int(data.get("repeat_runs", 3)),
            max_urls=int(data.get("max_urls", 50)),
            strict_undated=bool(data.get("strict_undated", False)),
            workers=int(data.get("workers", 4)),
        )
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"invalid configuration: {exc}") from exc
