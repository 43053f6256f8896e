"""Runtime configuration for the pipeline, service and CLI.

Settings come from an optional YAML file plus two environment overrides
(``PG_MODEL_PATH``, ``PG_PORT``).  Example file:

.. code-block:: yaml

    summarizer:
      backend: builtin_extractive   # or: external
      endpoint: ""
      timeout_ms: 10000
    embedder:
      backend: builtin_hashed       # or: external
      dimension: 768
      ngram_orders: [1, 2]
      hash_seed: 0
      endpoint: ""
    grading:
      thresholds: {A: 0.4, B: 0.1, C: -0.1, D: -0.4}
    scoring:
      weights: {good: 1, neutral: 0, bad: -1, blocker: -3}
    service:
      port: 8000
      model_path: ""
      cors_origins: ["*"]
      max_body_bytes: 5242880
      max_paragraphs: 2000
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import yaml

from policygrader.embed import EmbedderConfig
from policygrader.score_grade import GradeThresholds, ScoreWeights
from policygrader.summarize import SummarizerConfig

DEFAULT_PORT = 8000
DEFAULT_MAX_BODY_BYTES = 5 * 1024 * 1024
DEFAULT_MAX_PARAGRAPHS = 2000


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class AppConfig:
    summarizer: SummarizerConfig = SummarizerConfig()
    embedder: EmbedderConfig = EmbedderConfig()
    thresholds: GradeThresholds = GradeThresholds()
    weights: ScoreWeights = ScoreWeights()
    model_path: str = ""
    port: int = DEFAULT_PORT
    cors_origins: tuple[str, ...] = ("*",)
    max_body_bytes: int = DEFAULT_MAX_BODY_BYTES
    max_paragraphs: int = DEFAULT_MAX_PARAGRAPHS


def _section(data: dict, name: str) -> dict:
    value = data.get(name, {})
    if value is None:
        return {}
    if not isinstance(value, dict):
        raise ConfigError(f"config section {name!r} must be a mapping")
    return value


def load_config(path: str | None = None, env: dict | None = None) -> AppConfig:
    """Build an :class:`AppConfig` from defaults, a YAML file and env vars."""
    env = os.environ if env is None else env
    data: dict = {}
    if path:
        try:
            with open(path, encoding="utf-8") as handle:
                data = yaml.safe_load(handle) or {}
        except FileNotFoundError as exc:
            raise ConfigError(f"config file not found: {path}") from exc
        except yaml.YAMLError as exc:
            raise ConfigError(f"config file {path} is not valid YAML: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config file must contain a mapping at the top level")

    summ = _section(data, "summarizer")
    summarizer = SummarizerConfig(
        backend=summ.get("backend", "builtin_extractive"),
        external_endpoint=summ.get("endpoint", "") or "",
        external_timeout_ms=int(summ.get("timeout_ms", 10_000)),
    )

    emb = _section(data, "embedder")
    embedder = EmbedderConfig(
        backend=emb.get("backend", "builtin_hashed"),
        dimension=int(emb.get("dimension", 768)),
        ngram_orders=tuple(emb.get("ngram_orders", (1, 2))),
        hash_seed=int(emb.get("hash_seed", 0)),
        external_endpoint=emb.get("endpoint", "") or "",
    )

    grading = _section(_section(data, "grading"), "thresholds")
    try:
        thresholds = GradeThresholds(
            a=float(grading.get("A", 0.4)),
            b=float(grading.get("B", 0.1)),
            c=float(grading.get("C", -0.1)),
            d=float(grading.get("D", -0.4)),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    weights_map = _section(_section(data, "scoring"), "weights")
    weights = ScoreWeights(
        good=int(weights_map.get("good", 1)),
        neutral=int(weights_map.get("neutral", 0)),
        bad=int(weights_map.get("bad", -1)),
        blocker=int(weights_map.get("blocker", -3)),
    )

    service = _section(data, "service")
    model_path = env.get("PG_MODEL_PATH", service.get("model_path", "") or "")
    port_raw = env.get("PG_PORT", service.get("port", DEFAULT_PORT))
    try:
        port = int(port_raw)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid port: {port_raw!r}") from exc

    return AppConfig(
        summarizer=summarizer,
        embedder=embedder,
        thresholds=thresholds,
        weights=weights,
        model_path=model_path,
        port=port,
        cors_origins=tuple(service.get("cors_origins", ("*",))),
        max_body_bytes=int(service.get("max_body_bytes", DEFAULT_MAX_BODY_BYTES)),
        max_paragraphs=int(service.get("max_paragraphs", DEFAULT_MAX_PARAGRAPHS)),
    )
