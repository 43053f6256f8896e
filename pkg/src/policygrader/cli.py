"""Command-line interface.

Subcommands::

    policygrader train     --data FILE --out FILE [--classifier KIND]
    policygrader evaluate  --data FILE            (rows for every classifier)
    policygrader grade     --in FILE | --url URL  --model FILE
    policygrader serve     --port N --model FILE
    policygrader plot      --model FILE --test FILE --method pca|tsne --out FILE
    policygrader dataset fetch --out FILE         (network, best effort)
    policygrader dataset stats --in FILE --bin-width N

All commands accept ``--config FILE`` (YAML); ``PG_MODEL_PATH`` and
``PG_PORT`` override the config file.
"""

from __future__ import annotations

import json

import click
import httpx
import numpy as np

from policygrader import dataset as ds_mod
from policygrader.classify import LABELS, MetricsRow, evaluate as evaluate_models, fit_classifier
from policygrader.config import AppConfig, ConfigError, load_config
from policygrader.dataset import SplitSpec
from policygrader.dimred import DimredError, Point2D, export_scatter, pca2, tsne2
from policygrader.model_io import ArtifactError, ModelArtifact, load_model
from policygrader.service import (
    AnalyzeRequest,
    BadRequestError,
    NoAnalyzableTextError,
    PipelineError,
    analyze,
    create_app,
    train_pipeline,
    _points_to_features,
)
from policygrader.textprep import extract_paragraph_blocks

CLASSIFIER_KINDS = ("knn", "gaussian_nb", "decision_tree")


def _load_cfg(path: str | None) -> AppConfig:
    try:
        return load_config(path)
    except ConfigError as exc:
        raise click.ClickException(str(exc)) from exc


def _load_artifact(path: str | None, cfg: AppConfig) -> ModelArtifact:
    resolved = path or cfg.model_path
    if not resolved:
        raise click.ClickException(
            "no model given; pass --model, set PG_MODEL_PATH or service.model_path"
        )
    try:
        return load_model(resolved)
    except (OSError, ArtifactError) as exc:
        raise click.ClickException(f"cannot load model {resolved}: {exc}") from exc


def _format_rows(rows: list[MetricsRow]) -> str:
    header = f"{'model':<14} {'precision':>9} {'recall':>9} {'f1':>9} {'accuracy':>9} {'auc':>9}"
    lines = [header]
    for row in rows:
        lines.append(
            f"{row.model_name:<14} {row.precision:>9.4f} {row.recall:>9.4f} "
            f"{row.f1:>9.4f} {row.accuracy:>9.4f} {row.auc:>9.4f}"
        )
    return "\n".join(lines)


@click.group()
def main() -> None:
    """Grade terms-of-service and privacy policies."""


@main.command()
@click.option("--data", "data_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False, writable=True))
@click.option("--classifier", type=click.Choice(CLASSIFIER_KINDS), default="knn", show_default=True)
@click.option("--k", type=int, default=3, show_default=True, help="Neighbours for knn.")
@click.option("--max-depth", type=int, default=12, show_default=True, help="Depth cap for decision_tree.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--train-fraction", type=float, default=0.8, show_default=True)
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None)
def train(data_path, out_path, classifier, k, max_depth, seed, train_fraction, config_path):
    """Train a classifier on an NDJSON dataset and write a model artifact."""
    cfg = _load_cfg(config_path)
    try:
        spec = SplitSpec(train_fraction=train_fraction, seed=seed)
        artifact, row = train_pipeline(
            data_path, spec, cfg.summarizer, cfg.embedder, classifier, out_path,
            k=k, max_depth=max_depth,
        )
    except (PipelineError, ValueError) as exc:
        raise click.ClickException(str(exc)) from exc
    meta = artifact.metadata
    click.echo(
        f"trained {classifier} on {meta['train_size']} points "
        f"(test {meta['test_size']}), wrote {out_path}"
    )
    click.echo(_format_rows([row]))


@main.command()
@click.option("--data", "data_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--k", type=int, default=3, show_default=True)
@click.option("--max-depth", type=int, default=12, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--train-fraction", type=float, default=0.8, show_default=True)
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None)
def evaluate(data_path, k, max_depth, seed, train_fraction, config_path):
    """Fit every registered classifier on the seeded split and print metrics."""
    cfg = _load_cfg(config_path)
    try:
        dataset = ds_mod.load(data_path)
        train_ds, test_ds = ds_mod.split(dataset, SplitSpec(train_fraction=train_fraction, seed=seed))
        train_x, train_y, _, _ = _points_to_features(train_ds.points, cfg.summarizer, cfg.embedder)
        test_x, test_y, _, _ = _points_to_features(test_ds.points, cfg.summarizer, cfg.embedder)
    except Exception as exc:
        raise click.ClickException(str(exc)) from exc
    fingerprint = cfg.embedder.fingerprint()
    rows = []
    for kind in CLASSIFIER_KINDS:
        try:
            model = fit_classifier(
                kind, list(zip(train_x, train_y)),
                k=k, max_depth=max_depth, fingerprint=fingerprint,
            )
            rows.extend(evaluate_models([(kind, model)], list(zip(test_x, test_y))))
        except ValueError as exc:
            click.echo(f"{kind}: skipped ({exc})", err=True)
    if not rows:
        raise click.ClickException("no classifier could be fitted")
    click.echo(_format_rows(rows))


@main.command()
@click.option("--in", "in_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="NDJSON file of {source, kind, paragraphs} documents.")
@click.option("--url", default=None, help="Fetch and grade a live page.")
@click.option("--model", "model_path", type=click.Path(dir_okay=False), default=None)
@click.option("--json", "as_json", is_flag=True, help="Emit the full report as JSON.")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None)
def grade(in_path, url, model_path, as_json, config_path):
    """Grade saved policy documents or a live URL."""
    if (in_path is None) == (url is None):
        raise click.ClickException("exactly one of --in or --url is required")
    cfg = _load_cfg(config_path)
    artifact = _load_artifact(model_path, cfg)
    documents = []
    if in_path is not None:
        with open(in_path, encoding="utf-8") as handle:
            for lineno, line in enumerate(handle, start=1):
                if not line.strip():
                    continue
                try:
                    documents.append(json.loads(line))
                except json.JSONDecodeError as exc:
                    raise click.ClickException(f"{in_path}:{lineno}: invalid JSON: {exc}") from exc
    else:
        try:
            response = httpx.get(url, follow_redirects=True, timeout=30.0)
            response.raise_for_status()
        except httpx.HTTPError as exc:
            raise click.ClickException(f"cannot fetch {url}: {exc}") from exc
        documents.append(
            {"source": url, "kind": "unknown", "paragraphs": extract_paragraph_blocks(response.text)}
        )
    try:
        request = AnalyzeRequest.parse({"url": url or "", "documents": documents})
        report = analyze(request, artifact, cfg)
    except (BadRequestError, NoAnalyzableTextError) as exc:
        raise click.ClickException(str(exc)) from exc
    if as_json:
        click.echo(json.dumps(report.to_dict(), indent=2, sort_keys=True))
        return
    counts = report.counts
    click.echo(f"grade: {report.grade}")
    click.echo(f"score: {report.score}")
    click.echo(
        f"counts: good={counts.good} neutral={counts.neutral} "
        f"bad={counts.bad} blocker={counts.blocker} total={counts.total}"
    )
    if report.degraded:
        click.echo("degraded: external backend fell back to builtin")
    for item in report.items:
        click.echo(f"  [{item.document_index}:{item.paragraph_index}] {item.label:<7} {item.summary}")


@main.command()
@click.option("--port", type=int, default=None, help="Defaults to config/PG_PORT.")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--model", "model_path", type=click.Path(dir_okay=False), default=None)
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None)
def serve(port, host, model_path, config_path):
    """Start the HTTP analysis service."""
    import uvicorn

    cfg = _load_cfg(config_path)
    resolved = model_path or cfg.model_path
    artifact = None
    if resolved:
        try:
            artifact = load_model(resolved)
        except (OSError, ArtifactError) as exc:
            raise click.ClickException(f"cannot load model {resolved}: {exc}") from exc
        click.echo(f"loaded model {artifact.fingerprint} from {resolved}")
    else:
        click.echo("no model configured; /v1/analyze will return 503", err=True)
    app = create_app(artifact, cfg)
    uvicorn.run(app, host=host, port=port if port is not None else cfg.port)


@main.command()
@click.option("--model", "model_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--test", "test_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--method", type=click.Choice(("pca", "tsne")), default="pca", show_default=True)
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False, writable=True))
@click.option("--seed", type=int, default=0, show_default=True, help="t-SNE init seed.")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None)
def plot(model_path, test_path, method, out_path, seed, config_path):
    """Project test-set embeddings to 2-D and write a scatter CSV."""
    cfg = _load_cfg(config_path)
    artifact = _load_artifact(model_path, cfg)
    try:
        dataset = ds_mod.load(test_path)
        vectors, labels, _, _ = _points_to_features(
            dataset.points, cfg.summarizer, artifact.embedder_config
        )
        matrix = np.stack([v.values for v in vectors])
        if method == "pca":
            coords, _ = pca2(matrix)
        else:
            coords = tsne2(matrix, seed=seed)
        points = [
            Point2D(x=float(x), y=float(y), label=label)
            for (x, y), label in zip(coords, labels)
        ]
        export_scatter(points, out_path)
    except (DimredError, ValueError) as exc:
        raise click.ClickException(str(exc)) from exc
    except Exception as exc:
        raise click.ClickException(f"cannot project {test_path}: {exc}") from exc
    click.echo(f"wrote {len(points)} points to {out_path}")


@main.group()
def dataset() -> None:
    """Dataset utilities."""


_FETCH_URL = "https://api.tosdr.org/all_services/v2/"


def _harvest_points(node, out: list) -> None:
    """Collect every object in a JSON tree carrying the three point keys."""
    if isinstance(node, dict):
        if {"point", "quoteDoc", "quoteText"} <= node.keys():
            out.append({k: node[k] for k in ("point", "quoteDoc", "quoteText")})
        for value in node.values():
            _harvest_points(value, out)
    elif isinstance(node, list):
        for value in node:
            _harvest_points(value, out)


@dataset.command()
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False, writable=True))
@click.option("--url", default=_FETCH_URL, show_default=True)
def fetch(out_path, url):
    """Download labeled points from a live API (best effort)."""
    try:
        response = httpx.get(url, follow_redirects=True, timeout=60.0)
        response.raise_for_status()
        payload = response.json()
    except (httpx.HTTPError, ValueError) as exc:
        raise click.ClickException(f"fetch failed: {exc}") from exc
    points: list[dict] = []
    _harvest_points(payload, points)
    known = {label.value for label in LABELS}
    points = [
        p for p in points
        if p["point"] in known and isinstance(p["quoteText"], str) and p["quoteText"].strip()
    ]
    if not points:
        raise click.ClickException("fetch succeeded but no labeled points were found")
    with open(out_path, "w", encoding="utf-8") as handle:
        for point in points:
            handle.write(json.dumps(point, sort_keys=True) + "\n")
    click.echo(f"wrote {len(points)} points to {out_path}")


@dataset.command()
@click.option("--in", "in_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--bin-width", type=int, default=10, show_default=True)
def stats(in_path, bin_width):
    """Print the word-count histogram as CSV (bin_start,count)."""
    try:
        loaded = ds_mod.load(in_path)
        bins = ds_mod.word_histogram(loaded, bin_width)
    except (ds_mod.DatasetError, ValueError) as exc:
        raise click.ClickException(str(exc)) from exc
    click.echo("bin_start,count")
    for bin_start, count in bins:
        click.echo(f"{bin_start},{count}")


if __name__ == "__main__":
    main()
