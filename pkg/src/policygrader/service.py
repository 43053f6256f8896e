"""HTTP analysis service and the end-to-end train/analyze pipeline.

``POST /v1/analyze`` accepts scraped policy documents as JSON, runs
clean -> summarize -> embed -> classify per paragraph, and returns
counts, score, grade and per-chunk summaries.  ``GET /v1/health``
reports the loaded model fingerprint and configured backends.  The
loaded model and config are immutable shared state, so any number of
requests can run concurrently; identical requests produce identical
responses.

``train_pipeline`` applies the same per-chunk transform to a labeled
dataset, fits a classifier on the train split, evaluates it on the test
split and writes a model artifact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from policygrader import __version__, score_grade
from policygrader.classify import MetricsRow, evaluate, fit_classifier
from policygrader.config import AppConfig
from policygrader.dataset import SplitSpec, load
from policygrader.dataset import split as split_dataset
from policygrader.embed import EmbedderConfig, EmbedError, embed_batch
from policygrader.model_io import ModelArtifact, save_model
from policygrader.score_grade import CountSummary
from policygrader.summarize import SummarizerConfig, summarize_document
from policygrader.textprep import DocumentKind, clean, split_paragraphs

_KINDS = {kind.value for kind in DocumentKind}


class BadRequestError(Exception):
    """Request body is structurally invalid (400)."""


class NoAnalyzableTextError(Exception):
    """Every supplied paragraph cleaned to nothing (422)."""


class ModelMissingError(Exception):
    """Service booted without a model artifact (503)."""


class PipelineError(Exception):
    """A training stage failed; message names the stage."""


@dataclass(frozen=True)
class DocumentInput:
    source: str
    kind: str
    paragraphs: tuple[str, ...]


@dataclass(frozen=True)
class AnalyzeRequest:
    url: str
    documents: tuple[DocumentInput, ...]

    @property
    def total_paragraphs(self) -> int:
        return sum(len(d.paragraphs) for d in self.documents)

    @classmethod
    def parse(cls, payload) -> "AnalyzeRequest":
        if not isinstance(payload, dict):
            raise BadRequestError("request body must be a JSON object")
        url = payload.get("url", "")
        if not isinstance(url, str):
            raise BadRequestError("url must be a string")
        raw_documents = payload.get("documents")
        if not isinstance(raw_documents, list):
            raise BadRequestError("documents must be a list")
        documents = []
        for i, raw in enumerate(raw_documents):
            if not isinstance(raw, dict):
                raise BadRequestError(f"documents[{i}] must be an object")
            source = raw.get("source", "")
            if not isinstance(source, str):
                raise BadRequestError(f"documents[{i}].source must be a string")
            kind = raw.get("kind", "unknown")
            if not isinstance(kind, str):
                raise BadRequestError(f"documents[{i}].kind must be a string")
            if kind not in _KINDS:
                kind = "unknown"
            paragraphs = raw.get("paragraphs")
            if not isinstance(paragraphs, list) or not all(
                isinstance(p, str) for p in paragraphs
            ):
                raise BadRequestError(f"documents[{i}].paragraphs must be a list of strings")
            documents.append(
                DocumentInput(source=source, kind=kind, paragraphs=tuple(paragraphs))
            )
        return cls(url=url, documents=tuple(documents))


@dataclass(frozen=True)
class ReportItem:
    document_index: int
    paragraph_index: int
    summary: str
    label: str
    scores: dict[str, float]


@dataclass(frozen=True)
class SiteReport:
    counts: CountSummary
    score: int
    grade: str
    degraded: bool
    items: tuple[ReportItem, ...] = field(repr=False)

    def to_dict(self) -> dict:
        return {
            "counts": {
                "good": self.counts.good,
                "neutral": self.counts.neutral,
                "bad": self.counts.bad,
                "blocker": self.counts.blocker,
                "total": self.counts.total,
            },
            "score": self.score,
            "grade": self.grade,
            "degraded": self.degraded,
            "items": [
                {
                    "document_index": item.document_index,
                    "paragraph_index": item.paragraph_index,
                    "summary": item.summary,
                    "label": item.label,
                    "scores": item.scores,
                }
                for item in self.items
            ],
        }


def analyze(req: AnalyzeRequest, artifact: ModelArtifact, cfg: AppConfig) -> SiteReport:
    """Run the full pipeline over every paragraph of every document.

    Paragraphs that clean to nothing are skipped; if nothing survives,
    raises :class:`NoAnalyzableTextError`.  Queries are embedded with the
    artifact's own embedder config, so they always live in the space the
    classifier was trained in.
    """
    if artifact is None:
        raise ModelMissingError("no model artifact loaded")
    items = []
    labels = []
    degraded = False
    for doc_index, document in enumerate(req.documents):
        paragraphs = split_paragraphs([clean(p) for p in document.paragraphs])
        if not paragraphs:
            continue
        summaries = summarize_document(paragraphs, cfg.summarizer)
        degraded = degraded or any(s.degraded for s in summaries)
        vectors = embed_batch([s.text for s in summaries], artifact.embedder_config)
        for summary, vector in zip(summaries, vectors):
            prediction = artifact.classifier.predict(vector)
            labels.append(prediction.label)
            items.append(
                ReportItem(
                    document_index=doc_index,
                    paragraph_index=summary.paragraph_index,
                    summary=summary.text,
                    label=prediction.label.value,
                    scores={lab.value: val for lab, val in prediction.scores.items()},
                )
            )
    if not items:
        raise NoAnalyzableTextError("no analyzable text in request")
    counts = CountSummary.from_labels(labels)
    total_score = score_grade.score(counts, cfg.weights)
    letter = score_grade.grade(total_score, counts.total, cfg.thresholds)
    return SiteReport(
        counts=counts,
        score=total_score,
        grade=letter.value,
        degraded=degraded,
        items=tuple(items),
    )


# ---------------------------------------------------------------------------
# Training


def _points_to_features(points, summarizer_cfg: SummarizerConfig,
                        embedder_cfg: EmbedderConfig):
    """clean -> summarize -> embed for labeled points.

    Returns (features, labels, dropped) where dropped counts points whose
    quote text cleaned to nothing, plus whether any summary degraded.
    """
    kept_labels = []
    cleaned_texts = []
    for point in points:
        text = clean(point.quote_text)
        if text:
            cleaned_texts.append(text)
            kept_labels.append(point.label)
    paragraphs = split_paragraphs(cleaned_texts)
    summaries = summarize_document(paragraphs, summarizer_cfg)
    vectors = embed_batch([s.text for s in summaries], embedder_cfg)
    dropped = len(points) - len(kept_labels)
    degraded = any(s.degraded for s in summaries)
    return vectors, kept_labels, dropped, degraded


def train_pipeline(dataset_path: str, split_spec: SplitSpec,
                   summarizer_cfg: SummarizerConfig, embedder_cfg: EmbedderConfig,
                   classifier_kind: str, out_path: str, *,
                   k: int = 3, max_depth: int = 12) -> tuple[ModelArtifact, MetricsRow]:
    """Train on the seeded split of a dataset file and write the artifact.

    Fully deterministic with built-in backends: the same inputs produce a
    byte-identical artifact.  Stage failures raise
    :class:`PipelineError` naming the stage.
    """
    def stage(name, fn, *args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except Exception as exc:
            raise PipelineError(f"{name}: {exc}") from exc

    dataset = stage("load", load, dataset_path)
    train_ds, test_ds = stage("split", split_dataset, dataset, split_spec)
    train_x, train_y, train_dropped, train_degraded = stage(
        "prepare-train", _points_to_features, train_ds.points, summarizer_cfg, embedder_cfg
    )
    fingerprint = embedder_cfg.fingerprint()
    classifier = stage(
        "fit", fit_classifier, classifier_kind, list(zip(train_x, train_y)),
        k=k, max_depth=max_depth, fingerprint=fingerprint,
    )
    test_x, test_y, test_dropped, test_degraded = stage(
        "prepare-test", _points_to_features, test_ds.points, summarizer_cfg, embedder_cfg
    )
    rows = stage(
        "evaluate", evaluate, [(classifier_kind, classifier)], list(zip(test_x, test_y))
    )
    metadata = {
        "dataset": dataset_path,
        "seed": split_spec.seed,
        "train_fraction": split_spec.train_fraction,
        "train_size": len(train_ds.points),
        "test_size": len(test_ds.points),
        "dropped_unembeddable": train_dropped + test_dropped,
        "summarizer_backend": summarizer_cfg.backend,
        "summarizer_degraded": train_degraded or test_degraded,
        "classifier": {"kind": classifier_kind, "k": k, "max_depth": max_depth},
    }
    artifact = ModelArtifact(classifier=classifier, embedder_config=embedder_cfg,
                             metadata=metadata)
    stage("save", save_model, artifact, out_path)
    return artifact, rows[0]


# ---------------------------------------------------------------------------
# HTTP app


def healthcheck(artifact: ModelArtifact | None, cfg: AppConfig) -> dict:
    """Service status; never touches external endpoints."""
    embedder_backend = (
        artifact.embedder_config.backend if artifact else cfg.embedder.backend
    )
    return {
        "status": "ok" if artifact else "degraded-no-model",
        "model_fingerprint": artifact.fingerprint if artifact else None,
        "backends": {
            "summarizer": cfg.summarizer.backend,
            "embedder": embedder_backend,
        },
        "version": __version__,
    }


def _error(status: int, message: str) -> JSONResponse:
    return JSONResponse({"error": message}, status_code=status)


def create_app(artifact: ModelArtifact | None, cfg: AppConfig | None = None) -> FastAPI:
    cfg = cfg or AppConfig()
    app = FastAPI(title="policygrader", version=__version__)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(cfg.cors_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.get("/v1/health")
    async def health():
        return JSONResponse(healthcheck(artifact, cfg))

    @app.post("/v1/analyze")
    async def analyze_endpoint(request: Request):
        body = await request.body()
        if len(body) > cfg.max_body_bytes:
            return _error(413, f"request body exceeds {cfg.max_body_bytes} bytes")
        try:
            payload = json.loads(body)
        except ValueError:
            return _error(400, "request body is not valid JSON")
        try:
            req = AnalyzeRequest.parse(payload)
        except BadRequestError as exc:
            return _error(400, str(exc))
        if req.total_paragraphs > cfg.max_paragraphs:
            return _error(413, f"request exceeds {cfg.max_paragraphs} paragraphs")
        if artifact is None:
            return _error(503, "no model loaded")
        try:
            report = analyze(req, artifact, cfg)
        except NoAnalyzableTextError as exc:
            return _error(422, str(exc))
        except EmbedError as exc:
            return _error(503, f"embedding backend failed: {exc}")
        return JSONResponse(report.to_dict())

    return app
