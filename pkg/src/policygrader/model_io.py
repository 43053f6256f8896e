"""Versioned model artifact files.

An artifact bundles a fitted classifier with the embedder configuration
that produced its training vectors, so the serving side can never feed
it queries from a different embedding space.  The format is canonical
JSON (sorted keys, compact separators, trailing newline): writing,
reading and re-writing an artifact reproduces the file byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from policygrader.classify import (
    LABELS,
    DecisionTreeModel,
    GaussianNbModel,
    KnnModel,
    PointLabel,
)
from policygrader.embed import EmbedderConfig

FORMAT_VERSION = 1


class ArtifactError(Exception):
    pass


@dataclass(frozen=True)
class ModelArtifact:
    classifier: object
    embedder_config: EmbedderConfig
    metadata: dict = field(default_factory=dict)

    @property
    def kind(self) -> str:
        return self.classifier.kind

    @property
    def fingerprint(self) -> str:
        return self.embedder_config.fingerprint()


def _encode_classifier(model) -> dict:
    if isinstance(model, KnnModel):
        return {
            "k": model.k,
            "vectors": model.vectors.tolist(),
            "labels": [label.value for label in model.labels],
        }
    if isinstance(model, GaussianNbModel):
        return {
            "log_priors": model.log_priors.tolist(),
            "means": model.means.tolist(),
            "variances": model.variances.tolist(),
        }
    if isinstance(model, DecisionTreeModel):
        return {"root": model.root, "max_depth": model.max_depth}
    raise ArtifactError(f"cannot serialize classifier of type {type(model).__name__}")


def _decode_classifier(kind: str, params: dict, fingerprint: str):
    if kind == "knn":
        return KnnModel(
            k=params["k"],
            vectors=np.asarray(params["vectors"], dtype=np.float64),
            labels=tuple(PointLabel.parse(v) for v in params["labels"]),
            embedder_fingerprint=fingerprint,
        )
    if kind == "gaussian_nb":
        return GaussianNbModel(
            log_priors=np.asarray(params["log_priors"], dtype=np.float64),
            means=np.asarray(params["means"], dtype=np.float64),
            variances=np.asarray(params["variances"], dtype=np.float64),
            embedder_fingerprint=fingerprint,
        )
    if kind == "decision_tree":
        return DecisionTreeModel(
            root=params["root"],
            max_depth=params["max_depth"],
            embedder_fingerprint=fingerprint,
        )
    raise ArtifactError(f"unknown classifier kind in artifact: {kind!r}")


def _encode_embedder(cfg: EmbedderConfig) -> dict:
    return {
        "backend": cfg.backend,
        "dimension": cfg.dimension,
        "ngram_orders": list(cfg.ngram_orders),
        "hash_seed": cfg.hash_seed,
        "external_endpoint": cfg.external_endpoint,
    }


def save_model(artifact: ModelArtifact, path: str) -> None:
    document = {
        "format_version": FORMAT_VERSION,
        "kind": artifact.kind,
        "classes": [label.value for label in LABELS],
        "embedder_fingerprint": artifact.fingerprint,
        "embedder_config": _encode_embedder(artifact.embedder_config),
        "params": _encode_classifier(artifact.classifier),
        "metadata": artifact.metadata,
    }
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(document, handle, sort_keys=True, separators=(",", ":"))
        handle.write("\n")


def load_model(path: str) -> ModelArtifact:
    try:
        with open(path, encoding="utf-8") as handle:
            document = json.load(handle)
    except FileNotFoundError as exc:
        raise ArtifactError(f"model artifact not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ArtifactError(f"model artifact {path} is not valid JSON: {exc}") from exc

    version = document.get("format_version")
    if version != FORMAT_VERSION:
        raise ArtifactError(f"unsupported artifact format_version: {version!r}")
    classes = document.get("classes")
    if classes != [label.value for label in LABELS]:
        raise ArtifactError(f"artifact class list {classes!r} does not match this build")

    raw_embedder = document["embedder_config"]
    embedder_config = EmbedderConfig(
        backend=raw_embedder["backend"],
        dimension=raw_embedder["dimension"],
        ngram_orders=tuple(raw_embedder["ngram_orders"]),
        hash_seed=raw_embedder["hash_seed"],
        external_endpoint=raw_embedder.get("external_endpoint", ""),
    )
    fingerprint = document["embedder_fingerprint"]
    if embedder_config.fingerprint() != fingerprint:
        raise ArtifactError(
            "artifact fingerprint does not match its embedder config "
            f"({fingerprint!r} vs {embedder_config.fingerprint()!r})"
        )
    classifier = _decode_classifier(document["kind"], document["params"], fingerprint)
    return ModelArtifact(
        classifier=classifier,
        embedder_config=embedder_config,
        metadata=document.get("metadata", {}),
    )
