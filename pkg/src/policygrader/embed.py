"""Fixed-length text embeddings.

The built-in backend is a signed feature hasher over word n-grams: every
unigram/bigram is hashed into one of D buckets with a +/-1 sign, and the
bucket vector is L2-normalized.  It is seeded, platform-independent
(keyed BLAKE2b, no interpreter hash randomization involved) and
bit-deterministic, so a model trained on these vectors can be reproduced
exactly.  An external transformer encoder can be used instead; there is
deliberately *no* fallback between backends because a nearest-neighbor
model must never mix embedding spaces — mismatches raise instead.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import httpx
import numpy as np

BACKEND_HASHED = "builtin_hashed"
BACKEND_EXTERNAL = "external"

DEFAULT_DIMENSION = 768


class EmbedError(Exception):
    """Base class for embedding failures."""


class EmptyTextError(EmbedError):
    """Raised for empty or whitespace-only input; never a zero vector."""


class DimensionMismatchError(EmbedError):
    """External backend returned vectors of an unexpected length."""


class BackendUnavailableError(EmbedError):
    """External backend unreachable or returned garbage."""


@dataclass(frozen=True)
class EmbedderConfig:
    backend: str = BACKEND_HASHED
    dimension: int = DEFAULT_DIMENSION
    ngram_orders: tuple[int, ...] = (1, 2)
    hash_seed: int = 0
    external_endpoint: str = ""
    external_timeout_ms: int = 10_000

    def __post_init__(self):
        if self.backend not in (BACKEND_HASHED, BACKEND_EXTERNAL):
            raise ValueError(f"unknown embedder backend: {self.backend!r}")
        if self.dimension < 2:
            raise ValueError("embedding dimension must be >= 2")
        if not self.ngram_orders:
            raise ValueError("ngram_orders must be non-empty")
        if self.backend == BACKEND_EXTERNAL and not self.external_endpoint:
            raise ValueError("external embedder backend requires an endpoint")
        # Canonical order so equal configs hash and fingerprint equally.
        object.__setattr__(self, "ngram_orders", tuple(sorted(set(self.ngram_orders))))

    def fingerprint(self) -> str:
        """Identity of the embedding space this config produces.

        Stored inside model artifacts; a model refuses queries embedded
        under any other fingerprint.
        """
        if self.backend == BACKEND_HASHED:
            orders = ",".join(str(n) for n in self.ngram_orders)
            return f"{self.backend}:dim={self.dimension}:ngrams={orders}:seed={self.hash_seed}"
        return f"{self.backend}:dim={self.dimension}:endpoint={self.external_endpoint}"


@dataclass(frozen=True)
class EmbeddingVector:
    """L2-normalized vector of fixed length."""

    values: np.ndarray = field(repr=False)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.values))

    def __len__(self) -> int:
        return self.values.shape[0]


def _hash_pair(gram: str, seed: int) -> tuple[int, int]:
    """Two independent 64-bit hashes of an n-gram, keyed by the seed."""
    key = (seed & 0xFFFFFFFFFFFFFFFF).to_bytes(8, "little")
    digest = hashlib.blake2b(gram.encode("utf-8"), digest_size=16, key=key).digest()
    return (
        int.from_bytes(digest[:8], "little"),
        int.from_bytes(digest[8:], "little"),
    )


def _ngrams(tokens: list[str], orders: tuple[int, ...]):
    for n in orders:
        for i in range(len(tokens) - n + 1):
            yield " ".join(tokens[i : i + n])


def _embed_hashed(text: str, cfg: EmbedderConfig) -> EmbeddingVector:
    tokens = text.split()
    accum = np.zeros(cfg.dimension, dtype=np.float64)
    count = 0
    for gram in _ngrams(tokens, cfg.ngram_orders):
        bucket_hash, sign_hash = _hash_pair(gram, cfg.hash_seed)
        sign = 1.0 if (sign_hash & 1) == 0 else -1.0
        accum[bucket_hash % cfg.dimension] += sign
        count += 1
    if count == 0:
        raise EmptyTextError(
            f"text has no n-grams of orders {cfg.ngram_orders}: {text!r}"
        )
    norm = np.linalg.norm(accum)
    if norm == 0.0:
        # Only possible if every bucket cancelled exactly; astronomically
        # unlikely, but a zero vector must never escape.
        raise EmbedError("hash signs cancelled to a zero vector; change hash_seed")
    return EmbeddingVector(values=accum / norm)


def _post_json(url: str, payload: dict, timeout_ms: int) -> dict:
    response = httpx.post(url, json=payload, timeout=timeout_ms / 1000.0)
    response.raise_for_status()
    return response.json()


def _embed_external_batch(texts: list[str], cfg: EmbedderConfig) -> list[EmbeddingVector]:
    try:
        body = _post_json(cfg.external_endpoint, {"texts": texts}, cfg.external_timeout_ms)
        vectors = body["vectors"]
    except (httpx.HTTPError, KeyError, ValueError) as exc:
        raise BackendUnavailableError(
            f"external embedder at {cfg.external_endpoint} failed: {exc}"
        ) from exc
    if len(vectors) != len(texts):
        raise BackendUnavailableError(
            f"external embedder returned {len(vectors)} vectors for {len(texts)} texts"
        )
    out = []
    for vec in vectors:
        arr = np.asarray(vec, dtype=np.float64)
        if arr.shape != (cfg.dimension,):
            raise DimensionMismatchError(
                f"expected dimension {cfg.dimension}, got shape {arr.shape}"
            )
        if not np.all(np.isfinite(arr)):
            raise BackendUnavailableError("external embedder returned non-finite values")
        norm = np.linalg.norm(arr)
        if norm == 0.0:
            raise BackendUnavailableError("external embedder returned a zero vector")
        out.append(EmbeddingVector(values=arr / norm))
    return out


def embed(text: str, cfg: EmbedderConfig | None = None) -> EmbeddingVector:
    """Embed one text as a unit-norm vector of exactly ``cfg.dimension``.

    Same text and config give a bit-identical vector on the built-in
    backend.  Empty/whitespace-only text raises :class:`EmptyTextError`.
    """
    cfg = cfg or EmbedderConfig()
    if not text.strip():
        raise EmptyTextError("cannot embed empty text")
    if cfg.backend == BACKEND_HASHED:
        return _embed_hashed(text, cfg)
    return _embed_external_batch([text], cfg)[0]


def embed_batch(texts: list[str], cfg: EmbedderConfig | None = None) -> list[EmbeddingVector]:
    """Embed many texts, preserving order.

    Equivalent to mapping :func:`embed`; any failing element fails the
    whole batch with its index named.
    """
    cfg = cfg or EmbedderConfig()
    for i, text in enumerate(texts):
        if not text.strip():
            raise EmptyTextError(f"texts[{i}] is empty")
    if not texts:
        return []
    if cfg.backend == BACKEND_HASHED:
        out = []
        for i, text in enumerate(texts):
            try:
                out.append(_embed_hashed(text, cfg))
            except EmbedError as exc:
                raise type(exc)(f"texts[{i}]: {exc}") from exc
        return out
    return _embed_external_batch(texts, cfg)
