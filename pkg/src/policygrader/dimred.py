"""2-D projections of embedding sets for scatter plots.

``pca2`` projects onto the top two principal components (SVD of the
centered data; sign fixed so each component's largest-magnitude loading
is positive, keeping exported files stable).  ``tsne2`` is an exact,
seeded t-SNE for small point clouds.  ``export_scatter`` writes the
labeled cloud as CSV; rendering is left to external tools.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from policygrader.classify import PointLabel


class DimredError(Exception):
    pass


@dataclass(frozen=True)
class Point2D:
    x: float
    y: float
    label: PointLabel


def _as_matrix(vectors) -> np.ndarray:
    rows = [np.asarray(getattr(v, "values", v), dtype=np.float64) for v in vectors]
    return np.vstack(rows)


def _fix_signs(components: np.ndarray) -> np.ndarray:
    fixed = components.copy()
    for row in fixed:
        if row[int(np.argmax(np.abs(row)))] < 0:
            row *= -1.0
    return fixed


def pca2(vectors) -> tuple[np.ndarray, tuple[float, float]]:
    """Top-2 principal component projection.

    Returns an (n, 2) array of projected points and the two leading
    eigenvalues of the sample covariance (variance explained by each
    component).  Zero-variance input projects everything to the origin.
    """
    matrix = _as_matrix(vectors)
    n = matrix.shape[0]
    if n < 3:
        raise DimredError(f"need at least 3 vectors for PCA, got {n}")
    centered = matrix - matrix.mean(axis=0)
    _, singular, vt = np.linalg.svd(centered, full_matrices=False)
    eigenvalues = singular**2 / (n - 1)
    components = _fix_signs(vt[:2])
    points = centered @ components.T
    ev = (float(eigenvalues[0]), float(eigenvalues[1]) if len(eigenvalues) > 1 else 0.0)
    return points, ev


# ---------------------------------------------------------------------------
# Exact t-SNE

_EXAGGERATION = 12.0
_EXAGGERATION_ITERS = 250
_MOMENTUM_EARLY = 0.5
_MOMENTUM_LATE = 0.8
_LEARNING_RATE = 200.0
_MIN_GAIN = 0.01


def _conditional_probabilities(sq_dists: np.ndarray, perplexity: float) -> np.ndarray:
    """Per-point Gaussian affinities, bandwidths binary-searched so each
    row's entropy matches log(perplexity)."""
    n = sq_dists.shape[0]
    target_entropy = math.log(perplexity)
    probs = np.zeros((n, n))
    for i in range(n):
        row = np.delete(sq_dists[i], i)
        beta, beta_lo, beta_hi = 1.0, 0.0, math.inf
        for _ in range(64):
            weights = np.exp(-row * beta)
            total = weights.sum()
            if total <= 0:
                entropy = 0.0
                p_row = np.zeros_like(row)
            else:
                p_row = weights / total
                nonzero = p_row > 0
                entropy = float(-np.sum(p_row[nonzero] * np.log(p_row[nonzero])))
            if abs(entropy - target_entropy) < 1e-7:
                break
            if entropy > target_entropy:
                beta_lo = beta
                beta = beta * 2.0 if beta_hi == math.inf else (beta + beta_hi) / 2.0
            else:
                beta_hi = beta
                beta = (beta + beta_lo) / 2.0
        probs[i, np.arange(n) != i] = p_row
    return probs


def tsne2(vectors, perplexity: float | None = None, seed: int = 0,
          iterations: int = 1000) -> np.ndarray:
    """Exact t-SNE to 2-D, deterministic for a given seed.

    Early exaggeration (factor 12) runs for the first 250 iterations;
    momentum is 0.5 during that phase and 0.8 after.  The default
    perplexity of 30 is clamped below n/3; an explicitly passed
    perplexity that violates the clamp is an error.
    """
    matrix = _as_matrix(vectors)
    n = matrix.shape[0]
    if n < 10:
        raise DimredError(f"need at least 10 vectors for t-SNE, got {n}")
    if perplexity is None:
        perplexity = min(30.0, n / 3.0 - 1.0)
    if not 1.0 <= perplexity < n / 3.0:
        raise DimredError(
            f"perplexity {perplexity} infeasible for n={n} (need 1 <= p < n/3)"
        )

    sq_dists = np.sum(matrix**2, axis=1)[:, None] + np.sum(matrix**2, axis=1)[None, :] \
        - 2.0 * matrix @ matrix.T
    np.fill_diagonal(sq_dists, 0.0)
    conditional = _conditional_probabilities(sq_dists, perplexity)
    p_joint = (conditional + conditional.T) / (2.0 * n)
    p_joint = np.maximum(p_joint, 1e-12)

    rng = np.random.default_rng(seed)
    y = rng.normal(scale=1e-4, size=(n, 2))
    velocity = np.zeros_like(y)
    # Per-coordinate adaptive gains (the classic delta-bar-delta scheme);
    # a fixed step size oscillates badly on small point sets.
    gains = np.ones_like(y)

    for it in range(iterations):
        p_eff = p_joint * _EXAGGERATION if it < _EXAGGERATION_ITERS else p_joint
        momentum = _MOMENTUM_EARLY if it < _EXAGGERATION_ITERS else _MOMENTUM_LATE

        diff = y[:, None, :] - y[None, :, :]
        inv = 1.0 / (1.0 + np.sum(diff**2, axis=2))
        np.fill_diagonal(inv, 0.0)
        q_joint = np.maximum(inv / inv.sum(), 1e-12)

        coeff = (p_eff - q_joint) * inv
        gradient = 4.0 * np.einsum("ij,ijk->ik", coeff, diff)

        same_direction = np.sign(gradient) == np.sign(velocity)
        gains = np.where(same_direction, gains * 0.8, gains + 0.2)
        gains = np.maximum(gains, _MIN_GAIN)

        velocity = momentum * velocity - _LEARNING_RATE * gains * gradient
        y = y + velocity
        y = y - y.mean(axis=0)
    return y


def export_scatter(points: list[Point2D], out: str) -> None:
    """Write ``x,y,label`` CSV with 9 significant digits per coordinate."""
    lines = ["x,y,label"]
    for p in points:
        lines.append(f"{p.x:.9g},{p.y:.9g},{p.label.value}")
    try:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise DimredError(f"cannot write scatter file {out}: {exc}") from exc
