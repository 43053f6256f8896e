"""
Projecting embeddings to 2-D
============================

768-dimensional embeddings are hard to eyeball.  PCA projects the mini
corpus onto its two leading principal axes, and the scatter CSV it
exports can be opened in any plotting tool.  The same export works for
the exact t-SNE variant when local structure matters more.
"""

import tempfile
from pathlib import Path

import numpy as np

from policygrader.config import AppConfig
from policygrader.dataset import load
from policygrader.dimred import Point2D, export_scatter, pca2
from policygrader.service import _points_to_features

corpus = Path(__file__).resolve().parent.parent / "data" / "mini_corpus.ndjson"
dataset = load(str(corpus))

# Featurize all 40 points with the default pipeline settings.
cfg = AppConfig()
vectors, labels, _, _ = _points_to_features(dataset.points, cfg.summarizer, cfg.embedder)
matrix = np.stack([v.values for v in vectors])
print(f"embedding matrix: {matrix.shape}")

# Project onto the top two principal components.  The eigenvalues say
# how much variance each axis explains.
coords, (ev1, ev2) = pca2(matrix)
print(f"leading eigenvalues: {ev1:.4f}, {ev2:.4f}")

# Per-class centroids in the projected plane: the four classes were
# written with distinct vocabularies, so they land in distinct regions.
for name in ("good", "neutral", "bad", "blocker"):
    mask = [label.value == name for label in labels]
    centroid = coords[mask].mean(axis=0)
    print(f"{name:<8} centroid ({centroid[0]:+.3f}, {centroid[1]:+.3f})")

# Export "x,y,label" rows for external plotting.
points = [
    Point2D(x=float(x), y=float(y), label=label)
    for (x, y), label in zip(coords, labels)
]
with tempfile.TemporaryDirectory() as tmp:
    out = f"{tmp}/scatter.csv"
    export_scatter(points, out)
    lines = Path(out).read_text(encoding="utf-8").splitlines()
print(f"\nwrote {len(lines) - 1} points; first rows:")
for line in lines[:4]:
    print(f"  {line}")
