"""Labeled-point datasets: NDJSON loading, seeded splits, word histogram.

A dataset file is newline-delimited JSON; each record carries at least
``point`` (the label), ``quoteDoc`` (source document name) and
``quoteText`` (the raw quoted snippet, possibly with HTML fragments).
Extra keys are ignored.

The train/test split shuffles with a Fisher-Yates pass driven by a
SplitMix64 generator implemented here, so a given (dataset, seed) pair
produces the same partition on every platform and Python version.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass

from policygrader.classify import PointLabel


class DatasetError(Exception):
    """Loading or splitting failed; message carries the line number when known."""


@dataclass(frozen=True)
class LabeledPoint:
    label: PointLabel
    quote_doc: str
    quote_text: str


@dataclass(frozen=True)
class Dataset:
    points: tuple[LabeledPoint, ...]
    source: str


@dataclass(frozen=True)
class SplitSpec:
    train_fraction: float = 0.8
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.train_fraction < 1.0:
            raise ValueError("train_fraction must be in (0, 1)")


_MASK64 = 0xFFFFFFFFFFFFFFFF


class SplitMix64:
    """Tiny, fully specified 64-bit PRNG (Steele, Lea & Flood's SplitMix64).

    Chosen over library generators because its output sequence is frozen
    by these ~10 lines: dataset splits never drift across platforms or
    library versions.
    """

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        return self.next_u64() % bound


def load(path: str) -> Dataset:
    """Parse an NDJSON dataset file.

    Blank lines are skipped.  A malformed line, a missing key, an
    unknown ``point`` value, or an empty ``quoteText`` is an error naming
    the 1-based line number; a file with zero records is also an error.
    """
    if not os.path.exists(path):
        raise DatasetError(f"dataset file not found: {path}")
    points = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DatasetError(f"{path}:{lineno}: malformed JSON: {exc}") from exc
            if not isinstance(record, dict):
                raise DatasetError(f"{path}:{lineno}: expected a JSON object")
            try:
                raw_label = record["point"]
                quote_doc = record["quoteDoc"]
                quote_text = record["quoteText"]
            except KeyError as exc:
                raise DatasetError(f"{path}:{lineno}: missing key {exc}") from exc
            try:
                label = PointLabel.parse(raw_label)
            except ValueError as exc:
                raise DatasetError(f"{path}:{lineno}: {exc}") from exc
            if not isinstance(quote_text, str) or not quote_text:
                raise DatasetError(f"{path}:{lineno}: quoteText must be a non-empty string")
            points.append(LabeledPoint(label=label, quote_doc=str(quote_doc),
                                       quote_text=quote_text))
    if not points:
        raise DatasetError(f"{path}: dataset contains no records")
    return Dataset(points=tuple(points), source=path)


def split(ds: Dataset, spec: SplitSpec) -> tuple[Dataset, Dataset]:
    """Deterministic seeded shuffle, then a floor(train_fraction * n) cut.

    The shuffle is Fisher-Yates (descending) over point indices, driven
    by :class:`SplitMix64` seeded with ``spec.seed``.  Train and test
    partition the input: no point is lost or duplicated.
    """
    n = len(ds.points)
    if n < 2:
        raise DatasetError("need at least 2 points to split")
    indices = list(range(n))
    rng = SplitMix64(spec.seed)
    for i in range(n - 1, 0, -1):
        j = rng.below(i + 1)
        indices[i], indices[j] = indices[j], indices[i]
    n_train = math.floor(spec.train_fraction * n)
    train = tuple(ds.points[i] for i in indices[:n_train])
    test = tuple(ds.points[i] for i in indices[n_train:])
    return (
        Dataset(points=train, source=f"{ds.source}#train"),
        Dataset(points=test, source=f"{ds.source}#test"),
    )


def word_histogram(ds: Dataset, bin_width: int) -> list[tuple[int, int]]:
    """Histogram of whitespace word counts of the *raw* quote texts.

    Bins are [k*w, (k+1)*w); zero-count bins up to the largest observed
    bin are included, so the output is a dense table.
    """
    if bin_width < 1:
        raise ValueError("bin_width must be >= 1")
    word_counts = [len(p.quote_text.split()) for p in ds.points]
    max_bin = max(word_counts) // bin_width
    counts = [0] * (max_bin + 1)
    for wc in word_counts:
        counts[wc // bin_width] += 1
    return [(k * bin_width, counts[k]) for k in range(max_bin + 1)]
