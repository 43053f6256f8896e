"""Site score and letter grade from per-chunk label counts.

The score is a weighted count: good chunks add 1, bad chunks subtract 1,
blockers subtract 3, neutral chunks contribute nothing.  For grading,
the score is normalized by the number of classified chunks (so long
documents aren't punished for sheer length) and bucketed into letters
A through E by configurable thresholds.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from policygrader.classify import PointLabel


class Grade(enum.Enum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"
    E = "E"


@dataclass(frozen=True)
class CountSummary:
    good: int = 0
    neutral: int = 0
    bad: int = 0
    blocker: int = 0

    def __post_init__(self):
        for name in ("good", "neutral", "bad", "blocker"):
            if getattr(self, name) < 0:
                raise ValueError(f"negative count for {name}")

    @property
    def total(self) -> int:
        return self.good + self.neutral + self.bad + self.blocker

    @classmethod
    def from_labels(cls, labels) -> "CountSummary":
        tally = {label: 0 for label in PointLabel}
        for label in labels:
            tally[label] += 1
        return cls(
            good=tally[PointLabel.GOOD],
            neutral=tally[PointLabel.NEUTRAL],
            bad=tally[PointLabel.BAD],
            blocker=tally[PointLabel.BLOCKER],
        )


@dataclass(frozen=True)
class ScoreWeights:
    good: int = 1
    neutral: int = 0
    bad: int = -1
    blocker: int = -3


@dataclass(frozen=True)
class GradeThresholds:
    """Lower bounds on the normalized score for grades A through D.

    Anything below the D bound is an E.  Bounds must be strictly
    decreasing.
    """

    a: float = 0.4
    b: float = 0.1
    c: float = -0.1
    d: float = -0.4

    def __post_init__(self):
        if not (self.a > self.b > self.c > self.d):
            raise ValueError(
                f"grade thresholds must be strictly decreasing, got "
                f"A>={self.a}, B>={self.b}, C>={self.c}, D>={self.d}"
            )


def score(counts: CountSummary, weights: ScoreWeights | None = None) -> int:
    """good - bad - 3*blocker (neutral weighs 0) under the default weights."""
    w = weights or ScoreWeights()
    return (
        w.good * counts.good
        + w.neutral * counts.neutral
        + w.bad * counts.bad
        + w.blocker * counts.blocker
    )


def grade(score_value: int, classified_total: int,
          thresholds: GradeThresholds | None = None) -> Grade:
    """Letter grade from the score normalized by chunk count.

    ``classified_total`` counts every classified chunk, neutral included.
    A zero total leaves the normalized score at 0 (grade C by default).
    """
    if classified_total < 0:
        raise ValueError("classified_total must be non-negative")
    t = thresholds or GradeThresholds()
    normalized = score_value / max(1, classified_total)
    if normalized >= t.a:
        return Grade.A
    if normalized >= t.b:
        return Grade.B
    if normalized >= t.c:
        return Grade.C
    if normalized >= t.d:
        return Grade.D
    return Grade.E
