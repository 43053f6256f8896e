"""Policy-text grading toolkit.

Cleans scraped Terms-of-Service / privacy-policy text, summarizes it
paragraph by paragraph, embeds the summaries as fixed-length vectors,
classifies each chunk as good / neutral / bad / blocker, and turns the
per-chunk labels into a numeric score and an A-E letter grade.  The same
pipeline is exposed as a library, a CLI (``policygrader --help``) and an
HTTP service (``POST /v1/analyze``).
"""

from policygrader.classify import PointLabel, Prediction, MetricsRow
from policygrader.dataset import Dataset, LabeledPoint, SplitSpec
from policygrader.embed import EmbedderConfig, EmbeddingVector
from policygrader.score_grade import CountSummary, GradeThresholds
from policygrader.summarize import SummarizerConfig, Summary
from policygrader.textprep import CleanParagraph, RawDocument

__version__ = "0.1.0"

__all__ = [
    "CleanParagraph",
    "CountSummary",
    "Dataset",
    "EmbedderConfig",
    "EmbeddingVector",
    "GradeThresholds",
    "LabeledPoint",
    "MetricsRow",
    "PointLabel",
    "Prediction",
    "RawDocument",
    "SplitSpec",
    "SummarizerConfig",
    "Summary",
    "__version__",
]
