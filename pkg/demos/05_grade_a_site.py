"""
Grading a site's policies end to end
====================================

Train on the mini corpus, then feed a small scraped "site" through the
full pipeline: every paragraph is cleaned, summarized, embedded and
classified, the per-class counts are scored (good - bad - 3*blocker)
and the normalized score becomes a letter grade.
"""

import tempfile
from pathlib import Path

from policygrader.config import AppConfig
from policygrader.dataset import SplitSpec
from policygrader.embed import EmbedderConfig
from policygrader.service import AnalyzeRequest, analyze, train_pipeline
from policygrader.summarize import SummarizerConfig

corpus = Path(__file__).resolve().parent.parent / "data" / "mini_corpus.ndjson"

# Train a KNN model; the artifact also records the embedder config so
# queries are always embedded in the space the model was trained in.
with tempfile.TemporaryDirectory() as tmp:
    artifact, row = train_pipeline(
        str(corpus), SplitSpec(seed=42), SummarizerConfig(), EmbedderConfig(),
        "knn", f"{tmp}/mini.model.json",
    )
print(f"trained knn, held-out accuracy {row.accuracy:.3f}")

# A site report request, exactly the JSON shape the HTTP API accepts.
request = AnalyzeRequest.parse({
    "url": "https://example.org",
    "documents": [
        {
            "source": "https://example.org/privacy",
            "kind": "privacy_policy",
            "paragraphs": [
                "We sell your browsing history and purchase records to "
                "advertisers and data brokers.",
                "You can delete your account at any time and we will erase "
                "all associated personal data within thirty days.",
                "Cookies keep you signed in during a session and remember "
                "which page you last visited.",
            ],
        },
        {
            "source": "https://example.org/tos",
            "kind": "terms_of_service",
            "paragraphs": [
                "By using the service you waive your right to sue and "
                "accept binding arbitration for every dispute.",
            ],
        },
    ],
})

report = analyze(request, artifact, AppConfig())
counts = report.counts
print(f"\ngrade: {report.grade}   score: {report.score}")
print(f"counts: good={counts.good} neutral={counts.neutral} "
      f"bad={counts.bad} blocker={counts.blocker} total={counts.total}")

# Each item names its document and paragraph, so a UI can highlight
# exactly which clause earned which label.
for item in report.items:
    print(f"  [{item.document_index}:{item.paragraph_index}] "
          f"{item.label:<8} {item.summary[:60]}...")

# The tally is an invariant, not a convention: the score always
# recomputes from the counts with the configured weights.
weights = AppConfig().weights
assert report.score == (counts.good * weights.good + counts.neutral * weights.neutral
                        + counts.bad * weights.bad + counts.blocker * weights.blocker)
