"""Length-tiered paragraph summarization.

Each paragraph's *original* word count picks a summary budget: long
paragraphs get large budgets, anything at or below 75 words passes
through untouched.  The built-in backend is a deterministic extractive
summarizer (term-frequency sentence scoring); an external abstractive
service can be plugged in per document, with per-paragraph fallback to
the built-in backend when the service misbehaves.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass

import httpx

from policygrader.textprep import CleanParagraph

BACKEND_BUILTIN = "builtin_extractive"
BACKEND_EXTERNAL = "external"

DEFAULT_TIMEOUT_MS = 10_000

# (threshold, budget): first tier whose threshold the word count exceeds
# wins; at or below the last threshold no summarization happens.
_TIERS = ((400, 200), (200, 100), (100, 75), (75, 50))

_SENTENCE_RE = re.compile(r"[^.?!]*[.?!]|[^.?!]+$")


@dataclass(frozen=True)
class SummaryBudget:
    """Word cap for one paragraph; ``max_words=None`` means passthrough."""

    max_words: int | None


@dataclass(frozen=True)
class Summary:
    paragraph_index: int
    text: str
    word_count: int
    backend: str
    degraded: bool = False  # external call failed; built-in fallback used


@dataclass(frozen=True)
class SummarizerConfig:
    backend: str = BACKEND_BUILTIN
    external_endpoint: str = ""
    external_timeout_ms: int = DEFAULT_TIMEOUT_MS

    def __post_init__(self):
        if self.backend not in (BACKEND_BUILTIN, BACKEND_EXTERNAL):
            raise ValueError(f"unknown summarizer backend: {self.backend!r}")
        if self.backend == BACKEND_EXTERNAL and not self.external_endpoint:
            raise ValueError("external summarizer backend requires an endpoint")


def plan_budget(word_count: int) -> SummaryBudget:
    """Map a paragraph's original word count to its summary budget.

    >400 words -> 200; >200 -> 100; >100 -> 75; >75 -> 50; otherwise no
    summarization.  Exactly one tier applies; the budget is decided on
    the original count, never re-evaluated on a summarized text.
    """
    for threshold, budget in _TIERS:
        if word_count > threshold:
            return SummaryBudget(max_words=budget)
    return SummaryBudget(max_words=None)


def _split_sentences(text: str) -> list[str]:
    return [m.group().strip() for m in _SENTENCE_RE.finditer(text) if m.group().strip()]


def extractive_summarize(paragraph: CleanParagraph, budget: SummaryBudget) -> Summary:
    """Deterministic extractive summary of one paragraph.

    Sentences (split at ``. ? !``) are scored by the mean in-paragraph
    term frequency of their words, then taken greedily in score order
    (ties to the earlier sentence) while the running word total stays
    within the budget; sentences that would overflow are skipped.  The
    chosen sentences are emitted in their original order.  If not even
    one sentence fits, the top-scoring sentence is truncated to exactly
    ``max_words`` words.
    """
    if budget.max_words is None:
        return Summary(
            paragraph_index=paragraph.index,
            text=paragraph.text,
            word_count=paragraph.word_count,
            backend=BACKEND_BUILTIN,
        )

    sentences = _split_sentences(paragraph.text)
    sentence_words = [s.split() for s in sentences]
    all_words = paragraph.text.split()
    freq = Counter(all_words)
    total = len(all_words)

    scores = [
        sum(freq[w] for w in words) / total / len(words) for words in sentence_words
    ]
    by_score = sorted(range(len(sentences)), key=lambda i: (-scores[i], i))

    chosen: list[int] = []
    used = 0
    for i in by_score:
        n = len(sentence_words[i])
        if used + n <= budget.max_words:
            chosen.append(i)
            used += n

    if chosen:
        text = " ".join(sentences[i] for i in sorted(chosen))
    else:
        # No single sentence fits: hard-truncate the best one.
        text = " ".join(sentence_words[by_score[0]][: budget.max_words])

    return Summary(
        paragraph_index=paragraph.index,
        text=text,
        word_count=len(text.split()),
        backend=BACKEND_BUILTIN,
    )


def _post_json(url: str, payload: dict, timeout_ms: int) -> dict:
    response = httpx.post(url, json=payload, timeout=timeout_ms / 1000.0)
    response.raise_for_status()
    return response.json()


def _external_summarize(paragraph: CleanParagraph, budget: SummaryBudget,
                        cfg: SummarizerConfig) -> Summary:
    """One external call; any failure degrades to the built-in backend."""
    try:
        body = _post_json(
            cfg.external_endpoint,
            {"text": paragraph.text, "max_words": budget.max_words},
            cfg.external_timeout_ms,
        )
        text = body["summary"]
        if not isinstance(text, str) or not text.strip():
            raise ValueError("empty or non-string summary")
    except Exception:
        fallback = extractive_summarize(paragraph, budget)
        return Summary(
            paragraph_index=fallback.paragraph_index,
            text=fallback.text,
            word_count=fallback.word_count,
            backend=BACKEND_BUILTIN,
            degraded=True,
        )
    text = text.strip()
    return Summary(
        paragraph_index=paragraph.index,
        text=text,
        word_count=len(text.split()),
        backend=BACKEND_EXTERNAL,
    )


def summarize_document(paragraphs: list[CleanParagraph],
                       cfg: SummarizerConfig | None = None) -> list[Summary]:
    """Summarize every paragraph of a document, preserving order.

    Paragraphs at or below the passthrough tier bypass the backend
    entirely.  With the external backend, each failed call falls back to
    the built-in summarizer and the resulting summary carries
    ``degraded=True``.
    """
    cfg = cfg or SummarizerConfig()
    summaries = []
    for paragraph in paragraphs:
        budget = plan_budget(paragraph.word_count)
        if budget.max_words is None or cfg.backend == BACKEND_BUILTIN:
            summaries.append(extractive_summarize(paragraph, budget))
        else:
            summaries.append(_external_summarize(paragraph, budget, cfg))
    return summaries
