"""
Summary budgets and extractive summarization
============================================

Long paragraphs are compressed before embedding.  A tier table maps the
original word count to a word budget (short paragraphs pass through
untouched), and the built-in summarizer then picks whole sentences by
mean term frequency until the budget is spent.
"""

from policygrader.summarize import (
    SummarizerConfig,
    extractive_summarize,
    plan_budget,
    summarize_document,
)
from policygrader.textprep import split_paragraphs

# The tier table, straight from the planner: >400 words -> 200,
# >200 -> 100, >100 -> 75, >75 -> 50, otherwise no summarization.
for count in (60, 75, 76, 100, 101, 200, 201, 400, 401, 450):
    budget = plan_budget(count)
    cap = budget.max_words if budget.max_words is not None else "passthrough"
    print(f"{count:>4} words -> {cap}")

# Build one repetitive paragraph of ~120 words.  Sentences that reuse
# frequent terms score higher, so the summary keeps the most
# "on-message" sentences and drops the rest.
sentences = (
    ["We collect usage data and share usage data with partners."] * 6
    + ["The mascot of our office is a small orange cat."]
    + ["Usage data includes pages visited, session length and clicks."] * 4
)
text = " ".join(sentences)
paragraph = split_paragraphs([text])[0]
print(f"\noriginal: {paragraph.word_count} words")

budget = plan_budget(paragraph.word_count)
summary = extractive_summarize(paragraph, budget)
print(f"budget:   {budget.max_words} words")
print(f"summary:  {summary.word_count} words")
print(summary.text)

# The sentence about the cat shares almost no vocabulary with the rest
# of the paragraph, so it never makes the cut.
assert "cat" not in summary.text
assert summary.word_count <= budget.max_words

# summarize_document applies the same plan to a whole document at once.
doc = split_paragraphs(["Short and sweet.", text])
summaries = summarize_document(doc, SummarizerConfig())
for s in summaries:
    print(f"\n[{s.paragraph_index}] backend={s.backend} degraded={s.degraded} "
          f"words={s.word_count}")
