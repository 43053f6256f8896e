"""
Cleaning scraped policy text
============================

Raw paragraphs arrive from a page scraper full of markup, entities and
typography.  The cleaner strips tags, folds accents, lowercases and
collapses everything outside a small permitted alphabet, so every later
stage sees the same canonical form.
"""

from policygrader.textprep import PERMITTED_CHARS, clean, split_paragraphs

# A scraped fragment as the browser side would deliver it: markup,
# HTML entities, accented characters and stray whitespace.
raw_blocks = [
    "<p>We may share your <strong>Personal&nbsp;Data</strong> with "
    "partners &amp; affiliates.</p>",
    "<script>trackPageView();</script>",
    "Our café-style support team is available 24/7 — "
    "subject to the <em>Terms</em>.",
    "   ",
]

# Clean each block.  Scripts, styles and empty blocks vanish entirely.
cleaned = [clean(block) for block in raw_blocks]
for before, after in zip(raw_blocks, cleaned):
    print(f"raw:     {before!r}")
    print(f"cleaned: {after!r}")
    print()

# split_paragraphs drops the empties and numbers what is left; these
# indexed paragraphs are the unit of work for the whole pipeline.
paragraphs = split_paragraphs(cleaned)
for paragraph in paragraphs:
    print(f"[{paragraph.index}] ({paragraph.word_count} words) {paragraph.text}")

# Cleaning is idempotent and closed over a fixed alphabet: running it
# again changes nothing, and no character outside the set survives.
assert all(clean(p.text) == p.text for p in paragraphs)
assert all(set(p.text) <= PERMITTED_CHARS for p in paragraphs)
print("\ncleaning is idempotent and within the permitted alphabet")
