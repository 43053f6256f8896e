"""Normalization of raw scraped policy text.

Scraped policies arrive as HTML fragments or plain text, often with
markup, entities, accented characters and stray symbols.  ``clean``
reduces any such input to lowercase ASCII prose over a small permitted
character set, and ``split_paragraphs`` turns a list of cleaned blocks
into indexed paragraphs ready for the summarizer.

Cleaning is idempotent: ``clean(clean(x)) == clean(x)``.
"""

from __future__ import annotations

import enum
import re
import unicodedata
from dataclasses import dataclass
from html.parser import HTMLParser

# Characters allowed to survive cleaning.  Sentence punctuation is kept so
# the extractive summarizer can segment sentences; everything else becomes
# a space.
PERMITTED_CHARS = frozenset("abcdefghijklmnopqrstuvwxyz0123456789 .,;:'?!-")

_P_BLOCK_RE = re.compile(r"<p\b[^>]*>(.*?)</p\s*>", re.IGNORECASE | re.DOTALL)


class DocumentKind(enum.Enum):
    PRIVACY_POLICY = "privacy_policy"
    TERMS_OF_SERVICE = "terms_of_service"
    COOKIE_POLICY = "cookie_policy"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class RawDocument:
    """One scraped document, as received from a scraper or a file."""

    source_url: str
    kind: DocumentKind
    body: str


@dataclass(frozen=True)
class CleanParagraph:
    """A cleaned, non-empty text chunk.

    ``index`` is the paragraph's position among the *kept* paragraphs of
    its document (empty-after-cleaning blocks are dropped and do not
    consume an index).  ``word_count`` is the number of whitespace
    delimited tokens in ``text``.
    """

    index: int
    text: str
    word_count: int

    def __post_init__(self) -> None:
        if self.index < 0:
            raise ValueError("paragraph index must be non-negative")
        if not self.text:
            raise ValueError("paragraph text must be non-empty")
        if self.word_count != len(self.text.split()):
            raise ValueError(
                f"word_count {self.word_count} does not match text "
                f"({len(self.text.split())} tokens)"
            )


class _TagStripper(HTMLParser):
    """Collects text content, dropping script/style elements entirely."""

    _DROP = {"script", "style"}

    def __init__(self) -> None:
        super().__init__(convert_charrefs=True)
        self._chunks: list[str] = []
        self._drop_depth = 0

    def handle_starttag(self, tag, attrs):
        if tag in self._DROP:
            self._drop_depth += 1

    def handle_endtag(self, tag):
        if tag in self._DROP and self._drop_depth > 0:
            self._drop_depth -= 1

    def handle_data(self, data):
        if self._drop_depth == 0:
            self._chunks.append(data)

    def text(self) -> str:
        # Tag boundaries separate words ("<p>a</p><p>b</p>" -> "a b");
        # the later whitespace collapse removes the extra spaces.
        return " ".join(self._chunks)


def _strip_tags(text: str) -> str:
    parser = _TagStripper()
    parser.feed(text)
    parser.close()
    return parser.text()


def _fold_accents(text: str) -> str:
    # Canonical decomposition, then drop combining marks: "é" -> "e".
    # Characters with no canonical ASCII decomposition (CJK, ß, ...) pass
    # through here and are removed by the character filter below.
    decomposed = unicodedata.normalize("NFD", text)
    return "".join(ch for ch in decomposed if not unicodedata.combining(ch))


def clean(raw: RawDocument | str) -> str:
    """Normalize one raw document body to clean lowercase text.

    In order: HTML tags are stripped (script/style contents dropped,
    other tag contents kept), entities are decoded, accents are folded to
    ASCII, letters are lowercased, every character outside
    ``PERMITTED_CHARS`` becomes a space, and whitespace runs collapse to
    single spaces.  Empty input yields an empty string.
    """
    body = raw.body if isinstance(raw, RawDocument) else raw
    if not body:
        return ""
    text = _strip_tags(body)
    text = _fold_accents(text)
    text = text.lower()
    text = "".join(ch if ch in PERMITTED_CHARS else " " for ch in text)
    return " ".join(text.split())


def split_paragraphs(cleaned_blocks: list[str]) -> list[CleanParagraph]:
    """Index cleaned blocks, dropping those that cleaned to empty.

    Order is preserved; indices count kept paragraphs only.
    """
    paragraphs = []
    for block in cleaned_blocks:
        if not block:
            continue
        paragraphs.append(
            CleanParagraph(index=len(paragraphs), text=block, word_count=len(block.split()))
        )
    return paragraphs


def extract_paragraph_blocks(html_text: str) -> list[str]:
    """Pull raw ``<p>``-level blocks out of an HTML page, in order.

    This mirrors what the browser-side scraper sends: one raw block per
    paragraph element.  Pages without ``<p>`` elements fall back to one
    block per blank-line-separated run of text.  Blocks are *raw*; run
    them through :func:`clean` before use.
    """
    blocks = [m.group(1) for m in _P_BLOCK_RE.finditer(html_text)]
    if blocks:
        return blocks
    return [part for part in re.split(r"\n\s*\n", html_text) if part.strip()]
