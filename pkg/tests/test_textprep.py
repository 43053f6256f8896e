"""Cleaning and paragraph splitting."""

import string

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from policygrader.textprep import (
    PERMITTED_CHARS,
    CleanParagraph,
    DocumentKind,
    RawDocument,
    clean,
    extract_paragraph_blocks,
    split_paragraphs,
)


class TestCleanGoldens:
    def test_strips_tags_and_lowercases(self):
        assert clean("<strong>Genetic Information.</strong>") == "genetic information."

    def test_folds_accents(self):
        assert clean("Café Rosé") == "cafe rose"

    def test_parentheses_become_spaces(self):
        raw = "<li>search results and links, including paid listings (such as Sponsored Links)."
        assert clean(raw) == (
            "search results and links, including paid listings such as sponsored links ."
        )

    def test_decodes_entities_then_filters(self):
        # &amp; decodes to "&", which is outside the permitted set.
        assert clean("cookies &amp; trackers") == "cookies trackers"

    def test_drops_script_and_style_contents(self):
        raw = "<p>keep this</p><script>var x = 1;</script><style>.a{color:red}</style><p>and this</p>"
        assert clean(raw) == "keep this and this"

    def test_nested_markup_inside_script_stays_dropped(self):
        raw = "<script>if (a < b) { alert('<p>nope</p>') }</script>visible"
        assert clean(raw) == "visible"

    def test_accepts_raw_document(self):
        doc = RawDocument(source_url="", kind=DocumentKind.PRIVACY_POLICY, body="Hello <b>World</b>")
        assert clean(doc) == "hello world"

    def test_empty_input(self):
        assert clean("") == ""

    def test_whitespace_collapses(self):
        assert clean("a   b\t\nc") == "a b c"

    def test_kept_punctuation(self):
        assert clean("No? Yes! a,b;c:d-e 'quote'.") == "no? yes! a,b;c:d-e 'quote'."

    def test_unpermitted_symbols_become_spaces(self):
        assert clean("price: $5 @ 10% [net]") == "price: 5 10 net"

    def test_cjk_replaced(self):
        assert clean("privacy 隐私 policy") == "privacy policy"


class TestSplitParagraphs:
    def test_drops_empty_and_reindexes(self):
        out = split_paragraphs(["hello world", "", "foo"])
        assert out == [
            CleanParagraph(index=0, text="hello world", word_count=2),
            CleanParagraph(index=1, text="foo", word_count=1),
        ]

    def test_empty_document(self):
        assert split_paragraphs([]) == []

    def test_word_count(self):
        out = split_paragraphs(["a b c d e"])
        assert out == [CleanParagraph(index=0, text="a b c d e", word_count=5)]

    def test_order_preserved(self):
        out = split_paragraphs(["one", "two", "three"])
        assert [p.text for p in out] == ["one", "two", "three"]


class TestExtractParagraphBlocks:
    def test_three_p_elements(self):
        html = "<html><body><p>First.</p><div><p>Second.</p></div><p>Third.</p></body></html>"
        assert extract_paragraph_blocks(html) == ["First.", "Second.", "Third."]

    def test_plain_text_splits_on_blank_lines(self):
        text = "para one\ncontinued\n\npara two"
        assert extract_paragraph_blocks(text) == ["para one\ncontinued", "para two"]


# A generous mix of markup, entities, accents and junk characters.
_raw_text = st.text(
    alphabet=st.sampled_from(
        list(string.printable) + list("éàüñøçß€«»隐私— ’") + ["<", ">", "&"]
    ),
    max_size=300,
)
_tagged = st.builds(
    lambda inner, tag: f"<{tag}>{inner}</{tag}>",
    _raw_text,
    st.sampled_from(["p", "li", "strong", "div", "span", "em"]),
)
_inputs = st.one_of(_raw_text, _tagged, st.builds(lambda a, b: a + b, _tagged, _raw_text))


class TestCleanProperties:
    @settings(max_examples=300, deadline=None)
    @given(_inputs)
    def test_idempotent(self, raw):
        once = clean(raw)
        assert clean(once) == once

    @settings(max_examples=300, deadline=None)
    @given(_inputs)
    def test_charset(self, raw):
        assert set(clean(raw)) <= PERMITTED_CHARS

    @settings(max_examples=300, deadline=None)
    @given(_inputs)
    def test_no_tags_no_uppercase(self, raw):
        out = clean(raw)
        assert "<" not in out and ">" not in out
        assert not any(c.isupper() for c in out)

    @settings(max_examples=200, deadline=None)
    @given(_inputs)
    def test_no_double_spaces_or_edge_whitespace(self, raw):
        out = clean(raw)
        assert out == out.strip()
        assert "  " not in out

    @settings(max_examples=200, deadline=None)
    @given(st.lists(_inputs, max_size=8))
    def test_split_paragraph_invariants(self, raws):
        paragraphs = split_paragraphs([clean(r) for r in raws])
        for i, para in enumerate(paragraphs):
            assert para.index == i
            assert para.text
            assert para.word_count == len(para.text.split())


def test_document_kind_values():
    assert {k.value for k in DocumentKind} == {
        "privacy_policy",
        "terms_of_service",
        "cookie_policy",
        "unknown",
    }


def test_clean_paragraph_rejects_bad_invariants():
    with pytest.raises(ValueError):
        CleanParagraph(index=0, text="", word_count=0)
    with pytest.raises(ValueError):
        CleanParagraph(index=0, text="two words", word_count=3)
