"""The reframing engine: substitutions, pins, casing, idempotence."""

import json

import pytest
from hypothesis import given, strategies as st

from innerself.conversation import (
    SubstitutionTable,
    default_substitution_table,
    detect_absolutes,
    reframe_absolutes,
)
from innerself.errors import TableFormatError
from innerself.lexicons import TermMatcher, default_absolute_terms


class TestDetect:
    def test_spans_index_the_original_text(self):
        text = "It is always like this, never different."
        spans = detect_absolutes(text)
        assert [text[s.start : s.end] for s in spans] == ["always", "never"]
        assert [s.term for s in spans] == ["always", "never"]

    def test_spans_are_disjoint_and_ordered(self):
        text = "never always nothing everything"
        spans = detect_absolutes(text)
        for before, after in zip(spans, spans[1:]):
            assert before.end <= after.start

    def test_longest_term_wins(self):
        spans = detect_absolutes("I can't ever do it")
        assert [s.term for s in spans] == ["can't ever"]

    def test_no_match_inside_words(self):
        assert detect_absolutes("nevertheless, the everythingness") == []

    def test_replacement_attached(self):
        span = detect_absolutes("never")[0]
        assert span.replacement == "rarely"


class TestReframe:
    def test_simple_substitution(self):
        assert reframe_absolutes("I always forget.") == "I sometimes forget."

    def test_casing_transfer(self):
        assert reframe_absolutes("NEVER again") == "RARELY again"
        assert reframe_absolutes("Never again") == "Rarely again"
        assert reframe_absolutes("never again") == "rarely again"

    def test_multiword_and_capitalized_replacement(self):
        out = reframe_absolutes("No one will help, it's impossible every time.")
        assert out == "Few people will help, it's hard often."

    def test_typographic_apostrophe_match(self):
        out = reframe_absolutes("I can’t ever rest")
        assert out == "I occasionally struggle to rest"

    def test_text_without_absolutes_unchanged(self):
        text = "Today was a decent day, mostly calm. \U0001d11e"
        assert reframe_absolutes(text) == text

    def test_bytes_outside_spans_preserved(self):
        text = "A always B never C \U0001f600 nothing D"
        spans = detect_absolutes(text)
        out = reframe_absolutes(text)
        # the inter-span segments must survive verbatim, in order
        cursor = 0
        pos = 0
        for span in spans:
            segment = text[cursor : span.start]
            found = out.find(segment, pos)
            assert found >= 0
            pos = found + len(segment)
            cursor = span.end
        tail = text[cursor:]
        assert out.endswith(tail)

    def test_pinned_pairs_rewrite_exactly(self):
        table = default_substitution_table()
        assert len(table.pinned) >= 3
        for pin_in, pin_out in table.pinned:
            assert reframe_absolutes(pin_in) == pin_out

    def test_pin_applies_inside_larger_text(self):
        pin_in, pin_out = default_substitution_table().pinned[0]
        out = reframe_absolutes(f"She said: {pin_in} And left.")
        assert pin_out in out
        assert pin_in not in out

    def test_idempotent_on_sentences(self):
        sentences = [
            "I always mess everything up.",
            "Nothing works and nobody cares.",
            "I can't ever focus, it's impossible.",
            "Plain sentence with no targets.",
        ]
        for sentence in sentences:
            once = reframe_absolutes(sentence)
            assert reframe_absolutes(once) == once

    @given(st.text(max_size=200))
    def test_idempotent_on_arbitrary_text(self, text):
        once = reframe_absolutes(text)
        assert reframe_absolutes(once) == once


class TestSubstitutionTable:
    def test_shipped_table_is_complete_and_disjoint(self):
        table = default_substitution_table()
        table.check_against(default_absolute_terms())

    def test_missing_replacement_rejected(self):
        with pytest.raises(TableFormatError, match="without replacements"):
            SubstitutionTable({"always": "sometimes"}).check_against(
                default_absolute_terms()
            )

    def test_replacement_containing_absolute_rejected(self, tmp_path):
        doc = {
            "replacements": dict(
                default_substitution_table().replacements, never="not every time"
            )
        }
        path = tmp_path / "subs.json"
        path.write_text(json.dumps(doc))
        with pytest.raises(TableFormatError, match="absolute term"):
            SubstitutionTable.load(path)

    def test_pinned_output_with_absolute_rejected(self):
        table = SubstitutionTable(
            dict(default_substitution_table().replacements),
            (("bad day", "it is always bad"),),
        )
        with pytest.raises(TableFormatError, match="pinned output"):
            table.check_against(default_absolute_terms())

    def test_pinned_output_embedding_pinned_input_rejected(self):
        table = SubstitutionTable(
            dict(default_substitution_table().replacements),
            (("oh no", "well oh no then"),),
        )
        with pytest.raises(TableFormatError, match="embeds"):
            table.check_against(default_absolute_terms())

    def test_unknown_term_lookup_raises(self):
        with pytest.raises(TableFormatError):
            default_substitution_table().replacement_for("probably")

    def test_load_rejects_wrong_shape(self, tmp_path):
        path = tmp_path / "subs.json"
        path.write_text('["not", "a", "table"]')
        with pytest.raises(TableFormatError):
            SubstitutionTable.load(path)

    def test_custom_matcher_and_table(self):
        matcher = TermMatcher(["totally"])
        table = SubstitutionTable({"totally": "partly"})
        assert (
            reframe_absolutes("I totally failed", matcher, table)
            == "I partly failed"
        )
