"""Dialogue FIFO buffer semantics."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from innerself.errors import OversizeAppend
from innerself.storage.buffer import DEFAULT_ALPHA, OVERSIZE_FACTOR, DialogueBuffer


class TestBasics:
    def test_default_capacity(self):
        assert DialogueBuffer().capacity == DEFAULT_ALPHA == 600

    def test_capacity_must_be_positive(self):
        with pytest.raises(ValueError):
            DialogueBuffer(0)
        with pytest.raises(ValueError):
            DialogueBuffer(-5)

    def test_worked_example(self):
        buf = DialogueBuffer(10)
        assert buf.append("abcdefgh") == ""
        assert buf.content == "abcdefgh"
        assert buf.append("ijkl") == "ab"
        assert buf.content == "cdefghijkl"
        assert len(buf) == 10
        assert buf.total_appended == 12

    def test_empty_append_is_noop(self):
        buf = DialogueBuffer(5)
        buf.append("abc")
        assert buf.append("") == ""
        assert buf.content == "abc"
        assert buf.total_appended == 3

    def test_characters_not_bytes(self):
        buf = DialogueBuffer(3)
        evicted = buf.append("\U0001d11e" * 4)
        assert evicted == "\U0001d11e"
        assert len(buf) == 3

    def test_context_window_matches_content(self):
        buf = DialogueBuffer(8)
        buf.append("hello world")
        assert buf.context_window() == buf.content == "llo world"[-8:]


class TestOversize:
    def test_over_the_cap_rejected(self):
        buf = DialogueBuffer(10)
        with pytest.raises(OversizeAppend):
            buf.append("x" * (OVERSIZE_FACTOR * 10 + 1))
        assert buf.content == ""
        assert buf.total_appended == 0

    def test_exactly_at_cap_allowed(self):
        buf = DialogueBuffer(10)
        evicted = buf.append("x" * 100)
        assert evicted == "x" * 90
        assert buf.content == "x" * 10


class TestRestore:
    def test_restore_state(self):
        buf = DialogueBuffer(10)
        buf.restore("recovered", 42)
        assert buf.content == "recovered"
        assert buf.total_appended == 42

    def test_restore_over_capacity_rejected(self):
        buf = DialogueBuffer(4)
        with pytest.raises(ValueError):
            buf.restore("too long", 8)


@st.composite
def buffer_runs(draw):
    alpha = draw(st.sampled_from([1, 5, 37]))
    appends = draw(
        st.lists(st.text(max_size=OVERSIZE_FACTOR * alpha), max_size=20)
    )
    return alpha, appends


class TestConservation:
    @settings(max_examples=200, deadline=None)
    @given(buffer_runs())
    def test_no_character_lost_or_duplicated(self, run):
        alpha, appends = run
        buf = DialogueBuffer(alpha)
        evicted = []
        for text in appends:
            evicted.append(buf.append(text))
        everything = "".join(appends)
        assert "".join(evicted) + buf.content == everything
        assert len(buf) == min(len(everything), alpha)
        assert buf.total_appended == len(everything)
