"""Deterministic reframing of absolutist self-talk.

Two layers: a small set of pinned sentence rewrites applied first
(case-sensitive substring match after apostrophe normalization), then a
general term-substitution pass over the remaining text. The general pass
replaces right-to-left so earlier offsets stay valid, and transfers the
source span's casing style onto the replacement.

Idempotence is enforced structurally at load time: no replacement value
and no pinned output may contain an absolute term or a pinned input.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from innerself.errors import TableFormatError
from innerself.lexicons import (
    TermMatcher,
    data_path,
    default_absolute_terms,
    normalize_apostrophes,
)


@dataclass(frozen=True)
class AbsoluteSpan:
    """One matched absolute term and its gentler substitute."""

    start: int
    end: int
    term: str
    replacement: str

    def __post_init__(self):
        if not (0 <= self.start < self.end):
            raise ValueError(f"bad span offsets [{self.start}, {self.end})")


@dataclass(frozen=True)
class SubstitutionTable:
    """Term → replacement map plus pinned (input, output) sentence pairs."""

    replacements: dict[str, str]
    pinned: tuple[tuple[str, str], ...] = field(default_factory=tuple)

    @classmethod
    def load(
        cls, path: str | Path, matcher: TermMatcher | None = None
    ) -> "SubstitutionTable":
        if matcher is None:
            matcher = default_absolute_terms()
        try:
            raw = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            raise TableFormatError(f"cannot read substitution table: {exc}") from exc
        if not isinstance(raw, dict) or not isinstance(raw.get("replacements"), dict):
            raise TableFormatError(
                'substitution table must be {"replacements": {...}, "pinned": [...]}'
            )
        replacements = {}
        for term, repl in raw["replacements"].items():
            if not isinstance(term, str) or not isinstance(repl, str) or not repl:
                raise TableFormatError(f"bad replacement entry {term!r}")
            replacements[normalize_apostrophes(term.strip().lower())] = repl
        pinned = []
        for entry in raw.get("pinned", []):
            if not (
                isinstance(entry, dict)
                and isinstance(entry.get("input"), str)
                and isinstance(entry.get("output"), str)
                and entry["input"]
            ):
                raise TableFormatError(f"bad pinned pair {entry!r}")
            pinned.append(
                (normalize_apostrophes(entry["input"]), entry["output"])
            )
        table = cls(replacements, tuple(pinned))
        table.check_against(matcher)
        return table

    def check_against(self, matcher: TermMatcher) -> None:
        """Completeness and disjointness preconditions for idempotence."""
        missing = [t for t in matcher.terms if t not in self.replacements]
        if missing:
            raise TableFormatError(f"terms without replacements: {missing}")
        for term, repl in self.replacements.items():
            if matcher.contains_any(repl):
                raise TableFormatError(
                    f"replacement for {term!r} contains an absolute term: {repl!r}"
                )
        for pin_in, pin_out in self.pinned:
            if matcher.contains_any(pin_out):
                raise TableFormatError(
                    f"pinned output contains an absolute term: {pin_out!r}"
                )
            normalized_out = normalize_apostrophes(pin_out)
            for other_in, _ in self.pinned:
                if other_in in normalized_out:
                    raise TableFormatError(
                        f"pinned output embeds a pinned input: {pin_out!r}"
                    )

    def replacement_for(self, term: str) -> str:
        try:
            return self.replacements[term]
        except KeyError:
            raise TableFormatError(f"no replacement for term {term!r}") from None


_DEFAULT_TABLE: SubstitutionTable | None = None


def default_substitution_table() -> SubstitutionTable:
    global _DEFAULT_TABLE
    if _DEFAULT_TABLE is None:
        _DEFAULT_TABLE = SubstitutionTable.load(data_path("substitutions.json"))
    return _DEFAULT_TABLE


def detect_absolutes(
    text: str,
    matcher: TermMatcher | None = None,
    table: SubstitutionTable | None = None,
) -> list[AbsoluteSpan]:
    """Non-overlapping absolute-term spans, left to right.

    Longest match wins at each position; matching is case-insensitive on
    word boundaries. Offsets index the original text.
    """
    if matcher is None:
        matcher = default_absolute_terms()
    if table is None:
        table = default_substitution_table()
    return [
        AbsoluteSpan(start, end, term, table.replacement_for(term))
        for start, end, term in matcher.finditer(text)
    ]


def _match_case(source: str, replacement: str) -> str:
    letters = [ch for ch in source if ch.isalpha()]
    if letters and all(ch.isupper() for ch in letters):
        return replacement.upper()
    if letters and letters[0].isupper():
        return replacement[0].upper() + replacement[1:]
    return replacement


def _apply_pinned(text: str, pin_in: str, pin_out: str) -> str:
    normalized = normalize_apostrophes(text)
    pieces = []
    i = 0
    while True:
        j = normalized.find(pin_in, i)
        if j < 0:
            pieces.append(text[i:])
            return "".join(pieces)
        pieces.append(text[i:j])
        pieces.append(pin_out)
        i = j + len(pin_in)


def reframe_absolutes(
    text: str,
    matcher: TermMatcher | None = None,
    table: SubstitutionTable | None = None,
) -> str:
    """Rewrite absolutist phrasing into gentler equivalents.

    Text outside matched spans is preserved byte for byte; applying the
    function twice equals applying it once.
    """
    if matcher is None:
        matcher = default_absolute_terms()
    if table is None:
        table = default_substitution_table()
    for pin_in, pin_out in table.pinned:
        text = _apply_pinned(text, pin_in, pin_out)
    spans = detect_absolutes(text, matcher, table)
    for span in reversed(spans):
        replacement = _match_case(text[span.start : span.end], span.replacement)
        text = text[: span.start] + replacement + text[span.end :]
    return text
