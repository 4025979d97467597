"""Lexicon files and word/phrase matching.

Lexicon file format: UTF-8 text, one lowercase token or multiword phrase
per line; '#' starts a comment line; blank lines ignored. Matching is
case-insensitive on word boundaries, longest match first at each position.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

_WORD_RE = re.compile(r"[a-z0-9']+")

FIRST_SINGULAR_TOKENS = frozenset(
    {"i", "i'm", "i'll", "i've", "i'd", "me", "my", "mine", "myself"}
)
SECOND_PERSON_TOKENS = frozenset(
    {"you", "you're", "you'll", "you've", "you'd", "your", "yours", "yourself"}
)

# Typographic apostrophe variants normalized (1:1) before matching so that
# "can’t" matches a lexicon entry spelled "can't". Offsets are unaffected.
_APOSTROPHES = str.maketrans({"’": "'", "‘": "'"})


def normalize_apostrophes(text: str) -> str:
    return text.translate(_APOSTROPHES)


def tokenize(text: str) -> list[str]:
    """Lowercase word tokens (apostrophes kept, so "can't" is one token)."""
    return _WORD_RE.findall(normalize_apostrophes(text).lower())


class TermMatcher:
    """Matches a fixed set of tokens/phrases in running text.

    Spans are non-overlapping, scanned left to right, longest match first
    at each position (regex alternation ordered by descending length).
    """

    def __init__(self, terms: list[str]):
        cleaned = []
        for term in terms:
            term = normalize_apostrophes(term.strip().lower())
            if term and term not in cleaned:
                cleaned.append(term)
        self.terms = cleaned
        if cleaned:
            ordered = sorted(cleaned, key=len, reverse=True)
            alternation = "|".join(
                re.escape(t).replace(r"\ ", r"\s+") for t in ordered
            )
            self._pattern = re.compile(rf"\b(?:{alternation})\b", re.IGNORECASE)
        else:
            self._pattern = None

    def finditer(self, text: str):
        """Yield (start, end, canonical_term) for each match."""
        if self._pattern is None:
            return
        for m in self._pattern.finditer(normalize_apostrophes(text)):
            canonical = re.sub(r"\s+", " ", m.group(0).lower())
            yield m.start(), m.end(), normalize_apostrophes(canonical)

    def count_matches(self, text: str) -> int:
        return sum(1 for _ in self.finditer(text))

    def contains_any(self, text: str) -> bool:
        return self.count_matches(text) > 0

    def __contains__(self, term: str) -> bool:
        return normalize_apostrophes(term.lower()) in self.terms

    def __len__(self) -> int:
        return len(self.terms)


@dataclass(frozen=True)
class ValenceLexicon:
    """Positive and negative valence vocabularies."""

    positive: TermMatcher
    negative: TermMatcher


def load_terms(path: str | Path) -> list[str]:
    terms = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            terms.append(line)
    return terms


def load_matcher(path: str | Path) -> TermMatcher:
    return TermMatcher(load_terms(path))


def data_path(name: str) -> Path:
    """Path of a shipped data file (lexicons and tables)."""
    return Path(resources.files("innerself") / "data" / name)


def default_valence_lexicon() -> ValenceLexicon:
    return ValenceLexicon(
        positive=load_matcher(data_path("positive_valence.txt")),
        negative=load_matcher(data_path("negative_valence.txt")),
    )


def default_absolute_terms() -> TermMatcher:
    return load_matcher(data_path("absolute_terms.txt"))
