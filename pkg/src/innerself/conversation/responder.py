"""Response generation with hard constraint enforcement.

A candidate from the language model is accepted only when every
constraint check passes. Failures trigger up to two regenerations, each
with the violation report appended to the prompt; after three failed
attempts the strategy's fallback script is returned verbatim. Fallbacks
are validated at table load time, so the result is constraint-clean in
at most three adapter calls.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import TYPE_CHECKING

from innerself.conversation.prompts import ResponseConstraints, script_section
from innerself.lexicons import (
    FIRST_SINGULAR_TOKENS,
    SECOND_PERSON_TOKENS,
    TermMatcher,
    ValenceLexicon,
    default_absolute_terms,
    default_valence_lexicon,
    tokenize,
)

if TYPE_CHECKING:
    from innerself.conversation.adapters import LanguageModelAdapter
    from innerself.conversation.prosody import ProsodyParams

logger = logging.getLogger(__name__)

MAX_ATTEMPTS = 3

CONSTRAINT_KEYS = ("length", "pronoun_person", "absolutes", "positive_affect")


@dataclass(frozen=True)
class ResponsePlan:
    """Final response text plus how it was produced."""

    text: str
    strategy_id: str
    step_index: int
    constraint_report: dict[str, bool]
    prosody: "ProsodyParams | None" = None
    used_fallback: bool = False
    attempts: int = 0

    @property
    def passes(self) -> bool:
        return all(self.constraint_report.values())

    def with_prosody(self, prosody: "ProsodyParams") -> "ResponsePlan":
        return replace(self, prosody=prosody)

    def to_dict(self) -> dict:
        return {
            "text": self.text,
            "strategy": {"id": self.strategy_id, "step": self.step_index},
            "prosody": self.prosody.to_dict() if self.prosody else None,
            "constraint_report": dict(self.constraint_report),
            "used_fallback": self.used_fallback,
            "attempts": self.attempts,
        }


def _pronoun_ok(tokens: list[str], pronoun_person: str) -> bool:
    has_first = any(t in FIRST_SINGULAR_TOKENS for t in tokens)
    has_second = any(t in SECOND_PERSON_TOKENS for t in tokens)
    if pronoun_person == "first_singular":
        return has_first and not has_second
    # name_address keeps second-person grammar around the name
    return has_second and not has_first


def validate_response(
    text: str,
    constraints: ResponseConstraints,
    valence: ValenceLexicon | None = None,
    absolutes: TermMatcher | None = None,
) -> dict[str, bool]:
    """One boolean per constraint; non-required checks report True."""
    if valence is None:
        valence = default_valence_lexicon()
    if absolutes is None:
        absolutes = default_absolute_terms()
    tokens = tokenize(text)
    report = {
        "length": len(text) <= constraints.max_chars,
        "pronoun_person": _pronoun_ok(tokens, constraints.pronoun_person),
        "absolutes": (
            not constraints.forbid_absolutes or not absolutes.contains_any(text)
        ),
        "positive_affect": (
            not constraints.require_positive_affect
            or valence.positive.count_matches(text)
            > valence.negative.count_matches(text)
        ),
    }
    return report


def _violation_note(report: dict[str, bool]) -> str:
    failed = [key for key, ok in report.items() if not ok]
    return (
        "\n\n[violations]\nThe previous candidate failed these checks: "
        + ", ".join(failed)
        + ". Produce a new response that satisfies every constraint."
    )


def generate_response(
    prompt: str,
    llm: "LanguageModelAdapter",
    constraints: ResponseConstraints,
    strategy_id: str = "small_talk",
    step_index: int = 0,
    fallback_text: str | None = None,
    valence: ValenceLexicon | None = None,
    absolutes: TermMatcher | None = None,
) -> ResponsePlan:
    """Generate constraint-clean response text.

    At most MAX_ATTEMPTS adapter calls are made. When fallback_text is
    not given, the prompt's own [script] section serves as the fallback.
    """
    if not prompt.strip():
        raise ValueError("prompt must be non-empty")
    current = prompt
    report: dict[str, bool] = {}
    for attempt in range(1, MAX_ATTEMPTS + 1):
        text = llm.generate(current)
        report = validate_response(text, constraints, valence, absolutes)
        if all(report.values()):
            return ResponsePlan(
                text=text,
                strategy_id=strategy_id,
                step_index=step_index,
                constraint_report=report,
                attempts=attempt,
            )
        logger.debug(
            "candidate %d/%d rejected: %s",
            attempt,
            MAX_ATTEMPTS,
            [k for k, ok in report.items() if not ok],
        )
        current = prompt + _violation_note(report)
    fallback = fallback_text if fallback_text is not None else script_section(prompt)
    fallback_report = validate_response(fallback, constraints, valence, absolutes)
    return ResponsePlan(
        text=fallback,
        strategy_id=strategy_id,
        step_index=step_index,
        constraint_report=fallback_report,
        used_fallback=True,
        attempts=MAX_ATTEMPTS,
    )
