"""Dialog strategies and the routing rule table.

Five fixed strategies cover the intervention space. Routing is a total,
deterministic function of the emotion result and the session's strategy
history: high-confidence anger/anxiety gets an immediate reframe,
high-confidence sadness/shame gets affirmation, diffuse negative states
get stepwise Socratic questioning, neutral turns surface open plans.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from innerself.emotion.classify import EmotionLabel, EmotionResult
from innerself.errors import TableFormatError
from innerself.lexicons import data_path

STRATEGY_IDS = (
    "immediate_reframe",
    "cognitive_restructuring",
    "action_plan",
    "affirmation_support",
    "small_talk",
)

ALLOWED_SLOTS = frozenset({"user_name", "topic", "reframed_text"})
CONFIDENT = 0.5
NEGATIVE_MASS_GATE = 0.5

_SLOT_GROUP_RE = re.compile(r"\{([^{}]*)\}")


def template_slots(template: str) -> set[str]:
    slots = set(_SLOT_GROUP_RE.findall(template))
    braces = template.count("{") + template.count("}")
    if braces != 2 * len(_SLOT_GROUP_RE.findall(template)):
        raise TableFormatError(f"unbalanced braces in template {template!r}")
    return slots


@dataclass(frozen=True)
class DialogStrategy:
    """A strategy id with its script sequence and current step."""

    id: str
    script_templates: tuple[str, ...]
    step_index: int = 0

    def __post_init__(self):
        if self.id not in STRATEGY_IDS:
            raise ValueError(f"unknown strategy id {self.id!r}")
        if not self.script_templates:
            raise ValueError(f"strategy {self.id} has no templates")
        for template in self.script_templates:
            bad = template_slots(template) - ALLOWED_SLOTS
            if bad:
                raise ValueError(f"undeclared slots {sorted(bad)} in {self.id}")
        if not (0 <= self.step_index < len(self.script_templates)):
            raise ValueError(
                f"step_index {self.step_index} out of range for {self.id}"
            )

    @property
    def final_step(self) -> int:
        return len(self.script_templates) - 1

    def current_template(self) -> str:
        return self.script_templates[self.step_index]


@dataclass(frozen=True)
class StrategyEntry:
    templates: tuple[str, ...]
    pronoun_person: str
    require_positive_affect: bool
    fallback: str


class StrategyTable:
    """Validated strategy definitions loaded from the JSON table."""

    def __init__(self, entries: dict[str, StrategyEntry]):
        missing = [sid for sid in STRATEGY_IDS if sid not in entries]
        if missing:
            raise TableFormatError(f"strategy table missing ids: {missing}")
        unknown = [sid for sid in entries if sid not in STRATEGY_IDS]
        if unknown:
            raise TableFormatError(f"unknown strategy ids: {unknown}")
        self.entries = entries
        self._validate_fallbacks()

    def _validate_fallbacks(self) -> None:
        # fallbacks are the last line of defense for the constraint
        # guarantee, so they must be slot-free and pass their own checks
        from innerself.conversation.prompts import ResponseConstraints
        from innerself.conversation.responder import validate_response

        for sid, entry in self.entries.items():
            if template_slots(entry.fallback):
                raise TableFormatError(f"{sid} fallback must be slot-free")
            constraints = ResponseConstraints(
                pronoun_person=entry.pronoun_person,
                require_positive_affect=entry.require_positive_affect,
                forbid_absolutes=True,
            )
            report = validate_response(entry.fallback, constraints)
            failed = [k for k, ok in report.items() if not ok]
            if failed:
                raise TableFormatError(
                    f"{sid} fallback violates its own constraints: {failed}"
                )
            # a strategy built from every step exercises slot validation
            DialogStrategy(sid, entry.templates)

    @classmethod
    def load(cls, path: str | Path) -> "StrategyTable":
        try:
            raw = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            raise TableFormatError(f"cannot read strategy table: {exc}") from exc
        if not isinstance(raw, dict):
            raise TableFormatError("strategy table must be a JSON object")
        entries = {}
        for sid, payload in raw.items():
            try:
                templates = tuple(payload["templates"])
                entry = StrategyEntry(
                    templates=templates,
                    pronoun_person=payload["pronoun_person"],
                    require_positive_affect=bool(
                        payload["require_positive_affect"]
                    ),
                    fallback=payload["fallback"],
                )
            except (KeyError, TypeError) as exc:
                raise TableFormatError(f"bad strategy entry {sid!r}: {exc}") from exc
            if not all(isinstance(t, str) for t in entry.templates):
                raise TableFormatError(f"templates for {sid!r} must be strings")
            entries[sid] = entry
        return cls(entries)

    def entry(self, strategy_id: str) -> StrategyEntry:
        return self.entries[strategy_id]

    def strategy(self, strategy_id: str, step_index: int = 0) -> DialogStrategy:
        return DialogStrategy(
            strategy_id, self.entries[strategy_id].templates, step_index
        )

    def constraints_for(self, strategy_id: str, max_chars: int = 600):
        from innerself.conversation.prompts import ResponseConstraints

        entry = self.entries[strategy_id]
        return ResponseConstraints(
            max_chars=max_chars,
            pronoun_person=entry.pronoun_person,
            require_positive_affect=entry.require_positive_affect,
            forbid_absolutes=True,
        )


_DEFAULT_TABLE: StrategyTable | None = None


def default_strategy_table() -> StrategyTable:
    global _DEFAULT_TABLE
    if _DEFAULT_TABLE is None:
        _DEFAULT_TABLE = StrategyTable.load(data_path("strategies.json"))
    return _DEFAULT_TABLE


@dataclass(frozen=True)
class StrategyHistory:
    """Session-scoped record of strategies already used.

    Immutable; record() returns the extended history. open_plan mirrors
    whether the session has an action plan with unfinished steps.
    """

    uses: tuple[tuple[str, int], ...] = field(default_factory=tuple)
    open_plan: bool = False

    def record(self, strategy: DialogStrategy) -> "StrategyHistory":
        return StrategyHistory(
            self.uses + ((strategy.id, strategy.step_index),), self.open_plan
        )

    def with_open_plan(self, open_plan: bool) -> "StrategyHistory":
        return StrategyHistory(self.uses, open_plan)

    def last_step(self, strategy_id: str) -> int | None:
        for sid, step in reversed(self.uses):
            if sid == strategy_id:
                return step
        return None


def select_strategy(
    emotion: EmotionResult,
    context: str = "",
    history: StrategyHistory | None = None,
    table: StrategyTable | None = None,
) -> DialogStrategy:
    """Route an emotion result to a strategy. Total and deterministic.

    Context is accepted for interface stability; the shipped rule table
    routes on the emotion result and history alone.
    """
    del context
    if history is None:
        history = StrategyHistory()
    if table is None:
        table = default_strategy_table()
    dominant = emotion.dominant
    confidence = emotion.confidence
    if dominant in (EmotionLabel.ANGER, EmotionLabel.ANXIETY) and (
        confidence >= CONFIDENT
    ):
        return table.strategy("immediate_reframe")
    if dominant in (EmotionLabel.SADNESS, EmotionLabel.SHAME_REGRET) and (
        confidence >= CONFIDENT
    ):
        return table.strategy("affirmation_support")
    if (
        dominant is not EmotionLabel.NEUTRAL
        and confidence < CONFIDENT
        and emotion.negative_mass() >= NEGATIVE_MASS_GATE
    ):
        steps = len(table.entry("cognitive_restructuring").templates)
        last = history.last_step("cognitive_restructuring")
        step = 0 if last is None else min(last + 1, steps - 1)
        return table.strategy("cognitive_restructuring", step)
    if dominant is EmotionLabel.NEUTRAL and history.open_plan:
        return table.strategy("action_plan")
    return table.strategy("small_talk")
