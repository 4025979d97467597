"""Prompt assembly for the response generator.

Prompts are plain text with bracketed section headers, in fixed order:
[persona], [script], [context], [constraints]. The script section carries
the strategy template for the current step with its slots already filled,
so a generator that follows the script exactly is constraint-clean.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import TYPE_CHECKING

from innerself.errors import ContextOverflow

if TYPE_CHECKING:
    from innerself.conversation.strategy import DialogStrategy

MAX_CONTEXT_CHARS = 600

PRONOUN_PERSONS = ("first_singular", "second", "name_address")

_PERSONA = (
    "You are the speaker's own inner voice, trained in positive psychology. "
    "Respond with empathy and encouragement, never with judgment."
)

_PRONOUN_DIRECTIVES = {
    "first_singular": (
        "Speak in the first person singular (I, me, my), as the speaker's "
        "own voice. Do not address the speaker as you."
    ),
    "second": (
        "Address the speaker in the second person (you, your). Do not use "
        "first person singular pronouns."
    ),
    "name_address": (
        "Address the speaker by name and in the second person (you, your). "
        "Do not use first person singular pronouns."
    ),
}

_SLOT_RE = re.compile(r"\{(user_name|topic|reframed_text)\}")


@dataclass(frozen=True)
class ResponseConstraints:
    """Hard requirements a response must satisfy."""

    max_chars: int = 600
    pronoun_person: str = "first_singular"
    require_positive_affect: bool = False
    forbid_absolutes: bool = True

    def __post_init__(self):
        if not (0 < self.max_chars <= 600):
            raise ValueError("max_chars must be in 1..600")
        if self.pronoun_person not in PRONOUN_PERSONS:
            raise ValueError(f"unknown pronoun_person {self.pronoun_person!r}")


def fill_slots(
    template: str,
    user_name: str = "",
    topic: str = "",
    reframed_text: str = "",
) -> str:
    values = {
        "user_name": user_name,
        "topic": topic,
        "reframed_text": reframed_text,
    }
    return _SLOT_RE.sub(lambda m: values[m.group(1)], template)


def build_prompt(
    strategy: "DialogStrategy",
    context: str,
    user_name: str,
    constraints: ResponseConstraints,
    topic: str = "",
    reframed_text: str = "",
) -> str:
    """Assemble the generation prompt. Deterministic given its inputs."""
    if len(context) > MAX_CONTEXT_CHARS:
        raise ContextOverflow(
            f"context is {len(context)} chars, limit {MAX_CONTEXT_CHARS}"
        )
    script = fill_slots(
        strategy.current_template(),
        user_name=user_name,
        topic=topic,
        reframed_text=reframed_text,
    )
    directives = [
        f"- Respond with at most {constraints.max_chars} characters.",
        f"- {_PRONOUN_DIRECTIVES[constraints.pronoun_person]}",
    ]
    if constraints.forbid_absolutes:
        directives.append(
            '- Avoid absolute terms such as "always", "never", or "nothing".'
        )
    if constraints.require_positive_affect:
        directives.append("- Keep the overall tone warm and affirming.")
    directives.append("- Stay close to the script above; it is the response.")
    sections = [
        "[persona]",
        _PERSONA,
        "",
        "[script]",
        script,
        "",
        "[context]",
        context if context else "(no prior context)",
        "",
        "[constraints]",
        "\n".join(directives),
    ]
    return "\n".join(sections)


def script_section(prompt: str) -> str:
    """Extract the [script] block from a prompt built by build_prompt."""
    lines = prompt.splitlines()
    collected: list[str] = []
    inside = False
    for line in lines:
        if line.strip() == "[script]":
            inside = True
            continue
        if inside and re.fullmatch(r"\[[a-z_]+\]", line.strip()):
            break
        if inside:
            collected.append(line)
    return "\n".join(collected).strip()
