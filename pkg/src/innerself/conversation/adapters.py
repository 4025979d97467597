"""Language-model adapter boundary.

The reference adapter follows the prompt's [script] section exactly,
which makes the whole turn pipeline deterministic and constraint-clean.
The scripted and adversarial adapters exist for tests; the HTTP adapter
talks to an external completion endpoint.
"""

from __future__ import annotations

from typing import Protocol

from innerself.adapters import post_json
from innerself.conversation.prompts import script_section
from innerself.errors import AdapterUnavailable


class LanguageModelAdapter(Protocol):
    def generate(self, prompt: str) -> str: ...


class ScriptFollowingLLM:
    """Reference generator: returns the prompt's script verbatim."""

    name = "reference"

    def generate(self, prompt: str) -> str:
        return script_section(prompt)


class ScriptedLLM:
    """Plays back a fixed response sequence (sticks on the last one)."""

    def __init__(self, responses: list[str]):
        if not responses:
            raise ValueError("ScriptedLLM needs at least one response")
        self._responses = list(responses)
        self.calls = 0

    def generate(self, prompt: str) -> str:
        index = min(self.calls, len(self._responses) - 1)
        self.calls += 1
        return self._responses[index]


class AdversarialLLM:
    """Always emits absolutist text; used to prove the fallback path."""

    def __init__(self, text: str = "You always mess up and nothing ever helps."):
        self.text = text
        self.calls = 0

    def generate(self, prompt: str) -> str:
        self.calls += 1
        return self.text


class HttpLLM:
    """Remote completion endpoint: {"prompt"} in, {"text"} out."""

    def __init__(self, endpoint: str):
        self.endpoint = endpoint

    def generate(self, prompt: str) -> str:
        response = post_json(self.endpoint, json={"prompt": prompt})
        try:
            text = response.json()["text"]
        except (ValueError, KeyError) as exc:
            raise AdapterUnavailable(
                f"malformed completion payload from {self.endpoint}"
            ) from exc
        if not isinstance(text, str):
            raise AdapterUnavailable(f"non-string completion from {self.endpoint}")
        return text
