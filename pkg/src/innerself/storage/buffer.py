"""Fixed-capacity character FIFO for dialogue context.

The buffer always holds the last min(total_appended, capacity)
characters of everything appended; append returns exactly the prefix
pushed out. Characters are Unicode scalar values (Python str elements),
so multi-byte text is never split mid-character.
"""

from __future__ import annotations

from innerself.errors import OversizeAppend

DEFAULT_ALPHA = 600
OVERSIZE_FACTOR = 10


class DialogueBuffer:
    def __init__(self, capacity: int = DEFAULT_ALPHA):
        if capacity < 1:
            raise ValueError("capacity must be at least 1")
        self.capacity = capacity
        self._content = ""
        self.total_appended = 0

    @property
    def content(self) -> str:
        return self._content

    def __len__(self) -> int:
        return len(self._content)

    def append(self, text: str) -> str:
        """Add text, returning the evicted prefix (may be empty)."""
        if len(text) > OVERSIZE_FACTOR * self.capacity:
            raise OversizeAppend(
                f"append of {len(text)} chars exceeds "
                f"{OVERSIZE_FACTOR}x capacity ({self.capacity})"
            )
        combined = self._content + text
        overflow = max(len(combined) - self.capacity, 0)
        evicted = combined[:overflow]
        self._content = combined[overflow:]
        self.total_appended += len(text)
        return evicted

    def context_window(self) -> str:
        """Current buffer content; read-only."""
        return self._content

    def restore(self, content: str, total_appended: int) -> None:
        """Reset to a recovered state (session restart path)."""
        if len(content) > self.capacity:
            raise ValueError("restored content exceeds capacity")
        self._content = content
        self.total_appended = total_appended
