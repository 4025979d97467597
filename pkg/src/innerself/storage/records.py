"""Turn records, action plans, and session-level queries.

The turn log (turns.jsonl) is the source of truth for turn text and
ordering; chunks carry only evicted buffer bytes. Buffer recovery after
a restart replays the log with the same role prefixes the engine uses,
then re-flushes any evictions that never reached the chunk store.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import TYPE_CHECKING

from innerself.conversation.prosody import ProsodyParams
from innerself.emotion.classify import EmotionResult
from innerself.errors import TableFormatError
from innerself.storage.buffer import DEFAULT_ALPHA, DialogueBuffer

if TYPE_CHECKING:
    from innerself.storage.store import SessionStore

ROLES = ("user", "system")

EXPORT_SCHEMA = "innerself-export/1"


def buffer_line(role: str, text: str) -> str:
    """Exactly what a turn contributes to the dialogue buffer."""
    prefix = "U: " if role == "user" else "S: "
    return prefix + text + "\n"


@dataclass(frozen=True)
class TurnRecord:
    session_id: str
    turn_index: int
    role: str
    text: str
    timestamp: str
    emotion: EmotionResult | None = None
    strategy: tuple[str, int] | None = None
    prosody: ProsodyParams | None = None
    audio_ref: str | None = None

    def __post_init__(self):
        if self.role not in ROLES:
            raise ValueError(f"role must be one of {ROLES}")
        if self.turn_index < 0:
            raise ValueError("turn_index must be >= 0")
        if self.role == "user":
            if self.emotion is None:
                raise ValueError("user turns carry an emotion result")
            if self.strategy is not None or self.prosody is not None:
                raise ValueError("user turns carry no strategy/prosody")
        else:
            if self.strategy is None or self.prosody is None:
                raise ValueError("system turns carry strategy and prosody")
            if self.emotion is not None:
                raise ValueError("system turns carry no emotion result")

    def to_dict(self) -> dict:
        payload = {
            "session_id": self.session_id,
            "turn_index": self.turn_index,
            "role": self.role,
            "text": self.text,
            "timestamp": self.timestamp,
        }
        if self.audio_ref is not None:
            payload["audio_ref"] = self.audio_ref
        if self.role == "user":
            payload["emotion"] = self.emotion.to_dict()
        else:
            payload["strategy"] = {
                "id": self.strategy[0],
                "step": self.strategy[1],
            }
            payload["prosody"] = self.prosody.to_dict()
        return payload

    @classmethod
    def from_dict(cls, payload: dict) -> "TurnRecord":
        try:
            role = payload["role"]
            emotion = None
            strategy = None
            prosody = None
            if role == "user":
                emotion = EmotionResult.from_dict(payload["emotion"])
            else:
                strategy = (
                    payload["strategy"]["id"],
                    int(payload["strategy"]["step"]),
                )
                prosody = ProsodyParams.from_dict(payload["prosody"])
            return cls(
                session_id=payload["session_id"],
                turn_index=int(payload["turn_index"]),
                role=role,
                text=payload["text"],
                timestamp=payload["timestamp"],
                emotion=emotion,
                strategy=strategy,
                prosody=prosody,
                audio_ref=payload.get("audio_ref"),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise TableFormatError(f"bad turn record: {exc}") from exc


@dataclass(frozen=True)
class PlanStep:
    text: str
    done: bool = False


@dataclass(frozen=True)
class ActionPlan:
    """A small stepwise plan; completed exactly when every step is done."""

    session_id: str
    plan_id: str
    description: str
    steps: tuple[PlanStep, ...] = field(default_factory=tuple)
    status: str = "open"

    def __post_init__(self):
        if self.status not in ("open", "completed", "abandoned"):
            raise ValueError(f"bad plan status {self.status!r}")
        all_done = bool(self.steps) and all(s.done for s in self.steps)
        if self.status == "completed" and not all_done:
            raise ValueError("completed plan with undone steps")
        if self.status == "open" and all_done:
            raise ValueError("open plan with every step done")

    @property
    def is_open(self) -> bool:
        return self.status == "open"

    def mark_step(self, index: int) -> "ActionPlan":
        steps = list(self.steps)
        steps[index] = replace(steps[index], done=True)
        status = self.status
        if status == "open" and all(s.done for s in steps):
            status = "completed"
        return replace(self, steps=tuple(steps), status=status)

    def to_dict(self) -> dict:
        return {
            "session_id": self.session_id,
            "plan_id": self.plan_id,
            "description": self.description,
            "steps": [{"text": s.text, "done": s.done} for s in self.steps],
            "status": self.status,
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "ActionPlan":
        try:
            return cls(
                session_id=payload["session_id"],
                plan_id=payload["plan_id"],
                description=payload["description"],
                steps=tuple(
                    PlanStep(s["text"], bool(s["done"]))
                    for s in payload["steps"]
                ),
                status=payload["status"],
            )
        except (KeyError, TypeError) as exc:
            raise TableFormatError(f"bad action plan: {exc}") from exc


def read_turns(session_id: str, store: "SessionStore") -> list[TurnRecord]:
    records = [
        TurnRecord.from_dict(d) for d in store.read_turn_dicts(session_id)
    ]
    records.sort(key=lambda r: r.turn_index)
    return records


def reconstruct_transcript(session_id: str, store: "SessionStore") -> str:
    """Chunk text plus the recovered buffer suffix.

    Equals the concatenation of everything ever appended for the session,
    provided all evictions were flushed. Chunk checksums are verified.
    """
    payloads = store.read_chunk_payloads(session_id)
    chunk_text = b"".join(p for _, p in payloads).decode("utf-8")
    _, content, _ = _replay_buffer_state(session_id, store)
    return chunk_text + content


def _replay_buffer_state(
    session_id: str, store: "SessionStore"
) -> tuple[str, str, int]:
    """(expected evicted prefix, buffer content, total appended chars)."""
    meta = store.load_session(session_id)
    alpha = int(meta.get("alpha", DEFAULT_ALPHA))
    full = "".join(
        buffer_line(d["role"], d["text"])
        for d in store.read_turn_dicts(session_id)
    )
    cut = max(len(full) - alpha, 0)
    return full[:cut], full[cut:], len(full)


def recover_buffer(
    session_id: str, store: "SessionStore"
) -> tuple[DialogueBuffer, str]:
    """Rebuild the live buffer from the turn log.

    Returns the buffer and any evicted text missing from the chunk store
    (flushes that never landed before shutdown); the caller is expected
    to flush it.
    """
    meta = store.load_session(session_id)
    alpha = int(meta.get("alpha", DEFAULT_ALPHA))
    expected_evicted, content, total = _replay_buffer_state(session_id, store)
    payloads = store.read_chunk_payloads(session_id)
    chunk_text = b"".join(p for _, p in payloads).decode("utf-8")
    if not expected_evicted.startswith(chunk_text):
        raise TableFormatError(
            f"chunk store diverges from turn log for session {session_id}"
        )
    missing = expected_evicted[len(chunk_text):]
    buffer = DialogueBuffer(alpha)
    buffer.restore(content, total)
    return buffer, missing


def emotion_trajectory(
    session_id: str, store: "SessionStore"
) -> list[tuple[str, EmotionResult]]:
    """(timestamp, emotion) per user turn, in turn order."""
    return [
        (r.timestamp, r.emotion)
        for r in read_turns(session_id, store)
        if r.role == "user"
    ]


def export_session(
    session_id: str, store: "SessionStore", include_audio: bool = False
) -> dict:
    """Single-document JSON export of a session."""
    meta = store.load_session(session_id)
    turns = []
    for record in read_turns(session_id, store):
        payload = record.to_dict()
        if not include_audio:
            payload.pop("audio_ref", None)
        turns.append(payload)
    trajectory = [
        {"timestamp": ts, "emotion": emo.to_dict()}
        for ts, emo in emotion_trajectory(session_id, store)
    ]
    return {
        "schema": EXPORT_SCHEMA,
        "session": meta,
        "turns": turns,
        "trajectory": trajectory,
        "plans": store.load_plans(session_id),
    }


def import_session(
    document: dict, store: "SessionStore", session_id: str | None = None
) -> str:
    """Replay an export document into the store. Returns the session id."""
    if document.get("schema") != EXPORT_SCHEMA:
        raise TableFormatError(
            f"unsupported export schema {document.get('schema')!r}"
        )
    meta = dict(document.get("session") or {})
    sid = session_id or meta.get("session_id")
    if not sid:
        raise TableFormatError("export document carries no session id")
    if store.session_exists(sid):
        raise ValueError(f"session {sid!r} already exists")
    meta["session_id"] = sid
    store.create_session(sid, meta)
    from innerself.storage.chunks import EvictionFlusher

    alpha = int(meta.get("alpha", DEFAULT_ALPHA))
    buffer = DialogueBuffer(alpha)
    flusher = EvictionFlusher(store.chunk_sink(sid))
    for payload in document.get("turns", []):
        record = TurnRecord.from_dict(dict(payload, session_id=sid))
        store.append_turn(sid, record.to_dict())
        evicted = buffer.append(buffer_line(record.role, record.text))
        if evicted:
            flusher.flush([evicted])
    store.save_plans(sid, document.get("plans", []))
    return sid
