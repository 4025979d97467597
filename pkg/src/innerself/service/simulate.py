"""Offline session simulation.

A script is a JSON-lines file. The first non-empty line may be a header
object carrying session settings and optional enrollment samples; every
other line is one user turn:

    {"session": {"user_name": "Ana"}, "enroll": [{"audio": "a.wav", "transcript": "..."}]}
    {"audio": "audio/anxious.wav", "transcript": "I CAN'T EVER ..."}

Audio paths resolve relative to the script file. Runs use the reference
adapters only, a fixed session id, turn-index timestamps, and zeroed
latencies, so two runs of the same script produce byte-identical output.
"""

from __future__ import annotations

import json
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from innerself.audio import AudioClip, read_wav
from innerself.errors import ScriptParseError
from innerself.service.config import ServiceConfig
from innerself.service.engine import TurnEngine, TurnOutcome
from innerself.storage import DEFAULT_ALPHA

DEFAULT_SESSION_ID = "sim"


@dataclass(frozen=True)
class ScriptTurn:
    line: int
    audio_path: Path
    transcript: str


@dataclass(frozen=True)
class SimScript:
    session_id: str = DEFAULT_SESSION_ID
    user_name: str = "Friend"
    alpha: int = DEFAULT_ALPHA
    enroll: tuple[tuple[Path, str], ...] = ()
    turns: tuple[ScriptTurn, ...] = ()


@dataclass
class SimulationResult:
    session_id: str
    data_dir: Path
    outcomes: list[TurnOutcome] = field(default_factory=list)

    @property
    def all_pass(self) -> bool:
        return all(
            all(outcome.constraint_report.values()) for outcome in self.outcomes
        )

    def to_jsonl(self) -> str:
        return "".join(
            json.dumps(
                outcome.to_dict(),
                sort_keys=True,
                separators=(",", ":"),
                ensure_ascii=False,
            )
            + "\n"
            for outcome in self.outcomes
        )


def _resolve_audio(base: Path, raw: str, line: int) -> Path:
    path = (base / raw).resolve() if not Path(raw).is_absolute() else Path(raw)
    if not path.is_file():
        raise ScriptParseError(f"missing fixture wav: {path}", line=line)
    return path


def load_script(path: str | Path) -> SimScript:
    """Parse and validate a simulation script.

    Every failure names the offending line number; a missing audio file
    names its resolved path as well.
    """
    script_path = Path(path)
    try:
        text = script_path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ScriptParseError(f"cannot read script: {exc}", line=0) from exc
    base = script_path.parent

    session_id = DEFAULT_SESSION_ID
    user_name = "Friend"
    alpha = DEFAULT_ALPHA
    enroll: list[tuple[Path, str]] = []
    turns: list[ScriptTurn] = []
    saw_any = False

    for line_no, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ScriptParseError(
                f"invalid JSON: {exc.msg}", line=line_no
            ) from exc
        if not isinstance(obj, dict):
            raise ScriptParseError("line must hold a JSON object", line=line_no)

        if "session" in obj or "enroll" in obj:
            if saw_any:
                raise ScriptParseError(
                    "header must be the first non-empty line", line=line_no
                )
            saw_any = True
            header = obj.get("session", {})
            if not isinstance(header, dict):
                raise ScriptParseError("session must be an object", line=line_no)
            session_id = str(header.get("session_id", session_id))
            user_name = str(header.get("user_name", user_name))
            alpha = int(header.get("alpha", alpha))
            for item in obj.get("enroll", []):
                if not isinstance(item, dict) or "audio" not in item:
                    raise ScriptParseError(
                        "enroll entries need an audio path", line=line_no
                    )
                enroll.append(
                    (
                        _resolve_audio(base, str(item["audio"]), line_no),
                        str(item.get("transcript", "")),
                    )
                )
            continue

        saw_any = True
        if "audio" not in obj:
            raise ScriptParseError("turn line needs an audio path", line=line_no)
        if "transcript" not in obj:
            raise ScriptParseError("turn line needs a transcript", line=line_no)
        turns.append(
            ScriptTurn(
                line=line_no,
                audio_path=_resolve_audio(base, str(obj["audio"]), line_no),
                transcript=str(obj["transcript"]),
            )
        )

    return SimScript(
        session_id=session_id,
        user_name=user_name,
        alpha=alpha,
        enroll=tuple(enroll),
        turns=tuple(turns),
    )


def run_simulation(
    script: SimScript | str | Path,
    data_dir: str | Path | None = None,
) -> SimulationResult:
    """Drive a scripted session through the full pipeline, offline.

    When no data_dir is given a fresh temporary directory is used; a
    given directory must not already contain the script's session.
    """
    if not isinstance(script, SimScript):
        script = load_script(script)
    if data_dir is None:
        data_dir = Path(tempfile.mkdtemp(prefix="innerself-sim-"))
    data_dir = Path(data_dir)

    config = ServiceConfig(data_dir=str(data_dir), alpha=script.alpha)
    engine = TurnEngine(config, simulate_mode=True)
    engine.create_session(
        user_name=script.user_name,
        session_id=script.session_id,
        alpha=script.alpha,
    )
    if script.enroll:
        pairs = [(read_wav(p), transcript) for p, transcript in script.enroll]
        engine.enroll_voice(script.session_id, pairs)

    result = SimulationResult(session_id=script.session_id, data_dir=data_dir)
    for turn in script.turns:
        clip: AudioClip = read_wav(turn.audio_path)
        outcome = engine.process_turn(
            script.session_id, clip, transcript_hint=turn.transcript
        )
        result.outcomes.append(outcome)
    return result
