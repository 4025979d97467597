"""Filesystem session store.

Default backend for the "external database": one directory per session
holding a JSON-lines turn log, numbered chunk files, the voice profile,
action plans, and content-addressed audio. Every write is durable
(write-to-temp, fsync, atomic rename) before it is acknowledged.

The store exposes an explicit offline switch so outage behavior (pending
eviction queues, retry paths) is testable without faulting the OS.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import re
from pathlib import Path

from innerself.audio import AudioClip, read_wav_bytes, write_wav_bytes
from innerself.errors import (
    ChunkMissing,
    StoreUnavailable,
    TableFormatError,
    UnknownSession,
)
from innerself.storage.chunks import decode_chunk, encode_chunk

logger = logging.getLogger(__name__)

_SESSION_ID_RE = re.compile(r"^[A-Za-z0-9][A-Za-z0-9_-]{0,63}$")
_AUDIO_REF_RE = re.compile(r"^[0-9a-f]{64}\.wav$")


def atomic_write_bytes(path: Path, data: bytes) -> None:
    """Write-to-temp, fsync, rename; the file is durable on return."""
    tmp = path.with_name(path.name + f".tmp.{os.getpid()}")
    with open(tmp, "wb") as fh:
        fh.write(data)
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(tmp, path)
    _fsync_dir(path.parent)


def _fsync_dir(directory: Path) -> None:
    fd = os.open(directory, os.O_RDONLY)
    try:
        os.fsync(fd)
    finally:
        os.close(fd)


def check_session_id(session_id: str) -> str:
    if not _SESSION_ID_RE.match(session_id):
        raise ValueError(f"invalid session id {session_id!r}")
    return session_id


class SessionStore:
    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self.offline = False
        self._next_seq: dict[str, int] = {}

    # -- plumbing ------------------------------------------------------

    def _session_dir(self, session_id: str) -> Path:
        return self.root / check_session_id(session_id)

    def _require_session(self, session_id: str) -> Path:
        path = self._session_dir(session_id)
        if not (path / "session.json").exists():
            raise UnknownSession(f"no session {session_id!r}")
        return path

    def _check_online(self) -> None:
        if self.offline:
            raise StoreUnavailable("store is offline")

    def set_offline(self, offline: bool) -> None:
        self.offline = offline

    # -- sessions ------------------------------------------------------

    def create_session(self, session_id: str, metadata: dict) -> None:
        self._check_online()
        path = self._session_dir(session_id)
        try:
            path.mkdir(parents=True, exist_ok=True)
            (path / "chunks").mkdir(exist_ok=True)
            (path / "audio").mkdir(exist_ok=True)
            payload = dict(metadata, session_id=session_id)
            atomic_write_bytes(
                path / "session.json",
                json.dumps(payload, sort_keys=True).encode("utf-8"),
            )
        except OSError as exc:
            raise StoreUnavailable(f"cannot create session: {exc}") from exc

    def session_exists(self, session_id: str) -> bool:
        try:
            return (self._session_dir(session_id) / "session.json").exists()
        except ValueError:
            return False

    def load_session(self, session_id: str) -> dict:
        path = self._require_session(session_id) / "session.json"
        return json.loads(path.read_text(encoding="utf-8"))

    def list_sessions(self) -> list[str]:
        if not self.root.exists():
            return []
        return sorted(
            p.name
            for p in self.root.iterdir()
            if p.is_dir() and (p / "session.json").exists()
        )

    # -- turn log ------------------------------------------------------

    def append_turn(self, session_id: str, record: dict) -> None:
        self._check_online()
        path = self._require_session(session_id) / "turns.jsonl"
        line = json.dumps(record, sort_keys=True, ensure_ascii=False) + "\n"
        try:
            with open(path, "ab") as fh:
                fh.write(line.encode("utf-8"))
                fh.flush()
                os.fsync(fh.fileno())
        except OSError as exc:
            raise StoreUnavailable(f"cannot append turn: {exc}") from exc

    def read_turn_dicts(self, session_id: str) -> list[dict]:
        path = self._require_session(session_id) / "turns.jsonl"
        if not path.exists():
            return []
        records = []
        for i, line in enumerate(
            path.read_text(encoding="utf-8").splitlines()
        ):
            if not line.strip():
                continue
            try:
                records.append(json.loads(line))
            except ValueError as exc:
                raise TableFormatError(
                    f"corrupt turn log line {i} in {session_id}: {exc}"
                ) from exc
        return records

    # -- chunks --------------------------------------------------------

    def _chunk_dir(self, session_id: str) -> Path:
        return self._require_session(session_id) / "chunks"

    def _scan_next_seq(self, session_id: str) -> int:
        chunk_dir = self._chunk_dir(session_id)
        seqs = [
            int(p.stem)
            for p in chunk_dir.glob("*.chunk")
            if p.stem.isdigit()
        ]
        return max(seqs) + 1 if seqs else 0

    def write_chunk(self, session_id: str, payload: bytes) -> int:
        self._check_online()
        if session_id not in self._next_seq:
            self._next_seq[session_id] = self._scan_next_seq(session_id)
        seq = self._next_seq[session_id]
        chunk_dir = self._chunk_dir(session_id)
        try:
            chunk_dir.mkdir(exist_ok=True)
            atomic_write_bytes(chunk_dir / f"{seq}.chunk", encode_chunk(payload))
        except OSError as exc:
            raise StoreUnavailable(f"cannot write chunk: {exc}") from exc
        self._next_seq[session_id] = seq + 1
        return seq

    def chunk_sink(self, session_id: str):
        """Bind write_chunk to one session for the eviction flusher."""
        store = self

        class _Sink:
            def write_chunk(self, payload: bytes) -> int:
                return store.write_chunk(session_id, payload)

        return _Sink()

    def read_chunk_payloads(self, session_id: str) -> list[tuple[int, bytes]]:
        """All chunks, sequence-verified (contiguous from 0) and CRC-checked."""
        chunk_dir = self._chunk_dir(session_id)
        if not chunk_dir.exists():
            return []
        seqs = sorted(
            int(p.stem) for p in chunk_dir.glob("*.chunk") if p.stem.isdigit()
        )
        payloads = []
        for expected, seq in enumerate(seqs):
            if seq != expected:
                raise ChunkMissing(expected)
            blob = (chunk_dir / f"{seq}.chunk").read_bytes()
            payloads.append((seq, decode_chunk(blob, seq)))
        return payloads

    # -- profile, plans, audio ----------------------------------------

    def save_profile(self, session_id: str, profile_dict: dict) -> None:
        self._check_online()
        path = self._require_session(session_id) / "profile.json"
        try:
            atomic_write_bytes(
                path, json.dumps(profile_dict, sort_keys=True).encode("utf-8")
            )
        except OSError as exc:
            raise StoreUnavailable(f"cannot save profile: {exc}") from exc

    def load_profile(self, session_id: str) -> dict | None:
        path = self._require_session(session_id) / "profile.json"
        if not path.exists():
            return None
        return json.loads(path.read_text(encoding="utf-8"))

    def save_plans(self, session_id: str, plans: list[dict]) -> None:
        self._check_online()
        path = self._require_session(session_id) / "plans.json"
        try:
            atomic_write_bytes(
                path,
                json.dumps(plans, sort_keys=True, ensure_ascii=False).encode(
                    "utf-8"
                ),
            )
        except OSError as exc:
            raise StoreUnavailable(f"cannot save plans: {exc}") from exc

    def load_plans(self, session_id: str) -> list[dict]:
        path = self._require_session(session_id) / "plans.json"
        if not path.exists():
            return []
        return json.loads(path.read_text(encoding="utf-8"))

    def save_audio(self, session_id: str, clip: AudioClip) -> str:
        """Content-addressed WAV; returns the reference file name."""
        self._check_online()
        wav = write_wav_bytes(clip)
        ref = hashlib.sha256(wav).hexdigest() + ".wav"
        path = self._require_session(session_id) / "audio" / ref
        try:
            path.parent.mkdir(exist_ok=True)
            if not path.exists():
                atomic_write_bytes(path, wav)
        except OSError as exc:
            raise StoreUnavailable(f"cannot save audio: {exc}") from exc
        return ref

    def load_audio(self, session_id: str, ref: str) -> AudioClip:
        if not _AUDIO_REF_RE.match(ref):
            raise ValueError(f"invalid audio ref {ref!r}")
        path = self._require_session(session_id) / "audio" / ref
        if not path.exists():
            raise FileNotFoundError(f"no audio {ref} in session {session_id}")
        return read_wav_bytes(path.read_bytes())

    def audio_path(self, session_id: str, ref: str) -> Path:
        if not _AUDIO_REF_RE.match(ref):
            raise ValueError(f"invalid audio ref {ref!r}")
        return self._require_session(session_id) / "audio" / ref
