"""HTTP adapters for the neural voice pipeline roles.

Wire contract (JSON over HTTP):
  /embed      multipart WAV files -> {"embeddings": [[256 floats], ...]}
  /synthesize {"text", "embedding", "prosody"} -> {"mel": base64, "dims": [T, M]}
  /vocode     {"mel": base64, "dims": [T, M]} -> WAV bytes
Mel payloads are float32, row-major.
"""

from __future__ import annotations

import base64
from typing import Protocol

import numpy as np

from innerself.adapters import post_json
from innerself.audio import AudioClip, read_wav_bytes, write_wav_bytes
from innerself.conversation.prosody import ProsodyParams
from innerself.errors import AdapterUnavailable, EmptyText
from innerself.voiceclone.mel import MelParams, MelSpectrogram


class SpeakerEncoderAdapter(Protocol):
    def embed(self, clips: list[AudioClip]) -> list[np.ndarray]: ...


class SynthesizerAdapter(Protocol):
    def synthesize(
        self, text: str, embedding: np.ndarray, prosody=None
    ) -> MelSpectrogram: ...


class VocoderAdapter(Protocol):
    def vocode(self, mel: MelSpectrogram) -> AudioClip: ...


def mel_to_wire(mel: MelSpectrogram) -> dict:
    data = mel.frames.astype(np.float32).tobytes(order="C")
    return {
        "mel": base64.b64encode(data).decode("ascii"),
        "dims": [mel.n_frames, mel.params.n_mels],
        "params": mel.params.to_dict(),
    }


def wire_to_mel(payload: dict, params: MelParams | None = None) -> MelSpectrogram:
    if params is None:
        params = (
            MelParams.from_dict(payload["params"])
            if "params" in payload
            else MelParams()
        )
    try:
        t_frames, n_mels = (int(v) for v in payload["dims"])
        raw = base64.b64decode(payload["mel"])
        frames = np.frombuffer(raw, dtype=np.float32).astype(np.float64)
        frames = frames.reshape(t_frames, n_mels)
    except (KeyError, TypeError, ValueError) as exc:
        raise AdapterUnavailable(f"malformed mel payload: {exc}") from exc
    return MelSpectrogram(frames, params)


class HttpSpeakerEncoder:
    def __init__(self, endpoint: str, name: str = "neural-encoder"):
        self.endpoint = endpoint
        self.name = name

    def embed(self, clips: list[AudioClip]) -> list[np.ndarray]:
        files = [
            ("samples", (f"sample_{i}.wav", write_wav_bytes(clip), "audio/wav"))
            for i, clip in enumerate(clips)
        ]
        response = post_json(self.endpoint, files=files)
        try:
            payload = response.json()
            raw = payload.get("embeddings")
            if raw is None:
                raw = [payload["embedding"]] * len(clips)
            return [np.asarray(vec, dtype=np.float64) for vec in raw]
        except (ValueError, KeyError, TypeError) as exc:
            raise AdapterUnavailable(
                f"malformed embedding payload from {self.endpoint}"
            ) from exc


class HttpSynthesizer:
    def __init__(self, endpoint: str, name: str = "neural-synth"):
        self.endpoint = endpoint
        self.name = name

    def synthesize(
        self, text: str, embedding: np.ndarray, prosody: ProsodyParams | None = None
    ) -> MelSpectrogram:
        if not text:
            raise EmptyText("cannot synthesize empty text")
        body = {
            "text": text,
            "embedding": [float(v) for v in np.asarray(embedding)],
            "prosody": prosody.to_dict() if prosody else None,
        }
        response = post_json(self.endpoint, json=body)
        try:
            return wire_to_mel(response.json())
        except (ValueError, TypeError) as exc:
            raise AdapterUnavailable(
                f"malformed mel payload from {self.endpoint}"
            ) from exc


class HttpVocoder:
    def __init__(self, endpoint: str, name: str = "neural-vocoder"):
        self.endpoint = endpoint
        self.name = name

    def vocode(self, mel: MelSpectrogram) -> AudioClip:
        response = post_json(self.endpoint, json=mel_to_wire(mel))
        try:
            return read_wav_bytes(response.content)
        except Exception as exc:
            raise AdapterUnavailable(
                f"malformed WAV payload from {self.endpoint}"
            ) from exc
