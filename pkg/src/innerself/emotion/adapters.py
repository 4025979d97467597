"""Speech-to-text and acoustic-feature adapter boundary.

The mock speech-to-text adapter keys transcripts off clip fingerprints:
fixture clips register their text once and any later identical clip
transcribes to it verbatim. The HTTP adapters speak the shared wire
contract and surface outages as AdapterUnavailable.
"""

from __future__ import annotations

import logging
from typing import Protocol

import numpy as np

from innerself.adapters import post_json
from innerself.audio import AudioClip, write_wav_bytes
from innerself.emotion.classify import FeatureVector
from innerself.emotion.features import (
    AUDIO_FEATURE_NAMES,
    SILENCE_PEAK,
    extract_audio_features,
)
from innerself.errors import AdapterUnavailable, EmptyTranscript, TableFormatError

logger = logging.getLogger(__name__)


class SpeechToTextAdapter(Protocol):
    def transcribe(self, clip: AudioClip) -> str: ...


class AudioFeatureAdapter(Protocol):
    @property
    def feature_dim(self) -> int: ...

    def extract(self, clip: AudioClip) -> FeatureVector: ...


class MockSpeechToText:
    """Echoes the transcript registered for a clip's fingerprint."""

    def __init__(self):
        self._transcripts: dict[str, str] = {}

    def register(self, clip: AudioClip, transcript: str) -> None:
        self._transcripts[clip.fingerprint()] = transcript

    def transcribe(self, clip: AudioClip) -> str:
        text = self._transcripts.get(clip.fingerprint())
        if text is None or not text.strip():
            raise EmptyTranscript("no transcript registered for this clip")
        return text


class HttpSpeechToText:
    """POSTs the clip as WAV to a remote recognizer."""

    def __init__(self, endpoint: str):
        self.endpoint = endpoint

    def transcribe(self, clip: AudioClip) -> str:
        response = post_json(
            self.endpoint,
            files=[("audio", ("clip.wav", write_wav_bytes(clip), "audio/wav"))],
        )
        try:
            text = response.json()["transcript"]
        except (ValueError, KeyError) as exc:
            raise AdapterUnavailable(
                f"malformed transcript payload from {self.endpoint}"
            ) from exc
        if not isinstance(text, str):
            raise AdapterUnavailable(
                f"non-string transcript from {self.endpoint}"
            )
        return text


def transcribe(clip: AudioClip, stt: SpeechToTextAdapter) -> str:
    """Turn a clip into text via the given adapter.

    Silent clips short-circuit to EmptyTranscript without an adapter call.
    """
    if clip.peak < SILENCE_PEAK:
        raise EmptyTranscript("clip is silent")
    text = stt.transcribe(clip)
    if not text.strip():
        raise EmptyTranscript("adapter produced an empty transcript")
    return text


class ReferenceAudioFeatures:
    """Deterministic signal-processing extractor, D_a = 8."""

    name = "reference"
    feature_dim = len(AUDIO_FEATURE_NAMES)

    def extract(self, clip: AudioClip) -> FeatureVector:
        return extract_audio_features(clip)

    def descriptor(self) -> dict:
        return {
            "name": self.name,
            "feature_dim": self.feature_dim,
            "endpoint": None,
        }


class HttpAudioFeatures:
    """Remote neural extractor; dimension comes from its descriptor."""

    def __init__(self, endpoint: str, name: str = "neural", feature_dim: int = 8):
        if feature_dim < 1:
            raise TableFormatError("adapter feature_dim must be positive")
        self.endpoint = endpoint
        self.name = name
        self.feature_dim = feature_dim

    @classmethod
    def from_descriptor(cls, descriptor: dict) -> "HttpAudioFeatures":
        try:
            return cls(
                endpoint=descriptor["endpoint"],
                name=descriptor["name"],
                feature_dim=int(descriptor["feature_dim"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise TableFormatError(f"bad adapter descriptor: {exc}") from exc

    def descriptor(self) -> dict:
        return {
            "name": self.name,
            "feature_dim": self.feature_dim,
            "endpoint": self.endpoint,
        }

    def extract(self, clip: AudioClip) -> FeatureVector:
        response = post_json(
            self.endpoint,
            files=[("audio", ("clip.wav", write_wav_bytes(clip), "audio/wav"))],
        )
        try:
            values = np.asarray(response.json()["features"], dtype=np.float64)
        except (ValueError, KeyError, TypeError) as exc:
            raise AdapterUnavailable(
                f"malformed feature payload from {self.endpoint}"
            ) from exc
        if values.ndim != 1 or len(values) != self.feature_dim:
            raise AdapterUnavailable(
                f"adapter returned {values.shape} features, "
                f"descriptor promised {self.feature_dim}"
            )
        return FeatureVector(values, "audio")
