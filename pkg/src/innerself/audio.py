"""Mono PCM audio clips and WAV I/O.

Canonical audio form throughout the package: 16 kHz, mono, PCM16 on disk,
float samples in [-1, 1] in memory. Everything ingested through
:func:`read_wav` / :func:`ensure_rate` ends up in that form.
"""

from __future__ import annotations

import hashlib
import io
import struct
import wave
from dataclasses import dataclass, field

import numpy as np

CANONICAL_RATE = 16000


@dataclass(frozen=True)
class AudioClip:
    """Mono audio signal with its sample rate.

    Samples are float64 in [-1, 1]; channel count is fixed at one.
    """

    samples: np.ndarray
    sample_rate: int = CANONICAL_RATE

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=np.float64)
        if samples.ndim != 1:
            raise ValueError("AudioClip requires a 1-D (mono) sample array")
        if self.sample_rate <= 0:
            raise ValueError("sample_rate must be positive")
        peak = float(np.max(np.abs(samples))) if samples.size else 0.0
        if peak > 1.0 + 1e-9:
            raise ValueError(f"samples exceed [-1, 1] (peak {peak:.6f})")
        object.__setattr__(self, "samples", samples)

    @property
    def duration_seconds(self) -> float:
        return len(self.samples) / self.sample_rate

    @property
    def peak(self) -> float:
        return float(np.max(np.abs(self.samples))) if len(self.samples) else 0.0

    def fingerprint(self) -> str:
        """Content hash over the PCM16 encoding, stable across WAV round-trips."""
        h = hashlib.sha256()
        h.update(struct.pack("<I", self.sample_rate))
        h.update(to_pcm16(self.samples).tobytes())
        return h.hexdigest()


def to_pcm16(samples: np.ndarray) -> np.ndarray:
    clipped = np.clip(np.asarray(samples, dtype=np.float64), -1.0, 1.0)
    return np.round(clipped * 32767.0).astype("<i2")


def from_pcm16(raw: np.ndarray) -> np.ndarray:
    return np.asarray(raw, dtype=np.float64) / 32767.0


def write_wav_bytes(clip: AudioClip) -> bytes:
    buf = io.BytesIO()
    with wave.open(buf, "wb") as w:
        w.setnchannels(1)
        w.setsampwidth(2)
        w.setframerate(clip.sample_rate)
        w.writeframes(to_pcm16(clip.samples).tobytes())
    return buf.getvalue()


def read_wav_bytes(data: bytes) -> AudioClip:
    try:
        parsed = wave.open(io.BytesIO(data), "rb")
    except (wave.Error, EOFError) as exc:
        # wave raises EOFError on truncated/empty input, wave.Error on bad RIFF
        raise ValueError("not a RIFF/WAV clip") from exc
    with parsed as w:
        if w.getsampwidth() != 2:
            raise ValueError("only 16-bit PCM WAV is supported")
        n = w.getnframes()
        frames = np.frombuffer(w.readframes(n), dtype="<i2")
        channels = w.getnchannels()
        rate = w.getframerate()
    if channels > 1:
        frames = frames.reshape(-1, channels).mean(axis=1)
    return AudioClip(from_pcm16(frames), rate)


def write_wav(path, clip: AudioClip) -> None:
    with open(path, "wb") as f:
        f.write(write_wav_bytes(clip))


def read_wav(path) -> AudioClip:
    with open(path, "rb") as f:
        return read_wav_bytes(f.read())


def resample_linear(samples: np.ndarray, out_len: int) -> np.ndarray:
    """Resample to ``out_len`` samples by linear interpolation."""
    samples = np.asarray(samples, dtype=np.float64)
    if out_len <= 0:
        return np.zeros(0)
    if len(samples) == 0:
        return np.zeros(out_len)
    if out_len == len(samples):
        return samples.copy()
    positions = np.arange(out_len) * (len(samples) - 1) / max(out_len - 1, 1)
    return np.interp(positions, np.arange(len(samples)), samples)


def ensure_rate(clip: AudioClip, rate: int = CANONICAL_RATE) -> AudioClip:
    """Return the clip at the requested rate, resampling on mismatch."""
    if clip.sample_rate == rate:
        return clip
    out_len = int(round(len(clip.samples) * rate / clip.sample_rate))
    return AudioClip(np.clip(resample_linear(clip.samples, out_len), -1.0, 1.0), rate)
