"""Mel spectrogram computation.

Fixed pipeline configuration: 1024-point FFT, hop 256, 80 mel bands over
0-8000 Hz at 16 kHz. Framing is center-free (no padding), so a clip of N
samples yields T = 1 + floor((N - n_fft)/hop) frames. Entries are natural
log of filterbank power with a 1e-10 floor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from innerself.audio import AudioClip, ensure_rate
from innerself.errors import ClipTooShort, NonFiniteInput

POWER_FLOOR = 1e-10
LOG_FLOOR = math.log(POWER_FLOOR)


def hertz_to_mel(f):
    return 2595.0 * np.log10(1.0 + np.asarray(f, dtype=np.float64) / 700.0)


def mel_to_hertz(m):
    return 700.0 * (10.0 ** (np.asarray(m, dtype=np.float64) / 2595.0) - 1.0)


@dataclass(frozen=True)
class MelParams:
    n_fft: int = 1024
    hop: int = 256
    n_mels: int = 80
    f_min: float = 0.0
    f_max: float = 8000.0
    sample_rate: int = 16000

    def __post_init__(self):
        if self.n_fft <= 0 or self.hop <= 0 or self.n_mels <= 0:
            raise ValueError("n_fft, hop, n_mels must be positive")
        if not (0 <= self.f_min < self.f_max <= self.sample_rate / 2):
            raise ValueError("need 0 <= f_min < f_max <= Nyquist")

    @property
    def n_bins(self) -> int:
        return self.n_fft // 2 + 1

    def frame_count(self, n_samples: int) -> int:
        if n_samples < self.n_fft:
            return 0
        return 1 + (n_samples - self.n_fft) // self.hop

    def to_dict(self) -> dict:
        return {
            "n_fft": self.n_fft,
            "hop": self.hop,
            "n_mels": self.n_mels,
            "f_min": self.f_min,
            "f_max": self.f_max,
            "sample_rate": self.sample_rate,
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "MelParams":
        return cls(
            n_fft=int(payload["n_fft"]),
            hop=int(payload["hop"]),
            n_mels=int(payload["n_mels"]),
            f_min=float(payload["f_min"]),
            f_max=float(payload["f_max"]),
            sample_rate=int(payload["sample_rate"]),
        )


class MelFilterbank:
    """Triangular filters spaced uniformly on the mel scale, peak 1.0."""

    def __init__(self, params: MelParams):
        self.params = params
        mel_points = np.linspace(
            hertz_to_mel(params.f_min), hertz_to_mel(params.f_max), params.n_mels + 2
        )
        hz_points = mel_to_hertz(mel_points)
        bin_freqs = np.linspace(0.0, params.sample_rate / 2.0, params.n_bins)
        weights = np.zeros((params.n_mels, params.n_bins))
        for m in range(params.n_mels):
            left, center, right = hz_points[m : m + 3]
            rising = (bin_freqs - left) / (center - left)
            falling = (right - bin_freqs) / (right - center)
            weights[m] = np.clip(np.minimum(rising, falling), 0.0, None)
        self.weights = weights
        self.center_frequencies = hz_points[1:-1]
        self._check()

    def _check(self) -> None:
        if np.any(self.weights < 0):
            raise ValueError("filterbank has negative entries")
        empty = np.where(self.weights.max(axis=1) <= 0)[0]
        if len(empty):
            raise ValueError(f"filters with no positive entry: {empty.tolist()}")
        if np.any(np.diff(self.center_frequencies) <= 0):
            raise ValueError("filter peaks must increase strictly")

    def apply(self, power_spectrum: np.ndarray) -> np.ndarray:
        return power_spectrum @ self.weights.T


_FILTERBANKS: dict[MelParams, MelFilterbank] = {}


def get_filterbank(params: MelParams) -> MelFilterbank:
    bank = _FILTERBANKS.get(params)
    if bank is None:
        bank = MelFilterbank(params)
        _FILTERBANKS[params] = bank
    return bank


@dataclass(frozen=True)
class MelSpectrogram:
    """Log-power mel frames (T x n_mels) with their generation params."""

    frames: np.ndarray
    params: MelParams = field(default_factory=MelParams)

    def __post_init__(self):
        frames = np.asarray(self.frames, dtype=np.float64)
        object.__setattr__(self, "frames", frames)
        if frames.ndim != 2 or frames.shape[1] != self.params.n_mels:
            raise ValueError(
                f"mel frames must be T x {self.params.n_mels}, got {frames.shape}"
            )
        if not np.all(np.isfinite(frames)):
            raise NonFiniteInput("mel frames contain non-finite entries")
        if np.any(frames < LOG_FLOOR - 1e-9):
            raise ValueError("mel entries below the log floor")

    @property
    def n_frames(self) -> int:
        return self.frames.shape[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, MelSpectrogram):
            return NotImplemented
        return self.params == other.params and np.array_equal(
            self.frames, other.frames
        )


def compute_mel(clip: AudioClip, params: MelParams | None = None) -> MelSpectrogram:
    """Hann window, magnitude-squared FFT, mel filterbank, floored log."""
    if params is None:
        params = MelParams()
    clip = ensure_rate(clip, params.sample_rate)
    n = len(clip.samples)
    if n < params.n_fft:
        raise ClipTooShort(
            f"need at least {params.n_fft} samples at {params.sample_rate} Hz, "
            f"got {n}"
        )
    t_frames = params.frame_count(n)
    offsets = np.arange(t_frames) * params.hop
    idx = offsets[:, None] + np.arange(params.n_fft)[None, :]
    frames = clip.samples[idx] * np.hanning(params.n_fft)
    power = np.abs(np.fft.rfft(frames, axis=1)) ** 2
    mel_power = get_filterbank(params).apply(power)
    return MelSpectrogram(np.log(mel_power + POWER_FLOOR), params)
