"""Emotion-conditioned prosody targets.

Targets are a small shipped table; the applied parameters are a linear
blend between the neutral point and the dominant label's target, scaled
by classifier confidence, then clamped to the legal intervals.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from innerself.emotion.classify import LABELS, EmotionLabel, EmotionResult
from innerself.errors import TableFormatError
from innerself.lexicons import data_path

PITCH_RANGE = (-4.0, 4.0)
GAIN_RANGE = (-6.0, 6.0)
RATE_RANGE = (0.8, 1.2)


@dataclass(frozen=True)
class ProsodyParams:
    """Pitch shift (semitones), volume gain (dB), rate multiplier."""

    pitch_shift: float = 0.0
    volume_gain: float = 0.0
    rate: float = 1.0

    def __post_init__(self):
        for name, value, (lo, hi) in (
            ("pitch_shift", self.pitch_shift, PITCH_RANGE),
            ("volume_gain", self.volume_gain, GAIN_RANGE),
            ("rate", self.rate, RATE_RANGE),
        ):
            if not (lo <= value <= hi):
                raise ValueError(f"{name}={value} outside [{lo}, {hi}]")

    def to_dict(self) -> dict:
        return {
            "pitch_shift": self.pitch_shift,
            "volume_gain": self.volume_gain,
            "rate": self.rate,
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "ProsodyParams":
        return cls(
            pitch_shift=float(payload["pitch_shift"]),
            volume_gain=float(payload["volume_gain"]),
            rate=float(payload["rate"]),
        )


NEUTRAL_PROSODY = ProsodyParams(0.0, 0.0, 1.0)


@dataclass(frozen=True)
class ProsodyTable:
    """Per-label (pitch, gain, rate) targets."""

    targets: dict[EmotionLabel, tuple[float, float, float]]

    def __post_init__(self):
        missing = [label.value for label in LABELS if label not in self.targets]
        if missing:
            raise TableFormatError(f"prosody table missing labels: {missing}")
        for label, triple in self.targets.items():
            # targets must themselves be legal params
            ProsodyParams(*triple)
        neutral = self.targets[EmotionLabel.NEUTRAL]
        if neutral != (0.0, 0.0, 1.0):
            raise TableFormatError("neutral prosody target must be (0, 0, 1.0)")

    @classmethod
    def load(cls, path: str | Path) -> "ProsodyTable":
        try:
            raw = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            raise TableFormatError(f"cannot read prosody table: {exc}") from exc
        if not isinstance(raw, dict):
            raise TableFormatError("prosody table must be a JSON object")
        targets = {}
        for key, triple in raw.items():
            try:
                label = EmotionLabel(key)
            except ValueError as exc:
                raise TableFormatError(f"unknown prosody label {key!r}") from exc
            if not (isinstance(triple, list) and len(triple) == 3):
                raise TableFormatError(
                    f"prosody entry for {key!r} must be [pitch, gain, rate]"
                )
            targets[label] = tuple(float(v) for v in triple)
        return cls(targets)


_DEFAULT_TABLE: ProsodyTable | None = None


def default_prosody_table() -> ProsodyTable:
    global _DEFAULT_TABLE
    if _DEFAULT_TABLE is None:
        _DEFAULT_TABLE = ProsodyTable.load(data_path("prosody.json"))
    return _DEFAULT_TABLE


def _clamp(value: float, lo: float, hi: float) -> float:
    return min(max(value, lo), hi)


def prosody_for_emotion(
    emotion: EmotionResult, table: ProsodyTable | None = None
) -> ProsodyParams:
    """Blend neutral → dominant-label target by confidence, then clamp."""
    if table is None:
        table = default_prosody_table()
    if emotion.dominant is EmotionLabel.NEUTRAL:
        return NEUTRAL_PROSODY
    c = emotion.confidence
    pitch_t, gain_t, rate_t = table.targets[emotion.dominant]
    return ProsodyParams(
        pitch_shift=_clamp(c * pitch_t, *PITCH_RANGE),
        volume_gain=_clamp(c * gain_t, *GAIN_RANGE),
        rate=_clamp(1.0 + c * (rate_t - 1.0), *RATE_RANGE),
    )
