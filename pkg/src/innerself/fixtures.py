"""Deterministic speech-like audio fixtures.

Synthetic harmonic signals with per-label pitch, tempo, brightness, and
level settings, paired with fixed transcripts. Used to calibrate the
shipped classifier head, to build the demo session, and throughout the
test suite. Everything is seeded; identical arguments give identical
samples.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from innerself.audio import CANONICAL_RATE, AudioClip
from innerself.emotion.classify import EmotionLabel

N_HARMONICS = 8


@dataclass(frozen=True)
class VoiceStyle:
    f0: float
    f0_wobble: float
    syllable_rate: float
    brightness: float
    level: float


LABEL_STYLES: dict[EmotionLabel, VoiceStyle] = {
    EmotionLabel.ANXIETY: VoiceStyle(220.0, 0.08, 5.8, 0.55, 0.30),
    EmotionLabel.SADNESS: VoiceStyle(90.0, 0.01, 1.4, 0.08, 0.13),
    EmotionLabel.SHAME_REGRET: VoiceStyle(130.0, 0.02, 2.4, 0.22, 0.20),
    EmotionLabel.ANGER: VoiceStyle(185.0, 0.04, 4.6, 0.85, 0.55),
    EmotionLabel.NEUTRAL: VoiceStyle(160.0, 0.0, 3.2, 0.35, 0.24),
}

LABEL_TRANSCRIPTS: dict[EmotionLabel, str] = {
    EmotionLabel.ANXIETY: (
        "I CAN'T EVER get things done on time. I'll NEVER be good at this."
    ),
    EmotionLabel.SADNESS: (
        "I feel so sad and alone lately, hopeless and lost, like I misplaced my hope."
    ),
    EmotionLabel.SHAME_REGRET: (
        "I am so ashamed and guilty about the mistake I made, why was I so stupid?"
    ),
    EmotionLabel.ANGER: (
        "I am so angry about this mess, I hate how wrong it all went!"
    ),
    EmotionLabel.NEUTRAL: (
        "The schedule for today looks ordinary, with a walk planned after lunch."
    ),
}

# A diffuse negative state: in-between acoustics, mixed negative wording,
# no absolute terms. Calibrated to classify below the 0.5 confidence gate
# with most of the mass on negative categories.
MIXED_STYLE = VoiceStyle(138.0, 0.05, 3.4, 0.42, 0.34)
MIXED_TRANSCRIPT = (
    "I feel worried and sad and angry about this mess, it makes my chest hurt."
)

ENROLLMENT_SENTENCES = (
    "My own voice can be a steady companion when the day gets loud.",
    "I am reading this sentence calmly so my voice can be learned well.",
    "A short walk, a glass of water, and a pause can reset my afternoon.",
)


def synth_voice(
    style: VoiceStyle,
    seed: int,
    duration_s: float = 2.4,
    sample_rate: int = CANONICAL_RATE,
) -> AudioClip:
    """Harmonic stack with a syllable envelope; deterministic per seed."""
    rng = np.random.default_rng(seed)
    n = int(round(duration_s * sample_rate))
    t = np.arange(n) / sample_rate
    wobble_phase = rng.uniform(0, 2 * np.pi)
    f0 = style.f0 * (
        1.0 + style.f0_wobble * np.sin(2 * np.pi * 1.9 * t + wobble_phase)
    )
    phase = 2.0 * np.pi * np.cumsum(f0) / sample_rate
    signal = np.zeros(n)
    for k in range(1, N_HARMONICS + 1):
        weight = style.brightness ** (k - 1)
        signal += weight * np.sin(k * phase + rng.uniform(0, 2 * np.pi))
    envelope_phase = rng.uniform(0, 2 * np.pi)
    envelope = 0.15 + 0.85 * np.abs(
        np.sin(np.pi * style.syllable_rate * t + envelope_phase)
    )
    signal *= envelope
    signal += 0.002 * rng.standard_normal(n)
    peak = np.max(np.abs(signal))
    if peak > 0:
        signal *= style.level / peak
    return AudioClip(signal, sample_rate)


def fixture_clip(
    label: EmotionLabel, seed: int = 0, duration_s: float = 2.4
) -> AudioClip:
    return synth_voice(LABEL_STYLES[label], seed, duration_s)


def fixture_transcript(label: EmotionLabel) -> str:
    return LABEL_TRANSCRIPTS[label]


def mixed_clip(seed: int = 0, duration_s: float = 2.4) -> AudioClip:
    return synth_voice(MIXED_STYLE, seed, duration_s)


def enrollment_fixture(index: int, seed: int = 500) -> tuple[AudioClip, str]:
    """A clip/transcript pair that passes enrollment validation."""
    sentence = ENROLLMENT_SENTENCES[index % len(ENROLLMENT_SENTENCES)]
    words = len(sentence.split())
    # aim near the expected words x 0.4 s so the consistency gate passes
    duration = max(words * 0.4, 1.2)
    clip = synth_voice(
        LABEL_STYLES[EmotionLabel.NEUTRAL], seed + index, duration
    )
    return clip, sentence


def calibration_set(
    seeds: range = range(8),
) -> list[tuple[EmotionLabel, AudioClip, str]]:
    """Labeled (clip, transcript) pairs for fitting the classifier head."""
    dataset = []
    for label in EmotionLabel:
        for seed in seeds:
            dataset.append(
                (label, fixture_clip(label, seed), LABEL_TRANSCRIPTS[label])
            )
    return dataset
