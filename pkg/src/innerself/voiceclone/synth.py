"""Reference text-to-mel synthesizer.

Each character contributes a fixed number of frames whose spectral shape
is a sum of formant-like Gaussian bumps on the mel axis. Bump positions
derive from the character code; bump gains are modulated by embedding
components, so different voices produce measurably different mels for
the same text. Purely deterministic in (text, embedding).
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from innerself.errors import EmptyText
from innerself.voiceclone.encoder import VoiceProfile
from innerself.voiceclone.mel import POWER_FLOOR, MelParams, MelSpectrogram

if TYPE_CHECKING:
    from innerself.voiceclone.adapters import SynthesizerAdapter

FRAMES_PER_CHAR = 5

# base power of a formant bump; keeps vocoded output in a sane range
_BUMP_POWER = 400.0
_BUMP_WIDTHS = (2.5, 4.0, 7.0)


class ReferenceSynthesizer:
    """Formant-template synthesizer, 5 frames per character."""

    name = "reference"

    def __init__(self, params: MelParams | None = None):
        self.params = params or MelParams()

    def _char_power(self, char: str, embedding: np.ndarray) -> np.ndarray:
        code = ord(char)
        n_mels = self.params.n_mels
        bins = np.arange(n_mels, dtype=np.float64)
        power = np.zeros(n_mels)
        for i, width in enumerate(_BUMP_WIDTHS):
            center = (code * (7 + 6 * i) + 11 * i) % n_mels
            gain = 1.0 + 0.5 * float(embedding[(code + 37 * i) % len(embedding)])
            power += (gain**2) * np.exp(-0.5 * ((bins - center) / width) ** 2)
        return _BUMP_POWER * power

    def synthesize(
        self, text: str, embedding: np.ndarray, prosody=None
    ) -> MelSpectrogram:
        del prosody  # the reference chain applies prosody on the waveform
        if not text:
            raise EmptyText("cannot synthesize empty text")
        embedding = np.asarray(embedding, dtype=np.float64)
        # gentle attack/decay envelope across each character's frames
        envelope = 0.55 + 0.45 * np.sin(
            np.pi * (np.arange(FRAMES_PER_CHAR) + 0.5) / FRAMES_PER_CHAR
        )
        rows = []
        for char in text:
            column = self._char_power(char, embedding)
            rows.append(envelope[:, None] * column[None, :])
        power = np.vstack(rows)
        return MelSpectrogram(np.log(power + POWER_FLOOR), self.params)


def synthesize(
    text: str, profile: VoiceProfile, synth: "SynthesizerAdapter"
) -> MelSpectrogram:
    """Text plus voice profile to mel frames via the given adapter."""
    if not text:
        raise EmptyText("cannot synthesize empty text")
    return synth.synthesize(text, profile.embedding)
