"""Reference mel-to-waveform vocoder.

A sinusoid bank at the mel filter center frequencies, with per-frame
amplitudes exp(mel)/n_fft interpolated across frame centers (triangular
overlap-add of constant segments) and a single continuous phase per
band. Output length is exactly T x hop samples; a peak limiter rescales
only when the raw bank exceeds 0.9, so silent mels stay silent.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from innerself.audio import AudioClip
from innerself.voiceclone.mel import MelSpectrogram, get_filterbank

if TYPE_CHECKING:
    from innerself.voiceclone.adapters import VocoderAdapter

PEAK_LIMIT = 0.9


class ReferenceVocoder:
    """Deterministic sinusoid-bank vocoder."""

    name = "reference"

    def vocode(self, mel: MelSpectrogram) -> AudioClip:
        params = mel.params
        t_frames = mel.n_frames
        n_out = t_frames * params.hop
        centers = get_filterbank(params).center_frequencies
        amplitudes = np.exp(mel.frames) / params.n_fft  # T x M
        sample_pos = np.arange(n_out, dtype=np.float64)
        frame_centers = (np.arange(t_frames) + 0.5) * params.hop
        signal = np.zeros(n_out)
        time = sample_pos / params.sample_rate
        for m, freq in enumerate(centers):
            envelope = np.interp(sample_pos, frame_centers, amplitudes[:, m])
            signal += envelope * np.sin(2.0 * np.pi * freq * time)
        peak = float(np.max(np.abs(signal))) if n_out else 0.0
        if peak > PEAK_LIMIT:
            signal *= PEAK_LIMIT / peak
        return AudioClip(signal, params.sample_rate)


def vocode(mel: MelSpectrogram, vocoder: "VocoderAdapter") -> AudioClip:
    """Mel frames to waveform via the given adapter."""
    return vocoder.vocode(mel)
