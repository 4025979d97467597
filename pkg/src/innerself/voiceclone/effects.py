"""Prosody application on waveforms.

Stage order: pitch shift, then rate change, then gain. Each stage is
skipped entirely at its identity parameter, so identity prosody returns
the input clip object unchanged.

Pitch shifting is resample-then-stretch: resampling moves the pitch and
shortens/lengthens the clip, an overlap-add stretch restores the original
duration from unmodified snippets. This is a deliberately simple scheme;
transient smearing at large shifts is an accepted quality limitation.
"""

from __future__ import annotations

import numpy as np

from innerself.audio import AudioClip, resample_linear
from innerself.conversation.prosody import ProsodyParams

_OLA_WINDOW = 1024
_OLA_HOP = 256


def _ola_stretch(samples: np.ndarray, target_len: int) -> np.ndarray:
    """Time-stretch to target_len without changing pitch."""
    n = len(samples)
    if target_len == n:
        return samples.copy()
    if n <= _OLA_WINDOW or target_len <= _OLA_WINDOW:
        # too short for framed processing; plain resample is close enough
        return resample_linear(samples, target_len)
    window = np.hanning(_OLA_WINDOW)
    n_frames = (target_len - _OLA_WINDOW) // _OLA_HOP + 1
    max_start = n - _OLA_WINDOW
    out = np.zeros(target_len)
    weight = np.zeros(target_len)
    for i in range(n_frames):
        out_start = i * _OLA_HOP
        in_start = int(round(i * _OLA_HOP * max_start / max(target_len - _OLA_WINDOW, 1)))
        in_start = min(in_start, max_start)
        chunk = samples[in_start : in_start + _OLA_WINDOW]
        out[out_start : out_start + _OLA_WINDOW] += chunk * window
        weight[out_start : out_start + _OLA_WINDOW] += window
    filled = weight > 1e-8
    out[filled] /= weight[filled]
    # tail beyond the last full frame copies the source tail directly
    if not filled.all():
        remaining = np.where(~filled)[0]
        src_tail = samples[n - len(remaining) :]
        out[remaining] = src_tail
    return out


def apply_prosody(clip: AudioClip, prosody: ProsodyParams) -> AudioClip:
    """Pitch, rate, and gain adjustment per the prosody parameters."""
    samples = clip.samples
    changed = False

    if prosody.pitch_shift != 0.0:
        factor = 2.0 ** (prosody.pitch_shift / 12.0)
        shifted_len = max(int(round(len(samples) / factor)), 1)
        shifted = resample_linear(samples, shifted_len)
        samples = _ola_stretch(shifted, len(samples))
        changed = True

    if prosody.rate != 1.0:
        out_len = max(int(round(len(samples) / prosody.rate)), 1)
        samples = resample_linear(samples, out_len)
        changed = True

    if prosody.volume_gain != 0.0:
        samples = np.clip(samples * 10.0 ** (prosody.volume_gain / 20.0), -1.0, 1.0)
        changed = True

    if not changed:
        return clip
    return AudioClip(np.clip(samples, -1.0, 1.0), clip.sample_rate)
