"""Reference acoustic and semantic feature extractors.

The acoustic extractor works on non-overlapping 25 ms frames so that
repeating a frame-aligned stationary signal repeats the frame statistics
exactly. Amplitude information only enters the RMS features; zero-crossing
rate, pitch, speaking rate, and centroid use sign or ratio quantities and
are invariant under positive rescaling of the input.
"""

from __future__ import annotations

import numpy as np

from innerself.audio import AudioClip
from innerself.emotion.classify import FeatureVector
from innerself.errors import ClipTooShort, EmptyTranscript, SilentClip
from innerself.lexicons import (
    FIRST_SINGULAR_TOKENS,
    TermMatcher,
    ValenceLexicon,
    default_absolute_terms,
    tokenize,
)

MIN_CLIP_SECONDS = 0.2
SILENCE_PEAK = 1e-4
FRAME_SECONDS = 0.025

# F0 search band (Hz) and voicing gates
F0_MIN = 60.0
F0_MAX = 400.0
VOICING_STRENGTH = 0.5
VOICING_RMS_FRACTION = 0.1

AUDIO_FEATURE_NAMES = (
    "rms_mean",
    "rms_var",
    "zcr_mean",
    "f0_mean_hz",
    "f0_var",
    "f0_range_hz",
    "speaking_rate_hz",
    "centroid_mean_hz",
)

TEXT_FEATURE_NAMES = (
    "negative_ratio",
    "positive_ratio",
    "absolute_ratio",
    "first_person_ratio",
    "question_ratio",
    "exclamation_ratio",
)


def _frames(samples: np.ndarray, frame_len: int) -> np.ndarray:
    n = len(samples) // frame_len
    return samples[: n * frame_len].reshape(n, frame_len)


def _frame_zcr(frames: np.ndarray) -> np.ndarray:
    signs = np.signbit(frames)
    changes = np.abs(np.diff(signs.astype(np.int8), axis=1)).sum(axis=1)
    return changes / (frames.shape[1] - 1)


def _frame_f0(frame: np.ndarray, sr: int) -> tuple[float, float]:
    """Autocorrelation pitch estimate: (f0_hz, strength in [0, 1])."""
    frame = frame - frame.mean()
    ac = np.correlate(frame, frame, mode="full")[len(frame) - 1 :]
    if ac[0] <= 0:
        return 0.0, 0.0
    lag_min = int(sr / F0_MAX)
    lag_max = min(int(sr / F0_MIN), len(frame) - 2)
    if lag_max <= lag_min:
        return 0.0, 0.0
    window = ac[lag_min : lag_max + 1]
    peak = int(np.argmax(window)) + lag_min
    strength = float(ac[peak] / ac[0])
    # parabolic refinement around the integer-lag peak
    lag = float(peak)
    if 0 < peak < len(ac) - 1:
        a, b, c = ac[peak - 1], ac[peak], ac[peak + 1]
        denom = a - 2 * b + c
        if abs(denom) > 1e-12:
            delta = 0.5 * (a - c) / denom
            lag = peak + float(np.clip(delta, -0.5, 0.5))
    return sr / lag, strength


def extract_audio_features(clip: AudioClip) -> FeatureVector:
    """Eight-dimensional acoustic summary of a mono clip.

    Raises ClipTooShort below 0.2 s and SilentClip when the peak amplitude
    is under 1e-4. Feature order is AUDIO_FEATURE_NAMES.
    """
    if clip.duration_seconds < MIN_CLIP_SECONDS:
        raise ClipTooShort(
            f"clip is {clip.duration_seconds:.3f} s, need {MIN_CLIP_SECONDS} s"
        )
    if clip.peak < SILENCE_PEAK:
        raise SilentClip("peak amplitude below 1e-4")

    sr = clip.sample_rate
    frame_len = max(int(round(FRAME_SECONDS * sr)), 2)
    frames = _frames(clip.samples, frame_len)
    if len(frames) == 0:
        raise ClipTooShort("clip shorter than one analysis frame")

    rms = np.sqrt(np.mean(frames**2, axis=1))
    rms_mean = float(np.mean(rms))
    rms_var = float(np.var(rms))
    zcr_mean = float(np.mean(_frame_zcr(frames)))

    rms_peak = float(rms.max())
    f0_values = []
    for frame, frame_rms in zip(frames, rms):
        if rms_peak > 0 and frame_rms < VOICING_RMS_FRACTION * rms_peak:
            continue
        f0, strength = _frame_f0(frame, sr)
        if f0 > 0 and strength >= VOICING_STRENGTH:
            f0_values.append(f0)
    if f0_values:
        f0_arr = np.asarray(f0_values)
        f0_mean = float(f0_arr.mean())
        f0_var = float(f0_arr.var())
        f0_range = float(f0_arr.max() - f0_arr.min())
    else:
        f0_mean = f0_var = f0_range = 0.0

    # onset rate of energy bursts as a speaking-rate proxy
    above = rms >= 0.5 * rms_peak if rms_peak > 0 else np.zeros(len(rms), bool)
    onsets = int(above[0]) + int(np.sum(above[1:] & ~above[:-1]))
    speaking_rate = onsets / (len(frames) * frame_len / sr)

    freqs = np.fft.rfftfreq(frame_len, d=1.0 / sr)
    window = np.hanning(frame_len)
    mags = np.abs(np.fft.rfft(frames * window, axis=1))
    totals = mags.sum(axis=1)
    nonzero = totals > 0
    if np.any(nonzero):
        centroids = (mags[nonzero] * freqs).sum(axis=1) / totals[nonzero]
        centroid_mean = float(centroids.mean())
    else:
        centroid_mean = 0.0

    values = np.array(
        [
            rms_mean,
            rms_var,
            zcr_mean,
            f0_mean,
            f0_var,
            f0_range,
            speaking_rate,
            centroid_mean,
        ]
    )
    return FeatureVector(values, "audio")


def extract_text_features(
    transcript: str,
    lexicon: ValenceLexicon,
    absolutes: TermMatcher | None = None,
) -> FeatureVector:
    """Six-dimensional semantic summary of a transcript.

    All counts are normalized by the word-token count. Raises
    EmptyTranscript when the transcript carries no word tokens.
    """
    if absolutes is None:
        absolutes = default_absolute_terms()
    tokens = tokenize(transcript)
    if not tokens:
        raise EmptyTranscript("transcript has no word tokens")
    n = len(tokens)
    first_person = sum(1 for t in tokens if t in FIRST_SINGULAR_TOKENS)
    values = np.array(
        [
            lexicon.negative.count_matches(transcript) / n,
            lexicon.positive.count_matches(transcript) / n,
            absolutes.count_matches(transcript) / n,
            first_person / n,
            transcript.count("?") / n,
            transcript.count("!") / n,
        ]
    )
    return FeatureVector(values, "text")
