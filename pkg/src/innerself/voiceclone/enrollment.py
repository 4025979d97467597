"""Enrollment sample validation.

Gate checks before a sample may contribute to a voice profile: duration
window, audibility, transcript presence, and a crude audio/transcript
consistency proxy comparing the voiced-duration estimate against a
words-times-0.4-seconds expectation within a factor of 4.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from innerself.audio import AudioClip
from innerself.lexicons import tokenize

MIN_DURATION_S = 1.0
MAX_DURATION_S = 30.0
MIN_PEAK = 0.01
SECONDS_PER_WORD = 0.4
CONSISTENCY_FACTOR = 4.0

# per-sample validation error codes
UNREADABLE = "Unreadable"
TOO_SHORT = "TooShort"
TOO_LONG = "TooLong"
TOO_QUIET = "TooQuiet"
EMPTY_TRANSCRIPT = "EmptyTranscript"
INCONSISTENT_TRANSCRIPT = "InconsistentTranscript"


@dataclass(frozen=True)
class EnrollmentSample:
    clip: AudioClip
    transcript: str
    validated: bool = False


def voiced_seconds(clip: AudioClip) -> float:
    """Rough voiced-duration estimate from frame energy.

    Frames of 25 ms count as voiced when their RMS reaches 10% of the
    loudest frame's RMS.
    """
    frame_len = max(int(round(0.025 * clip.sample_rate)), 2)
    n = len(clip.samples) // frame_len
    if n == 0:
        return 0.0
    frames = clip.samples[: n * frame_len].reshape(n, frame_len)
    rms = np.sqrt(np.mean(frames**2, axis=1))
    peak = rms.max()
    if peak <= 0:
        return 0.0
    voiced = int(np.sum(rms >= 0.1 * peak))
    return voiced * frame_len / clip.sample_rate


def validate_enrollment(
    sample: EnrollmentSample,
) -> tuple[EnrollmentSample, list[str]]:
    """Run every check; return (sample with validated flag, error codes).

    The error list holds zero or more of TooShort, TooLong, TooQuiet,
    EmptyTranscript, InconsistentTranscript. Empty list means validated.
    """
    errors = []
    duration = sample.clip.duration_seconds
    if duration < MIN_DURATION_S:
        errors.append(TOO_SHORT)
    elif duration > MAX_DURATION_S:
        errors.append(TOO_LONG)
    if sample.clip.peak < MIN_PEAK:
        errors.append(TOO_QUIET)
    words = tokenize(sample.transcript)
    if not words:
        errors.append(EMPTY_TRANSCRIPT)
    else:
        expected = len(words) * SECONDS_PER_WORD
        voiced = voiced_seconds(sample.clip)
        if voiced > expected * CONSISTENCY_FACTOR or (
            voiced < expected / CONSISTENCY_FACTOR
        ):
            errors.append(INCONSISTENT_TRANSCRIPT)
    return replace(sample, validated=not errors), errors
