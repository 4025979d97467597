"""Speaker embedding and voice profiles.

The reference encoder maps a clip to summary statistics of its mel
spectrogram: per-band mean and variance of the floor-shifted log power
(so silence contributes zeros rather than the log floor), concatenated to
160 dims, zero-padded to 256, L2-normalized. A profile is the normalized
mean of the per-sample vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timezone
from typing import TYPE_CHECKING

import numpy as np

from innerself.errors import NoValidSamples, TableFormatError
from innerself.voiceclone.enrollment import EnrollmentSample
from innerself.voiceclone.mel import LOG_FLOOR, MelParams, compute_mel

if TYPE_CHECKING:
    from innerself.voiceclone.adapters import SpeakerEncoderAdapter

EMBEDDING_DIM = 256
NORM_TOL = 1e-6


@dataclass(frozen=True)
class VoiceProfile:
    """Unit-norm speaker embedding plus enrollment metadata."""

    embedding: np.ndarray
    sample_count: int
    created_at: str

    def __post_init__(self):
        emb = np.asarray(self.embedding, dtype=np.float64)
        object.__setattr__(self, "embedding", emb)
        if emb.shape != (EMBEDDING_DIM,):
            raise ValueError(f"embedding must have {EMBEDDING_DIM} dims")
        norm = float(np.linalg.norm(emb))
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"embedding norm {norm} not within 1e-6 of 1.0")
        if self.sample_count < 1:
            raise ValueError("sample_count must be >= 1")

    def to_dict(self) -> dict:
        return {
            "embedding": [float(v) for v in self.embedding],
            "sample_count": self.sample_count,
            "created_at": self.created_at,
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "VoiceProfile":
        try:
            return cls(
                embedding=np.asarray(payload["embedding"], dtype=np.float64),
                sample_count=int(payload["sample_count"]),
                created_at=str(payload["created_at"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise TableFormatError(f"bad voice profile payload: {exc}") from exc


def _normalize(vector: np.ndarray) -> np.ndarray:
    norm = np.linalg.norm(vector)
    if norm == 0:
        # degenerate but deterministic: put all mass on the first axis
        out = np.zeros(len(vector))
        out[0] = 1.0
        return out
    return vector / norm


class ReferenceSpeakerEncoder:
    """Deterministic mel-statistics encoder."""

    name = "reference"

    def __init__(self, params: MelParams | None = None):
        self.params = params or MelParams()

    def embed(self, clips) -> list[np.ndarray]:
        vectors = []
        for clip in clips:
            mel = compute_mel(clip, self.params)
            shifted = mel.frames - LOG_FLOOR
            stats = np.concatenate([shifted.mean(axis=0), shifted.var(axis=0)])
            padded = np.zeros(EMBEDDING_DIM)
            padded[: len(stats)] = stats
            vectors.append(_normalize(padded))
        return vectors


def embed_speaker(
    samples: list[EnrollmentSample],
    encoder: "SpeakerEncoderAdapter",
    now: datetime | None = None,
) -> VoiceProfile:
    """Build a VoiceProfile from validated samples.

    The encoder yields one 256-dim vector per sample; the profile holds
    the L2-normalized mean.
    """
    valid = [s for s in samples if s.validated]
    if not valid:
        raise NoValidSamples("no validated enrollment samples")
    vectors = encoder.embed([s.clip for s in valid])
    if len(vectors) != len(valid):
        raise TableFormatError(
            f"encoder returned {len(vectors)} vectors for {len(valid)} samples"
        )
    stacked = np.asarray(vectors, dtype=np.float64)
    if stacked.shape != (len(valid), EMBEDDING_DIM):
        raise TableFormatError(f"bad embedding shape {stacked.shape}")
    mean = stacked.mean(axis=0)
    created = (now or datetime.now(timezone.utc)).isoformat()
    return VoiceProfile(
        embedding=_normalize(mean),
        sample_count=len(valid),
        created_at=created,
    )
