"""Emotion categories, feature vectors, and the linear classification head."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from innerself.errors import (
    DimensionMismatch,
    ModalityMismatch,
    NonFiniteInput,
    TableFormatError,
)

LOGIT_CLAMP = 1e4
PROB_SUM_TOL = 1e-9


class EmotionLabel(enum.Enum):
    """Recognized emotion categories. Index order is fixed and load-bearing:
    argmax ties break toward the lowest index."""

    ANXIETY = "anxiety"
    SADNESS = "sadness"
    SHAME_REGRET = "shame_regret"
    ANGER = "anger"
    NEUTRAL = "neutral"

    @property
    def index(self) -> int:
        return _LABEL_ORDER.index(self)

    @classmethod
    def from_value(cls, value: str) -> "EmotionLabel":
        return cls(value)


_LABEL_ORDER = [
    EmotionLabel.ANXIETY,
    EmotionLabel.SADNESS,
    EmotionLabel.SHAME_REGRET,
    EmotionLabel.ANGER,
    EmotionLabel.NEUTRAL,
]

LABELS: tuple[EmotionLabel, ...] = tuple(_LABEL_ORDER)
NEGATIVE_LABELS: tuple[EmotionLabel, ...] = tuple(_LABEL_ORDER[:4])
NUM_LABELS = len(LABELS)

_MODALITIES = ("audio", "text", "fused")


@dataclass(frozen=True)
class FeatureVector:
    """Fixed-length feature vector tagged with its modality."""

    values: np.ndarray
    modality: str

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 1:
            raise ValueError("feature vector must be 1-D")
        if not np.all(np.isfinite(values)):
            raise NonFiniteInput("feature vector contains non-finite values")
        if self.modality not in _MODALITIES:
            raise ValueError(f"unknown modality {self.modality!r}")
        object.__setattr__(self, "values", values)

    @property
    def dimension(self) -> int:
        return len(self.values)


def fuse(audio: FeatureVector, text: FeatureVector) -> FeatureVector:
    """Concatenate audio and text features into one fused vector."""
    if audio.modality != "audio" or text.modality != "text":
        raise ModalityMismatch(
            f"fuse expects (audio, text), got ({audio.modality}, {text.modality})"
        )
    return FeatureVector(np.concatenate([audio.values, text.values]), "fused")


def softmax(logits) -> np.ndarray:
    """Numerically stable softmax.

    Logits are clamped to [-1e4, 1e4], shifted by their max before
    exponentiation. Output sums to 1 within 1e-9 and preserves argmax.
    """
    arr = np.asarray(logits, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise NonFiniteInput("softmax input must be finite")
    arr = np.clip(arr, -LOGIT_CLAMP, LOGIT_CLAMP)
    shifted = arr - arr.max()
    exps = np.exp(shifted)
    return exps / exps.sum()


@dataclass(frozen=True)
class EmotionResult:
    """Probability distribution over emotion categories plus dominant label.

    ``logits`` are retained for audit; they may be empty when a result is
    reconstructed from persisted probabilities.
    """

    probabilities: dict
    dominant: EmotionLabel
    confidence: float
    logits: tuple = ()

    def __post_init__(self):
        probs = {EmotionLabel(k) if not isinstance(k, EmotionLabel) else k: float(v)
                 for k, v in self.probabilities.items()}
        if set(probs) != set(LABELS):
            raise ValueError("probabilities must cover exactly the five labels")
        total = sum(probs.values())
        if abs(total - 1.0) > PROB_SUM_TOL:
            raise ValueError(f"probabilities sum to {total}, not 1")
        if any(p < 0 or p > 1 for p in probs.values()):
            raise ValueError("probabilities must lie in [0, 1]")
        expected = _argmax_label(probs)
        if expected is not self.dominant:
            raise ValueError("dominant must be the argmax label (ties: lowest index)")
        if abs(probs[self.dominant] - self.confidence) > PROB_SUM_TOL:
            raise ValueError("confidence must equal probabilities[dominant]")
        object.__setattr__(self, "probabilities", probs)
        object.__setattr__(self, "logits", tuple(float(x) for x in self.logits))

    @classmethod
    def from_logits(cls, logits) -> "EmotionResult":
        probs = softmax(logits)
        mapping = {label: float(p) for label, p in zip(LABELS, probs)}
        dominant = _argmax_label(mapping)
        return cls(mapping, dominant, mapping[dominant], tuple(float(x) for x in logits))

    @classmethod
    def from_probabilities(cls, probabilities: dict) -> "EmotionResult":
        mapping = {EmotionLabel(k) if not isinstance(k, EmotionLabel) else k: float(v)
                   for k, v in probabilities.items()}
        if set(mapping) != set(LABELS):
            raise ValueError("probabilities must cover exactly the five labels")
        dominant = _argmax_label(mapping)
        return cls(mapping, dominant, mapping[dominant])

    def negative_mass(self) -> float:
        return sum(self.probabilities[label] for label in NEGATIVE_LABELS)

    def to_dict(self) -> dict:
        return {
            "probabilities": {l.value: p for l, p in self.probabilities.items()},
            "dominant": self.dominant.value,
            "confidence": self.confidence,
            "logits": list(self.logits),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "EmotionResult":
        return cls(
            {EmotionLabel(k): v for k, v in data["probabilities"].items()},
            EmotionLabel(data["dominant"]),
            float(data["confidence"]),
            tuple(data.get("logits", ())),
        )


def _argmax_label(probs: dict) -> EmotionLabel:
    best = LABELS[0]
    for label in LABELS[1:]:
        if probs[label] > probs[best]:
            best = label
    return best


@dataclass(frozen=True)
class ClassifierHead:
    """Linear head: logits = W @ fused + b, shape (5, D)."""

    weights: np.ndarray
    bias: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.float64)
        b = np.asarray(self.bias, dtype=np.float64)
        if w.ndim != 2 or w.shape[0] != NUM_LABELS:
            raise ValueError(f"weights must be ({NUM_LABELS}, D)")
        if b.shape != (NUM_LABELS,):
            raise ValueError(f"bias must have shape ({NUM_LABELS},)")
        if not (np.all(np.isfinite(w)) and np.all(np.isfinite(b))):
            raise NonFiniteInput("classifier head entries must be finite")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "bias", b)

    @property
    def input_dim(self) -> int:
        return self.weights.shape[1]

    @classmethod
    def load(cls, path: str | Path) -> "ClassifierHead":
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
            dims = data["dims"]
            head = cls(np.array(data["weights"]), np.array(data["bias"]))
        except (KeyError, ValueError, TypeError, json.JSONDecodeError) as exc:
            raise TableFormatError(f"bad classifier head file {path}: {exc}") from exc
        if list(dims) != [NUM_LABELS, head.input_dim]:
            raise TableFormatError(f"head dims {dims} disagree with weight shape")
        return head

    def save(self, path: str | Path) -> None:
        doc = {
            "dims": [NUM_LABELS, self.input_dim],
            "weights": self.weights.tolist(),
            "bias": self.bias.tolist(),
        }
        Path(path).write_text(json.dumps(doc, indent=2), encoding="utf-8")


def classify(fused: FeatureVector, head: ClassifierHead) -> EmotionResult:
    """Score a fused feature vector with the linear head."""
    if fused.dimension != head.input_dim:
        raise DimensionMismatch(
            f"head expects dim {head.input_dim}, got {fused.dimension}"
        )
    logits = head.weights @ fused.values + head.bias
    return EmotionResult.from_logits(logits)
