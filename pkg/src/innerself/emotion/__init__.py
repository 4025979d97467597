"""Emotion recognition: acoustic + semantic features, fusion, linear head."""

from innerself.emotion.classify import (
    ClassifierHead,
    EmotionLabel,
    EmotionResult,
    FeatureVector,
    NEGATIVE_LABELS,
    classify,
    fuse,
    softmax,
)
from innerself.emotion.features import (
    AUDIO_FEATURE_NAMES,
    TEXT_FEATURE_NAMES,
    extract_audio_features,
    extract_text_features,
)
from innerself.emotion.adapters import (
    HttpAudioFeatures,
    HttpSpeechToText,
    MockSpeechToText,
    ReferenceAudioFeatures,
    transcribe,
)

__all__ = [
    "AUDIO_FEATURE_NAMES",
    "ClassifierHead",
    "EmotionLabel",
    "EmotionResult",
    "FeatureVector",
    "HttpAudioFeatures",
    "HttpSpeechToText",
    "MockSpeechToText",
    "NEGATIVE_LABELS",
    "ReferenceAudioFeatures",
    "TEXT_FEATURE_NAMES",
    "classify",
    "extract_audio_features",
    "extract_text_features",
    "fuse",
    "softmax",
    "transcribe",
]
