from innerself.voiceclone.adapters import (
    HttpSpeakerEncoder,
    HttpSynthesizer,
    HttpVocoder,
    SpeakerEncoderAdapter,
    SynthesizerAdapter,
    VocoderAdapter,
    mel_to_wire,
    wire_to_mel,
)
from innerself.voiceclone.effects import apply_prosody
from innerself.voiceclone.encoder import (
    EMBEDDING_DIM,
    ReferenceSpeakerEncoder,
    VoiceProfile,
    embed_speaker,
)
from innerself.voiceclone.enrollment import (
    EnrollmentSample,
    validate_enrollment,
)
from innerself.voiceclone.mel import (
    LOG_FLOOR,
    MelFilterbank,
    MelParams,
    MelSpectrogram,
    compute_mel,
    hertz_to_mel,
    mel_to_hertz,
)
from innerself.voiceclone.synth import (
    FRAMES_PER_CHAR,
    ReferenceSynthesizer,
    synthesize,
)
from innerself.voiceclone.vocoder import ReferenceVocoder, vocode

__all__ = [
    "EMBEDDING_DIM",
    "EnrollmentSample",
    "FRAMES_PER_CHAR",
    "HttpSpeakerEncoder",
    "HttpSynthesizer",
    "HttpVocoder",
    "LOG_FLOOR",
    "MelFilterbank",
    "MelParams",
    "MelSpectrogram",
    "ReferenceSpeakerEncoder",
    "ReferenceSynthesizer",
    "ReferenceVocoder",
    "SpeakerEncoderAdapter",
    "SynthesizerAdapter",
    "VocoderAdapter",
    "VoiceProfile",
    "apply_prosody",
    "compute_mel",
    "embed_speaker",
    "hertz_to_mel",
    "mel_to_hertz",
    "mel_to_wire",
    "synthesize",
    "validate_enrollment",
    "vocode",
    "wire_to_mel",
]
