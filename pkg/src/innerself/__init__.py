"""InnerSelf: an emotion-aware dialogue pipeline that answers in the
user's own cloned voice.

Subpackages:

* ``innerself.emotion`` - transcription, feature extraction, classification
* ``innerself.conversation`` - strategy routing, reframing, response generation
* ``innerself.voiceclone`` - enrollment, mel synthesis, vocoding, prosody
* ``innerself.storage`` - dialogue buffer, chunk persistence, session store
* ``innerself.service`` - turn engine, HTTP/WS API, simulation harness
"""

__version__ = "0.1.0"

from innerself.audio import AudioClip, read_wav, read_wav_bytes, write_wav, write_wav_bytes
from innerself.errors import InnerSelfError

__all__ = [
    "AudioClip",
    "InnerSelfError",
    "read_wav",
    "read_wav_bytes",
    "write_wav",
    "write_wav_bytes",
    "__version__",
]
