"""Exception hierarchy shared by all pipeline stages.

Every error carries a stable ``code`` string that the service layer maps
onto API error responses, so new exception types must pick a unique code.
"""

from __future__ import annotations


class InnerSelfError(Exception):
    """Base class for all errors raised by this package."""

    code = "INTERNAL"

    def __init__(self, message: str = ""):
        super().__init__(message or self.__doc__ or self.code)


# --- audio / emotion ---------------------------------------------------


class ClipTooShort(InnerSelfError):
    """Audio clip is shorter than the operation's minimum duration."""

    code = "CLIP_TOO_SHORT"


class SilentClip(InnerSelfError):
    """Audio clip has no usable signal (peak amplitude below threshold)."""

    code = "SILENT_CLIP"


class EmptyTranscript(InnerSelfError):
    """Transcript is empty or carries no word tokens."""

    code = "EMPTY_TRANSCRIPT"


class EmptyUtterance(InnerSelfError):
    """Turn input carried no usable speech; the turn was not recorded."""

    code = "EMPTY_UTTERANCE"


class AdapterUnavailable(InnerSelfError):
    """External inference backend unreachable or timed out."""

    code = "ADAPTER_UNAVAILABLE"

    def __init__(self, message: str = "", retry_after: float | None = None):
        super().__init__(message)
        self.retry_after = retry_after


class ModalityMismatch(InnerSelfError):
    """Feature vectors do not have the expected modalities."""

    code = "MODALITY_MISMATCH"


class NonFiniteInput(InnerSelfError):
    """Numeric input contains NaN or infinity."""

    code = "NON_FINITE_INPUT"


class DimensionMismatch(InnerSelfError):
    """Classifier head shape does not match the fused feature dimension."""

    code = "DIMENSION_MISMATCH"


# --- conversation ------------------------------------------------------


class ContextOverflow(InnerSelfError):
    """Dialogue context exceeds the prompt budget."""

    code = "CONTEXT_OVERFLOW"


class TableFormatError(InnerSelfError):
    """A shipped table (strategies, substitutions, prosody, head) is malformed
    or violates a load-time consistency check."""

    code = "TABLE_FORMAT"


# --- voiceclone --------------------------------------------------------


class EmptyText(InnerSelfError):
    """Synthesis input text is empty."""

    code = "EMPTY_TEXT"


class NoValidSamples(InnerSelfError):
    """Enrollment produced no valid samples to embed."""

    code = "NO_VALID_SAMPLES"


# --- storage -----------------------------------------------------------


class OversizeAppend(InnerSelfError):
    """Appended text exceeds 10x the buffer capacity."""

    code = "OVERSIZE_APPEND"


class StoreUnavailable(InnerSelfError):
    """Persistent store rejected a write; evictions are queued for retry."""

    code = "STORE_UNAVAILABLE"


class ChunkMissing(InnerSelfError):
    """A chunk sequence number is absent from the store."""

    code = "CHUNK_MISSING"

    def __init__(self, seq: int):
        super().__init__(f"chunk {seq} missing")
        self.seq = seq


class ChecksumMismatch(InnerSelfError):
    """A chunk payload does not match its recorded CRC."""

    code = "CHECKSUM_MISMATCH"

    def __init__(self, seq: int):
        super().__init__(f"chunk {seq} failed CRC verification")
        self.seq = seq


class UnknownSession(InnerSelfError):
    """No session with the given id exists in the store."""

    code = "UNKNOWN_SESSION"


# --- service -----------------------------------------------------------


class ScriptParseError(InnerSelfError):
    """Simulation script is malformed."""

    code = "SCRIPT_PARSE"

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line


class SessionBusy(InnerSelfError):
    """A turn is already in flight for this session."""

    code = "BUSY"
