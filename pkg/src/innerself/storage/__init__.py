from innerself.storage.buffer import DEFAULT_ALPHA, DialogueBuffer
from innerself.storage.chunks import (
    CHUNK_MAGIC,
    MAX_PAYLOAD_BYTES,
    EvictionFlusher,
    decode_chunk,
    encode_chunk,
    split_text_to_payloads,
)
from innerself.storage.records import (
    ActionPlan,
    PlanStep,
    TurnRecord,
    buffer_line,
    emotion_trajectory,
    export_session,
    import_session,
    read_turns,
    reconstruct_transcript,
    recover_buffer,
)
from innerself.storage.store import SessionStore, atomic_write_bytes

__all__ = [
    "ActionPlan",
    "CHUNK_MAGIC",
    "DEFAULT_ALPHA",
    "DialogueBuffer",
    "EvictionFlusher",
    "MAX_PAYLOAD_BYTES",
    "PlanStep",
    "SessionStore",
    "TurnRecord",
    "atomic_write_bytes",
    "buffer_line",
    "decode_chunk",
    "emotion_trajectory",
    "encode_chunk",
    "export_session",
    "import_session",
    "read_turns",
    "reconstruct_transcript",
    "recover_buffer",
    "split_text_to_payloads",
]
