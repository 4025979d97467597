"""Chunk encoding and the eviction flush queue.

Chunk file format: 8-byte header (magic "ISCH", then big-endian u32
CRC-32 of the payload), followed by the payload: raw UTF-8 text bytes of
evicted buffer content, capped at 4096 bytes per chunk and split only at
character boundaries. Turn attribution lives in the session's turn log,
not in the chunks; reconstruction is pure byte concatenation.
"""

from __future__ import annotations

import struct
import zlib
from typing import Protocol

from innerself.errors import ChecksumMismatch, StoreUnavailable, TableFormatError

CHUNK_MAGIC = b"ISCH"
HEADER_LEN = 8
MAX_PAYLOAD_BYTES = 4096


def encode_chunk(payload: bytes) -> bytes:
    if len(payload) > MAX_PAYLOAD_BYTES:
        raise ValueError(f"payload of {len(payload)} bytes exceeds cap")
    return CHUNK_MAGIC + struct.pack(">I", zlib.crc32(payload)) + payload


def decode_chunk(blob: bytes, seq: int = -1) -> bytes:
    """Verify header and checksum, return the payload."""
    if len(blob) < HEADER_LEN or blob[:4] != CHUNK_MAGIC:
        raise TableFormatError(f"chunk {seq}: bad header")
    (stored_crc,) = struct.unpack(">I", blob[4:8])
    payload = blob[8:]
    if zlib.crc32(payload) != stored_crc:
        raise ChecksumMismatch(seq)
    return payload


def split_text_to_payloads(
    text: str, max_bytes: int = MAX_PAYLOAD_BYTES
) -> list[bytes]:
    """UTF-8 payloads of at most max_bytes, split at char boundaries."""
    payloads: list[bytes] = []
    current = bytearray()
    for char in text:
        encoded = char.encode("utf-8")
        if current and len(current) + len(encoded) > max_bytes:
            payloads.append(bytes(current))
            current = bytearray()
        current.extend(encoded)
    if current:
        payloads.append(bytes(current))
    return payloads


class ChunkSink(Protocol):
    def write_chunk(self, payload: bytes) -> int: ...


class EvictionFlusher:
    """Groups evicted text into chunks and writes them durably.

    Failed flushes keep their text in a pending queue; the next flush (or
    an explicit retry) drains the queue first, preserving order.
    """

    def __init__(self, sink: ChunkSink):
        self.sink = sink
        self.pending: list[str] = []

    def flush(self, fragments: list[str]) -> list[int]:
        """Write fragments (after any pending text); returns chunk seqs."""
        self.pending.extend(f for f in fragments if f)
        return self._drain()

    def retry(self) -> list[int]:
        return self._drain()

    def _drain(self) -> list[int]:
        if not self.pending:
            return []
        text = "".join(self.pending)
        payloads = split_text_to_payloads(text)
        written: list[int] = []
        for i, payload in enumerate(payloads):
            try:
                written.append(self.sink.write_chunk(payload))
            except StoreUnavailable:
                # keep exactly the unwritten remainder, in order
                remainder = b"".join(payloads[i:]).decode("utf-8")
                self.pending = [remainder]
                raise
        self.pending = []
        return written
