"""Canonical binary encoding for transactions and receipts.

Every field is length-prefixed with a 4-byte big-endian count and fields are
concatenated in declaration order; integers are 8-byte big-endian inside
their prefix, addresses travel as 20 raw bytes.  The encoding is bijective,
so equal encodings mean equal values and transaction hashes are stable
across process restarts and replays.
"""

from __future__ import annotations

import json
from typing import Iterable

from .errors import DvreError


class DecodeError(DvreError):
    """Encoded bytes do not parse back into the declared shape."""


U64_MAX = (1 << 64) - 1


def enc_bytes(value: bytes) -> bytes:
    return len(value).to_bytes(4, "big") + value


def enc_str(value: str) -> bytes:
    return enc_bytes(value.encode("utf-8"))


def enc_u64(value: int) -> bytes:
    if not 0 <= value <= U64_MAX:
        raise ValueError(f"u64 out of range: {value}")
    return enc_bytes(value.to_bytes(8, "big"))


def enc_list(items: Iterable[bytes]) -> bytes:
    packed = list(items)
    return len(packed).to_bytes(4, "big") + b"".join(packed)


class Reader:
    """Cursor over an encoded buffer; every read checks its bounds."""

    def __init__(self, buffer: bytes):
        self._buffer = buffer
        self._pos = 0

    def _take(self, count: int) -> bytes:
        if self._pos + count > len(self._buffer):
            raise DecodeError("buffer truncated")
        chunk = self._buffer[self._pos:self._pos + count]
        self._pos += count
        return chunk

    def read_bytes(self) -> bytes:
        length = int.from_bytes(self._take(4), "big")
        return self._take(length)

    def read_str(self) -> str:
        try:
            return self.read_bytes().decode("utf-8")
        except UnicodeDecodeError:
            raise DecodeError("field is not valid UTF-8") from None

    def read_u64(self) -> int:
        raw = self.read_bytes()
        if len(raw) != 8:
            raise DecodeError(f"u64 field has {len(raw)} bytes")
        return int.from_bytes(raw, "big")

    def read_count(self) -> int:
        return int.from_bytes(self._take(4), "big")

    def done(self) -> bool:
        return self._pos == len(self._buffer)

    def expect_done(self) -> None:
        if not self.done():
            raise DecodeError("trailing bytes after value")


def canonical_json(value) -> str:
    """Serialize to compact JSON with sorted keys; the one true text form."""
    return json.dumps(value, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
