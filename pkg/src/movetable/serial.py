"""Little-endian binary reader/writer shared by the serializable structures."""

from __future__ import annotations

import struct

import numpy as np


class IndexFormatError(ValueError):
    """Base class for malformed index files."""


class BadMagicError(IndexFormatError):
    pass


class VersionMismatchError(IndexFormatError):
    pass


class TruncatedSectionError(IndexFormatError):
    pass


class Writer:
    def __init__(self):
        self._parts = []

    def u8(self, v):
        self._parts.append(struct.pack("<B", v))

    def u32(self, v):
        self._parts.append(struct.pack("<I", v))

    def u64(self, v):
        self._parts.append(struct.pack("<Q", v))

    def raw(self, b: bytes):
        self._parts.append(bytes(b))

    def blob(self, b: bytes):
        self.u64(len(b))
        self.raw(b)

    def u64_array(self, a):
        a = np.asarray(a, dtype="<u8")
        self.u64(len(a))
        self.raw(a.tobytes())

    def getvalue(self) -> bytes:
        return b"".join(self._parts)


class Reader:
    def __init__(self, data: bytes, what: str = "section"):
        self._mv = memoryview(data)
        self._pos = 0
        self._what = what

    def _take(self, k: int) -> memoryview:
        if self._pos + k > len(self._mv):
            raise TruncatedSectionError(
                f"{self._what} truncated: wanted {k} bytes at offset {self._pos}, "
                f"only {len(self._mv) - self._pos} left")
        out = self._mv[self._pos:self._pos + k]
        self._pos += k
        return out

    def u8(self):
        return self._take(1)[0]

    def u32(self):
        return struct.unpack("<I", self._take(4))[0]

    def u64(self):
        return struct.unpack("<Q", self._take(8))[0]

    def raw(self, k: int) -> bytes:
        return bytes(self._take(k))

    def blob(self) -> bytes:
        return self.raw(self.u64())

    def u64_array(self) -> np.ndarray:
        k = self.u64()
        return np.frombuffer(self.raw(8 * k), dtype="<u8").astype(np.uint64)

    def at_end(self) -> bool:
        return self._pos == len(self._mv)
