"""Suffix array, BWT and run-length BWT construction, plus brute-force oracles.

Texts are byte strings whose last byte is a unique terminator that sorts
before every other byte. :func:`prepare_text` appends ``b"\\x00"`` when the
caller did not supply one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Tuple

import numpy as np

TERMINATOR = 0


class TextError(ValueError):
    """Raised for texts that violate the terminator convention."""


def prepare_text(data: bytes) -> bytes:
    """Return *data* with the zero terminator appended if it is missing."""
    data = bytes(data)
    zeros = data.count(TERMINATOR)
    if zeros == 0:
        return data + b"\x00"
    if zeros == 1 and data[-1] == TERMINATOR:
        return data
    raise TextError("byte 0 is reserved for the terminator and may only appear once, at the end")


def read_fasta(data: bytes) -> bytes:
    """Concatenate the sequence lines of a (multi-record) FASTA file."""
    parts = []
    for line in data.splitlines():
        if line.startswith(b">"):
            continue
        parts.append(line.strip())
    return b"".join(parts)


def validate_text(text: bytes) -> None:
    if len(text) == 0:
        raise TextError("empty text")
    term = text[-1]
    if text.count(term) != 1:
        raise TextError("terminator must occur exactly once, at the end")
    if len(text) > 1 and min(text[:-1]) <= term:
        raise TextError("terminator must be strictly smaller than every other symbol")


def suffix_array(text: bytes) -> np.ndarray:
    """Suffix array by prefix doubling.

    Initial ranks come from the first k symbols of each suffix packed into
    one 64-bit key; each round then sorts by (rank of first h symbols, rank
    of the next h symbols) and doubles h until all ranks are distinct.
    """
    validate_text(text)
    n = len(text)
    a = np.frombuffer(text, dtype=np.uint8)
    _, dense = np.unique(a, return_inverse=True)
    dense = dense.astype(np.uint64).ravel()
    width = max(1, int(dense.max()).bit_length())
    h = max(1, 64 // width)
    key = np.zeros(n, dtype=np.uint64)
    for j in range(h):
        # symbols past the end read as 0; only the unique terminator can precede them
        key <<= np.uint64(width)
        if j < n:
            key[: n - j] |= dense[j:]
    _, rank = np.unique(key, return_inverse=True)
    rank = rank.astype(np.int64).ravel()
    sa = np.argsort(rank)
    while rank[sa[-1]] != n - 1:
        second = np.zeros(n, dtype=np.int64)
        if h < n:
            second[: n - h] = rank[h:] + 1
        key = rank * (n + 1) + second
        sa = np.argsort(key)
        sorted_key = key[sa]
        rank = np.empty(n, dtype=np.int64)
        rank[sa] = np.concatenate(([0], np.cumsum(sorted_key[1:] != sorted_key[:-1])))
        h *= 2
    return sa


def build_suffix_array(text: bytes) -> list:
    return suffix_array(text).tolist()


def bwt_from_sa(text: bytes, sa) -> bytes:
    n = len(text)
    sa = np.asarray(sa, dtype=np.int64)
    if len(sa) != n:
        raise ValueError(f"suffix array has length {len(sa)}, text has length {n}")
    a = np.frombuffer(text, dtype=np.uint8)
    return a[(sa + n - 1) % n].tobytes()


@dataclass(frozen=True)
class Alphabet:
    symbols: Tuple[int, ...]
    counts: Dict[int, int]
    c_array: Dict[int, int]

    @classmethod
    def from_sequence(cls, seq: bytes) -> "Alphabet":
        hist = np.bincount(np.frombuffer(bytes(seq), dtype=np.uint8), minlength=256)
        symbols = tuple(int(c) for c in np.nonzero(hist)[0])
        counts = {c: int(hist[c]) for c in symbols}
        c_array = {}
        total = 0
        for c in symbols:
            c_array[c] = total
            total += counts[c]
        return cls(symbols, counts, c_array)

    @property
    def sigma(self) -> int:
        return len(self.symbols)

    @property
    def n(self) -> int:
        return sum(self.counts.values())


@dataclass(frozen=True, eq=False)
class RunLengthBWT:
    """Maximal unary runs of a BWT: run characters and run head positions."""

    run_chars: bytes
    run_heads: np.ndarray
    n: int
    lengths: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        heads = np.asarray(self.run_heads, dtype=np.int64)
        object.__setattr__(self, "run_heads", heads)
        object.__setattr__(self, "lengths", np.diff(np.append(heads, self.n)))

    @property
    def r(self) -> int:
        return len(self.run_chars)

    def expand(self) -> bytes:
        chars = np.frombuffer(self.run_chars, dtype=np.uint8)
        return np.repeat(chars, self.lengths).tobytes()

    def __eq__(self, other):
        if not isinstance(other, RunLengthBWT):
            return NotImplemented
        return (self.n == other.n and self.run_chars == other.run_chars
                and np.array_equal(self.run_heads, other.run_heads))


def runs_from_bwt(bwt: bytes) -> RunLengthBWT:
    if len(bwt) == 0:
        raise ValueError("empty BWT")
    a = np.frombuffer(bytes(bwt), dtype=np.uint8)
    heads = np.concatenate(([0], np.nonzero(a[1:] != a[:-1])[0] + 1)).astype(np.int64)
    return RunLengthBWT(a[heads].tobytes(), heads, len(a))


def lf_array(bwt: bytes) -> np.ndarray:
    """LF for every position at once: the rank of i in a stable sort of the BWT."""
    a = np.frombuffer(bytes(bwt), dtype=np.uint8)
    order = np.argsort(a, kind="stable")
    lf = np.empty(len(a), dtype=np.int64)
    lf[order] = np.arange(len(a), dtype=np.int64)
    return lf


# -- oracles ---------------------------------------------------------------

def lf_oracle(bwt: bytes, alphabet: Alphabet, i: int) -> int:
    """C[c] plus the number of earlier occurrences of c = bwt[i]."""
    if not 0 <= i < len(bwt):
        raise IndexError(f"position {i} out of range for BWT of length {len(bwt)}")
    c = bwt[i]
    return alphabet.c_array[c] + bwt.count(c, 0, i)


def lf_oracle_all(bwt: bytes) -> list:
    """LF of every position by a direct left-to-right count (no sorting)."""
    alphabet = Alphabet.from_sequence(bwt)
    seen = dict(alphabet.c_array)
    out = []
    for c in bwt:
        out.append(seen[c])
        seen[c] += 1
    return out


def lf_via_suffix_array(sa) -> np.ndarray:
    """LF(i) = ISA[SA[i] - 1], straight from the definition."""
    sa = np.asarray(sa, dtype=np.int64)
    n = len(sa)
    isa = np.empty(n, dtype=np.int64)
    isa[sa] = np.arange(n, dtype=np.int64)
    return isa[(sa - 1) % n]


def count_oracle(text: bytes, pattern: bytes) -> int:
    """Overlapping occurrences of *pattern* in *text* minus its terminator."""
    body = text[:-1]
    if not pattern:
        raise ValueError("empty pattern")
    total = 0
    i = body.find(pattern)
    while i != -1:
        total += 1
        i = body.find(pattern, i + 1)
    return total


def invert_bwt_oracle(bwt: bytes) -> bytes:
    """Rebuild the text by iterating LF from the terminator row."""
    lf = lf_oracle_all(bwt)
    i = bwt.index(min(bwt))
    out = bytearray()
    for _ in range(len(bwt)):
        out.append(bwt[i])
        i = lf[i]
    out.reverse()
    return bytes(out)
