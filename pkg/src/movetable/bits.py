"""Plain bitvectors with rank/select, and directly addressable codes (DACs)."""

from __future__ import annotations

from bisect import bisect_left

import numpy as np

from .serial import IndexFormatError

CHUNK_BITS = 8
_CHUNK_MASK = (1 << CHUNK_BITS) - 1


class BitVector:
    """Uncompressed bitvector over 64-bit words with a cumulative popcount per word."""

    def __init__(self, bits=()):
        bits = np.asarray(bits, dtype=bool)
        self.size = len(bits)
        packed = np.packbits(bits, bitorder="little")
        pad = (-len(packed)) % 8
        words = np.concatenate((packed, np.zeros(pad, dtype=np.uint8))).view("<u8")
        self._init_words(words)

    def _init_words(self, words):
        self.words = np.asarray(words, dtype=np.uint64)
        # trailing zero word so rank(size) never indexes past the end
        self._w = self.words.tolist() + [0]
        pops = [w.bit_count() for w in self._w]
        cum = [0]
        for p in pops:
            cum.append(cum[-1] + p)
        self._cum = cum
        self.ones = cum[-1]

    @classmethod
    def from_words(cls, words, size: int) -> "BitVector":
        bv = cls.__new__(cls)
        bv.size = int(size)
        words = np.asarray(words, dtype=np.uint64)
        if len(words) != (size + 63) // 64:
            raise IndexFormatError(f"bitvector of {size} bits cannot have {len(words)} words")
        bv._init_words(words)
        return bv

    @classmethod
    def from_positions(cls, positions, size: int) -> "BitVector":
        bits = np.zeros(size, dtype=bool)
        bits[np.asarray(positions, dtype=np.int64)] = True
        return cls(bits)

    def __len__(self):
        return self.size

    def __getitem__(self, i: int) -> int:
        return (self._w[i >> 6] >> (i & 63)) & 1

    def rank1(self, i: int) -> int:
        """Number of set bits in [0, i)."""
        w = i >> 6
        return self._cum[w] + (self._w[w] & ((1 << (i & 63)) - 1)).bit_count()

    def select1(self, j: int) -> int:
        """0-based position of the j-th set bit (j counts from 1)."""
        if not 1 <= j <= self.ones:
            raise IndexError(f"select({j}) with only {self.ones} set bits")
        w = bisect_left(self._cum, j) - 1
        x = self._w[w]
        for _ in range(j - self._cum[w] - 1):
            x &= x - 1
        return (w << 6) + (x & -x).bit_length() - 1

    def to_bools(self) -> np.ndarray:
        return np.unpackbits(self.words.view(np.uint8), bitorder="little")[: self.size].astype(bool)

    def to_string(self) -> str:
        return "".join("1" if b else "0" for b in self.to_bools())

    def dump(self, w):
        w.u64(self.size)
        w.u64_array(self.words)

    @classmethod
    def load(cls, r) -> "BitVector":
        size = r.u64()
        return cls.from_words(r.u64_array(), size)

    def __eq__(self, other):
        return isinstance(other, BitVector) and self.size == other.size and np.array_equal(self.words, other.words)


class DacList:
    """Directly addressable codes with 8-bit chunks.

    Level l holds the l-th chunk of every value that needs more than l
    chunks; a bitvector per level marks values continuing to the next level,
    and its rank gives the index there.
    """

    def __init__(self, values=()):
        values = np.asarray(values, dtype=np.uint64)
        self.size = len(values)
        self._chunks = []
        self._cont = []
        level = values
        while True:
            self._chunks.append((level & np.uint64(_CHUNK_MASK)).astype(np.uint8).tobytes())
            level = level >> np.uint64(CHUNK_BITS)
            more = level > 0
            if not more.any():
                break
            self._cont.append(BitVector(more))
            level = level[more]

    def __len__(self):
        return self.size

    def __getitem__(self, i: int) -> int:
        v = self._chunks[0][i]
        shift = CHUNK_BITS
        lvl = 0
        cont = self._cont
        while lvl < len(cont) and cont[lvl][i]:
            i = cont[lvl].rank1(i)
            lvl += 1
            v |= self._chunks[lvl][i] << shift
            shift += CHUNK_BITS
        return v

    def decode_all(self) -> np.ndarray:
        """Every value at once, level by level."""
        vals = np.frombuffer(self._chunks[0], dtype=np.uint8).astype(np.uint64)
        where = np.arange(self.size)
        for lvl, cont in enumerate(self._cont):
            where = where[cont.to_bools()]
            chunk = np.frombuffer(self._chunks[lvl + 1], dtype=np.uint8).astype(np.uint64)
            vals[where] |= chunk << np.uint64(CHUNK_BITS * (lvl + 1))
        return vals

    def tolist(self):
        return self.decode_all().tolist()

    @property
    def levels(self) -> int:
        return len(self._chunks)

    def nbytes(self) -> int:
        return sum(len(c) for c in self._chunks) + sum(8 * len(b.words) for b in self._cont)

    def dump(self, w):
        w.u64(self.size)
        w.u32(len(self._chunks))
        for c in self._chunks:
            w.blob(c)
        for b in self._cont:
            b.dump(w)

    @classmethod
    def load(cls, r) -> "DacList":
        dac = cls.__new__(cls)
        dac.size = r.u64()
        nlev = r.u32()
        if nlev == 0:
            raise IndexFormatError("DAC with zero levels")
        dac._chunks = [r.blob() for _ in range(nlev)]
        dac._cont = [BitVector.load(r) for _ in range(nlev - 1)]
        if len(dac._chunks[0]) != dac.size:
            raise IndexFormatError("DAC level 0 does not match its element count")
        for lvl, b in enumerate(dac._cont):
            if b.size != len(dac._chunks[lvl]) or b.ones != len(dac._chunks[lvl + 1]):
                raise IndexFormatError("DAC continuation bits inconsistent with chunk levels")
        return dac
