"""Encodings for non-decreasing destination lists.

Every encoding stores the first value M[0] explicitly and supports random
access to M[k]:

* ``bv``: unary gaps. Element k contributes M[k] - M[k-1] zeros followed by
  a one, so M[k] = M[0] + select1(k + 1) - k.
* ``dac``: consecutive differences in a DAC plus every s-th value relative
  to M[0]; a lookup adds at most s - 1 differences to a sample.
* ``interp``: every s-th value is sampled; the rest store their signed
  deviation from the straight line between the surrounding samples.
"""

from __future__ import annotations

import numpy as np

from .bits import BitVector, DacList
from .serial import IndexFormatError

ENCODINGS = ("bv", "dac", "interp")


def _check_sorted(values) -> np.ndarray:
    m = np.asarray(values, dtype=np.int64)
    if len(m) and np.any(np.diff(m) < 0):
        raise ValueError("destination list must be non-decreasing")
    if len(m) and m[0] < 0:
        raise ValueError("destination list must be non-negative")
    return m


class BitvectorDest:
    tag = "bv"

    def __init__(self, values):
        m = _check_sorted(values)
        self.size = len(m)
        self.base = int(m[0]) if len(m) else 0
        # one-bit k sits after (M[k] - M[0]) zeros
        ones_at = (m - self.base) + np.arange(len(m))
        total = int(ones_at[-1]) + 1 if len(m) else 0
        self.bits = BitVector.from_positions(ones_at, total)

    def __len__(self):
        return self.size

    def __getitem__(self, k: int) -> int:
        return self.base + self.bits.select1(k + 1) - k

    def decode_all(self) -> np.ndarray:
        ones = np.flatnonzero(self.bits.to_bools())
        return self.base + ones - np.arange(len(ones))

    def dump(self, w):
        w.u64(self.size)
        w.u64(self.base)
        self.bits.dump(w)

    @classmethod
    def load(cls, r):
        obj = cls.__new__(cls)
        obj.size = r.u64()
        obj.base = r.u64()
        obj.bits = BitVector.load(r)
        if obj.bits.ones != obj.size:
            raise IndexFormatError("bitvector destination list has wrong number of set bits")
        return obj


class DacSampledDest:
    tag = "dac"

    def __init__(self, values, rate: int = 5):
        if rate < 1:
            raise ValueError("DAC sample rate must be >= 1")
        m = _check_sorted(values)
        self.size = len(m)
        self.rate = rate
        self.base = int(m[0]) if len(m) else 0
        self.samples = (m[::rate] - self.base).tolist()
        diffs = np.diff(m, prepend=self.base) if len(m) else m
        self.diffs = DacList(diffs)

    def __len__(self):
        return self.size

    def __getitem__(self, k: int) -> int:
        q = k // self.rate
        v = self.base + self.samples[q]
        diffs = self.diffs
        for t in range(q * self.rate + 1, k + 1):
            v += diffs[t]
        return v

    def decode_all(self) -> np.ndarray:
        diffs = self.diffs.decode_all().astype(np.int64)
        if self.size:
            # restart the prefix sum at every sample
            diffs[:: self.rate] = self.samples
            starts = np.arange(0, self.size, self.rate)
            csum = np.cumsum(diffs)
            csum -= np.repeat(np.append(0, csum[starts[1:] - 1]), np.diff(np.append(starts, self.size)))
            return self.base + csum
        return diffs

    def dump(self, w):
        w.u64(self.size)
        w.u32(self.rate)
        w.u64(self.base)
        w.u64_array(self.samples)
        self.diffs.dump(w)

    @classmethod
    def load(cls, r):
        obj = cls.__new__(cls)
        obj.size = r.u64()
        obj.rate = r.u32()
        obj.base = r.u64()
        obj.samples = r.u64_array().tolist()
        obj.diffs = DacList.load(r)
        if obj.rate < 1 or len(obj.samples) != -(-obj.size // obj.rate) or len(obj.diffs) != obj.size:
            raise IndexFormatError("sampled DAC destination list is inconsistent")
        return obj


def interpolate(x: int, z: int, offset: int, rate: int) -> int:
    """x + round((z - x) * offset / rate), halves rounded up."""
    return x + (2 * (z - x) * offset + rate) // (2 * rate)


class InterpolatedDest:
    tag = "interp"

    def __init__(self, values, rate: int = 16):
        if rate < 2:
            raise ValueError("interpolation rate must be >= 2")
        m = _check_sorted(values)
        self.size = len(m)
        self.rate = rate
        self.base = int(m[0]) if len(m) else 0
        rel = m - self.base
        self.samples = rel[::rate].tolist()
        deltas = []
        samples = self.samples
        for i in range(len(rel)):
            q, off = divmod(i, rate)
            if off == 0:
                continue
            x = samples[q]
            eps = interpolate(x, samples[q + 1], off, rate) if q + 1 < len(samples) else x
            deltas.append(int(rel[i]) - eps)
        deltas = np.array(deltas, dtype=np.int64)
        self.signs = BitVector(deltas < 0)
        self.deltas = DacList(np.abs(deltas))

    def __len__(self):
        return self.size

    def __getitem__(self, k: int) -> int:
        q, off = divmod(k, self.rate)
        samples = self.samples
        x = samples[q]
        if off == 0:
            return self.base + x
        eps = interpolate(x, samples[q + 1], off, self.rate) if q + 1 < len(samples) else x
        u = k - q - 1
        delta = self.deltas[u]
        if self.signs[u]:
            delta = -delta
        return self.base + eps + delta

    def decode_all(self) -> np.ndarray:
        idx = np.arange(self.size)
        q, off = np.divmod(idx, self.rate)
        samples = np.asarray(self.samples, dtype=np.int64)
        x = samples[q] if self.size else idx
        nxt = np.append(samples, 0)[np.minimum(q + 1, len(samples))]
        has_next = q + 1 < len(samples)
        eps = np.where(has_next, x + (2 * (nxt - x) * off + self.rate) // (2 * self.rate), x)
        unsampled = off != 0
        deltas = self.deltas.decode_all().astype(np.int64)
        deltas[self.signs.to_bools()] *= -1
        out = x.copy()
        out[unsampled] = eps[unsampled] + deltas
        return self.base + out

    def dump(self, w):
        w.u64(self.size)
        w.u32(self.rate)
        w.u64(self.base)
        w.u64_array(self.samples)
        self.signs.dump(w)
        self.deltas.dump(w)

    @classmethod
    def load(cls, r):
        obj = cls.__new__(cls)
        obj.size = r.u64()
        obj.rate = r.u32()
        obj.base = r.u64()
        obj.samples = r.u64_array().tolist()
        obj.signs = BitVector.load(r)
        obj.deltas = DacList.load(r)
        unsampled = obj.size - len(obj.samples)
        if obj.rate < 2 or len(obj.samples) != -(-obj.size // obj.rate) \
                or len(obj.deltas) != unsampled or len(obj.signs) != unsampled:
            raise IndexFormatError("interpolated destination list is inconsistent")
        return obj


_CLASSES = {"bv": BitvectorDest, "dac": DacSampledDest, "interp": InterpolatedDest}


def make_encoder(tag: str, dac_rate: int = 5, interp_rate: int = 16):
    """Return a callable building the *tag* encoding for a list."""
    if tag == "bv":
        return BitvectorDest
    if tag == "dac":
        return lambda values: DacSampledDest(values, dac_rate)
    if tag == "interp":
        return lambda values: InterpolatedDest(values, interp_rate)
    raise ValueError(f"unknown destination encoding {tag!r}; choose from {ENCODINGS}")


def encoding_class(tag: str):
    try:
        return _CLASSES[tag]
    except KeyError:
        raise IndexFormatError(f"unknown destination encoding {tag!r}") from None


# functional spellings of the three encodings

def encode_bv(values) -> BitvectorDest:
    return BitvectorDest(values)


def decode_bv(payload: BitvectorDest, k: int) -> int:
    return payload[k]


def encode_dac_sampled(values, rate: int = 5) -> DacSampledDest:
    return DacSampledDest(values, rate)


def decode_dac_sampled(payload: DacSampledDest, k: int) -> int:
    return payload[k]


def encode_interp(values, rate: int = 16) -> InterpolatedDest:
    return InterpolatedDest(values, rate)


def decode_interp(payload: InterpolatedDest, k: int) -> int:
    return payload[k]
