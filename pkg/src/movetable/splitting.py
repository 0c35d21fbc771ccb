"""Run splitting: cap run lengths, or insert heads until every scan is short.

Both strategies produce a :class:`SplitRuns` (sub-run heads plus the maximal
run each sub-run came from); :func:`rebuild_table` turns that into a
:class:`~movetable.table.MoveTable` with destinations recomputed from LF.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np
from sortedcontainers import SortedList

from .rlbwt import RunLengthBWT


@dataclass(frozen=True)
class SplitConfig:
    mode: str = "none"
    factor: Optional[Fraction] = None
    d: Optional[int] = None

    def __post_init__(self):
        if self.mode == "max_length":
            if self.factor is None or Fraction(self.factor) <= 0:
                raise ValueError("split factor must be positive")
            object.__setattr__(self, "factor", Fraction(self.factor))
        elif self.mode == "balanced":
            if self.d is None or int(self.d) != self.d or self.d < 2:
                raise ValueError("balancing parameter d must be an integer >= 2")
        elif self.mode != "none":
            raise ValueError(f"unknown split mode {self.mode!r}")

    @classmethod
    def none(cls):
        return cls("none")

    @classmethod
    def max_length(cls, factor):
        return cls("max_length", factor=Fraction(factor))

    @classmethod
    def balanced(cls, d: int):
        return cls("balanced", d=d)


@dataclass(frozen=True, eq=False)
class SplitRuns:
    sub_run_heads: np.ndarray
    parent_run: np.ndarray

    @classmethod
    def unsplit(cls, rlbwt: RunLengthBWT) -> "SplitRuns":
        return cls(rlbwt.run_heads.copy(), np.arange(rlbwt.r, dtype=np.int64))

    @classmethod
    def from_heads(cls, heads, rlbwt: RunLengthBWT) -> "SplitRuns":
        heads = np.asarray(heads, dtype=np.int64)
        parent = np.searchsorted(rlbwt.run_heads, heads, side="right") - 1
        return cls(heads, parent.astype(np.int64))

    def __len__(self):
        return len(self.sub_run_heads)


def max_run_length(n: int, r: int, factor) -> int:
    return math.ceil(Fraction(factor) * n / r)


def split_max_length(rlbwt: RunLengthBWT, factor) -> SplitRuns:
    """Cut every run longer than ceil(factor * n / r) into near-equal pieces."""
    factor = Fraction(factor)
    if factor <= 0:
        raise ValueError("split factor must be positive")
    limit = max_run_length(rlbwt.n, rlbwt.r, factor)
    heads, parents = [], []
    for k, (head, length) in enumerate(zip(rlbwt.run_heads.tolist(), rlbwt.lengths.tolist())):
        pieces = -(-length // limit)
        q, rem = divmod(length, pieces)
        pos = head
        for p in range(pieces):
            heads.append(pos)
            parents.append(k)
            pos += q + (p < rem)
    return SplitRuns(np.array(heads, dtype=np.int64), np.array(parents, dtype=np.int64))


def balance(heads, lf, d: int, n: Optional[int] = None):
    """Insert heads until every destination interval holds fewer than 2d heads.

    *heads* are the initial run heads (must include 0 and every LF
    discontinuity), *lf* the full LF permutation. The interval after the
    largest destination is closed by n. Violating intervals are processed
    smallest-start first; in each, the (d+1)-st largest head p is chosen and
    LF^-1(p) becomes a new head, so p becomes a new destination.

    Returns the sorted new head positions as an int64 array.
    """
    if d < 2:
        raise ValueError("d must be >= 2")
    lf = np.asarray(lf, dtype=np.int64)
    n = len(lf) if n is None else n
    inv = np.empty(n, dtype=np.int64)
    inv[lf] = np.arange(n, dtype=np.int64)

    pset = SortedList(int(h) for h in heads)
    qset = SortedList(int(lf[h]) for h in pset)
    limit = 2 * d
    initial = len(pset)

    def successor(q):
        idx = qset.bisect_right(q)
        return qset[idx] if idx < len(qset) else n

    def weight(q, q2):
        return pset.bisect_left(q2) - pset.bisect_left(q)

    work = [q for q in qset if weight(q, successor(q)) >= limit]
    heapq.heapify(work)
    steps = 0
    while work:
        q = heapq.heappop(work)
        q2 = successor(q)
        hi = pset.bisect_left(q2)
        if hi - pset.bisect_left(q) < limit:
            continue
        p = pset[hi - 1 - d]
        x = int(inv[p])
        pset.add(x)
        qset.add(p)
        steps += 1
        # [q, p), [p, q2) and the interval that received x may now violate
        idx = qset.bisect_right(x) - 1
        for cand in {q, p, qset[idx]}:
            if weight(cand, successor(cand)) >= limit:
                heapq.heappush(work, cand)
    assert steps * (d - 1) <= initial, "balancing exceeded its insertion bound"
    return np.fromiter(pset, dtype=np.int64, count=len(pset))


def balance_runs(rlbwt: RunLengthBWT, lf, d: int) -> SplitRuns:
    return SplitRuns.from_heads(balance(rlbwt.run_heads, lf, d, rlbwt.n), rlbwt)


def rebuild_table(rlbwt: RunLengthBWT, splits: SplitRuns, lf, terminator=None, split_config=None):
    """Move table over the sub-runs of *splits*; destinations come straight from LF."""
    from .table import ROW_DTYPE, MoveTable

    lf = np.asarray(lf, dtype=np.int64)
    heads = np.asarray(splits.sub_run_heads, dtype=np.int64)
    r = len(heads)
    dest = lf[heads]
    dest_run = np.searchsorted(heads, dest, side="right") - 1
    rows = np.empty(r, dtype=ROW_DTYPE)
    rows["length"] = np.diff(np.append(heads, rlbwt.n))
    rows["dest_run"] = dest_run
    rows["dest_offset"] = dest - heads[dest_run]
    chars = np.frombuffer(rlbwt.run_chars, dtype=np.uint8)
    rows["symbol"] = chars[splits.parent_run]
    return MoveTable(rows, heads, rlbwt.n, parent_run=splits.parent_run,
                     terminator=terminator, split_config=split_config)
