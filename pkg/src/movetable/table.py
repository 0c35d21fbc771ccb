"""The uncompressed move table: one (length, dest_run, dest_offset, symbol) row per run.

Positions are (run, offset) pairs. LF on a pair looks up the row's
destination and walks forward over following rows while the offset
overflows the current run.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from typing import NamedTuple, Optional

import numpy as np

from .rlbwt import (Alphabet, RunLengthBWT, bwt_from_sa, lf_array, prepare_text,
                    runs_from_bwt, suffix_array)

ROW_DTYPE = np.dtype([("length", "<u8"), ("dest_run", "<u8"), ("dest_offset", "<u8"), ("symbol", "u1")])


class Position(NamedTuple):
    run: int
    offset: int


# NamedTuple.__new__ is Python-level; this skips it on the LF hot path
_new_position = tuple.__new__


class MoveRow(NamedTuple):
    length: int
    dest_run: int
    dest_offset: int
    symbol: int


class MoveTable:
    """Move table over a (possibly split) run decomposition of a BWT.

    ``rows`` is a structured array with one contiguous record per run. The
    per-column lists are copies used by the scalar LF loop.
    """

    backend = "move"

    def __init__(self, rows: np.ndarray, run_heads, n: int, parent_run=None,
                 terminator: Optional[int] = None, split_config=None):
        self.rows = np.ascontiguousarray(rows, dtype=ROW_DTYPE)
        self.run_heads = np.asarray(run_heads, dtype=np.int64)
        self.n = int(n)
        self.r = len(self.rows)
        if parent_run is None:
            parent_run = np.arange(self.r, dtype=np.int64)
        self.parent_run = np.asarray(parent_run, dtype=np.int64)
        self.terminator = terminator
        self.split_config = split_config

        self._len = self.rows["length"].tolist()
        self._dest_run = self.rows["dest_run"].tolist()
        self._dest_off = self.rows["dest_offset"].tolist()
        self._sym = self.rows["symbol"].tobytes()
        self._heads = self.run_heads.tolist()
        self.symbols = tuple(sorted(set(self._sym)))
        # row indices per symbol, for rank/select over the run characters
        self._occ = {c: [] for c in self.symbols}
        for k, c in enumerate(self._sym):
            self._occ[c].append(k)

    # -- construction -------------------------------------------------------

    @classmethod
    def from_runs(cls, rlbwt: RunLengthBWT, lf=None, terminator=None) -> "MoveTable":
        if lf is None:
            lf = lf_array(rlbwt.expand())
        from .splitting import SplitRuns, rebuild_table
        return rebuild_table(rlbwt, SplitRuns.unsplit(rlbwt), lf, terminator=terminator)

    @classmethod
    def from_bwt(cls, bwt: bytes) -> "MoveTable":
        """Table for an arbitrary string treated as a BWT; no terminator is assumed."""
        return cls.from_runs(runs_from_bwt(bwt), lf_array(bwt))

    @classmethod
    def from_text(cls, data: bytes, terminated: bool = False) -> "MoveTable":
        """Build from raw text; with *terminated* the last byte is taken as the terminator."""
        text = bytes(data) if terminated else prepare_text(data)
        bwt = bwt_from_sa(text, suffix_array(text))
        return cls.from_runs(runs_from_bwt(bwt), lf_array(bwt), terminator=text[-1])

    # -- row access ---------------------------------------------------------

    def row(self, k: int) -> MoveRow:
        if not 0 <= k < self.r:
            raise IndexError(f"row {k} out of range [0, {self.r})")
        return MoveRow(self._len[k], self._dest_run[k], self._dest_off[k], self._sym[k])

    def length(self, k: int) -> int:
        return self._len[k]

    def symbol(self, k: int) -> int:
        return self._sym[k]

    def run_head(self, k: int) -> int:
        return self._heads[k]

    def run_chars(self) -> bytes:
        return self._sym

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet.from_sequence(self.expand())

    def expand(self) -> bytes:
        return np.repeat(np.frombuffer(self._sym, dtype=np.uint8), self.rows["length"].astype(np.int64)).tobytes()

    # -- positions ----------------------------------------------------------

    def position_to_pair(self, i: int) -> Position:
        if not 0 <= i < self.n:
            raise IndexError(f"position {i} out of range [0, {self.n})")
        k = bisect_right(self._heads, i) - 1
        return Position(k, i - self._heads[k])

    def pair_to_index(self, p) -> int:
        k, d = p
        if not 0 <= d < self._len[k]:
            raise IndexError(f"offset {d} out of range for run {k} of length {self._len[k]}")
        return self._heads[k] + d

    # -- LF -------------------------------------------------------------------

    def lf_step(self, p) -> Position:
        k, d = p
        lengths = self._len
        j = self._dest_run[k]
        d += self._dest_off[k]
        while d >= lengths[j]:
            d -= lengths[j]
            j += 1
        return _new_position(Position, (j, d))

    def lf_step_counted(self, p):
        """LF plus the number of rows walked past the initial destination row."""
        k, d = p
        lengths = self._len
        j = self._dest_run[k]
        start = j
        d += self._dest_off[k]
        while d >= lengths[j]:
            d -= lengths[j]
            j += 1
        return _new_position(Position, (j, d)), j - start

    # -- rank/select over run characters -------------------------------------

    def run_rank(self, k: int, c: int) -> int:
        if c not in self._occ:
            raise KeyError(f"symbol {c!r} not in table")
        return bisect_left(self._occ[c], k)

    def run_select(self, j: int, c: int) -> Optional[int]:
        occ = self._occ.get(c)
        if occ is None or not 1 <= j <= len(occ):
            return None
        return occ[j - 1]

    def next_occurrence(self, k: int, c: int) -> Optional[int]:
        """First row >= k whose symbol is c, or None."""
        occ = self._occ.get(c)
        if occ is None:
            return None
        idx = bisect_left(occ, k)
        return occ[idx] if idx < len(occ) else None

    def prev_occurrence(self, k: int, c: int) -> Optional[int]:
        """Last row <= k whose symbol is c, or None."""
        occ = self._occ.get(c)
        if occ is None:
            return None
        idx = bisect_right(occ, k)
        return occ[idx - 1] if idx else None

    def __repr__(self):
        return f"MoveTable(n={self.n}, r={self.r})"


class PredecessorLF:
    """Baseline LF by predecessor search over the run heads.

    LF(i) = LF(pred(i)) + i - pred(i), with pred found by binary search.
    """

    def __init__(self, run_heads, head_lf):
        self._heads = list(run_heads)
        self._head_lf = list(head_lf)

    @classmethod
    def from_table(cls, table: MoveTable) -> "PredecessorLF":
        head_lf = [table.pair_to_index((table._dest_run[k], table._dest_off[k])) for k in range(table.r)]
        return cls(table._heads, head_lf)

    def lf(self, i: int) -> int:
        k = bisect_right(self._heads, i) - 1
        return self._head_lf[k] + i - self._heads[k]
