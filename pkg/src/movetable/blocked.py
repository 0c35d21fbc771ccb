"""Block-compressed move table.

Rows are cut into blocks of ``block_size``. Inside a block, each symbol has
a bitvector marking its rows, lengths and destination offsets sit in DACs,
and destination run indices are split into one non-decreasing list per
symbol, stored with one of the encodings in :mod:`movetable.encodings`.
Each block also keeps, per symbol, the number of rows with that symbol
before it and the nearest such row before and after it, so rank, select and
neighbour searches never touch another block's bitvectors.

Absolute BWT positions are recovered from every 16th run head plus the
lengths in between.
"""

from __future__ import annotations

from bisect import bisect_right
from typing import Optional

import numpy as np

from .bits import BitVector, DacList
from .encodings import ENCODINGS, encoding_class, make_encoder
from .serial import IndexFormatError
from .table import MoveRow, MoveTable, Position, _new_position

MAX_SIGMA = 8
DEFAULT_BLOCK_SIZE = 1 << 20
HEAD_SAMPLE_RATE = 16
NONE = -1


class AlphabetTooLargeError(ValueError):
    pass


class Block:
    __slots__ = ("start", "size", "char_bits", "rank_before", "prev_ptr", "next_ptr",
                 "lengths", "offsets", "dests")

    def dump(self, w, symbols):
        w.u64(self.start)
        w.u64(self.size)
        for c in symbols:
            self.char_bits[c].dump(w)
            w.u64(self.rank_before[c])
            w.u64(self.prev_ptr[c] + 1)
            w.u64(self.next_ptr[c] + 1)
            self.dests[c].dump(w)
        self.lengths.dump(w)
        self.offsets.dump(w)

    @classmethod
    def load(cls, r, symbols, enc_cls):
        blk = cls()
        blk.start = r.u64()
        blk.size = r.u64()
        blk.char_bits, blk.rank_before, blk.prev_ptr, blk.next_ptr, blk.dests = {}, {}, {}, {}, {}
        for c in symbols:
            blk.char_bits[c] = BitVector.load(r)
            blk.rank_before[c] = r.u64()
            blk.prev_ptr[c] = r.u64() - 1
            blk.next_ptr[c] = r.u64() - 1
            blk.dests[c] = enc_cls.load(r)
            if blk.char_bits[c].size != blk.size or len(blk.dests[c]) != blk.char_bits[c].ones:
                raise IndexFormatError("block symbol index inconsistent with its destination list")
        blk.lengths = DacList.load(r)
        blk.offsets = DacList.load(r)
        if len(blk.lengths) != blk.size or len(blk.offsets) != blk.size:
            raise IndexFormatError("block columns do not match the block size")
        return blk


class BlockedTable:
    backend = "blocked"

    def __init__(self):
        # use compress() or load()
        self.blocks = []

    # -- construction -------------------------------------------------------

    @classmethod
    def compress(cls, table: MoveTable, block_size: int = DEFAULT_BLOCK_SIZE, encoding: str = "bv",
                 dac_rate: int = 5, interp_rate: int = 16) -> "BlockedTable":
        symbols = table.symbols
        regular = [c for c in symbols if c != table.terminator]
        if len(regular) > MAX_SIGMA:
            raise AlphabetTooLargeError(
                f"blocked tables support at most {MAX_SIGMA} symbols besides the terminator, "
                f"got {len(regular)}")
        if block_size < 1:
            raise ValueError("block size must be positive")
        if encoding not in ENCODINGS:
            raise ValueError(f"unknown destination encoding {encoding!r}; choose from {ENCODINGS}")
        encode = make_encoder(encoding, dac_rate, interp_rate)

        bt = cls()
        bt.n, bt.r = table.n, table.r
        bt.block_size = block_size
        bt.encoding = encoding
        bt.dac_rate, bt.interp_rate = dac_rate, interp_rate
        bt.symbols = symbols
        bt.terminator = table.terminator
        bt.split_config = table.split_config
        bt.parent_run = table.parent_run.copy()
        bt.head_samples = table.run_heads[::HEAD_SAMPLE_RATE].tolist()

        rows = table.rows
        sym = rows["symbol"]
        dest_run = rows["dest_run"].astype(np.int64)
        occ = {c: np.flatnonzero(sym == c) for c in symbols}
        for start in range(0, bt.r, block_size):
            end = min(start + block_size, bt.r)
            blk = Block()
            blk.start, blk.size = start, end - start
            blk.char_bits, blk.rank_before, blk.prev_ptr, blk.next_ptr, blk.dests = {}, {}, {}, {}, {}
            local = sym[start:end]
            local_dest = dest_run[start:end]
            for c in symbols:
                mask = local == c
                blk.char_bits[c] = BitVector(mask)
                lo = int(np.searchsorted(occ[c], start))
                hi = int(np.searchsorted(occ[c], end))
                blk.rank_before[c] = lo
                blk.prev_ptr[c] = int(occ[c][lo - 1]) if lo > 0 else NONE
                blk.next_ptr[c] = int(occ[c][hi]) if hi < len(occ[c]) else NONE
                blk.dests[c] = encode(local_dest[mask])
            blk.lengths = DacList(rows["length"][start:end])
            blk.offsets = DacList(rows["dest_offset"][start:end])
            bt.blocks.append(blk)
        bt._finish()
        return bt

    def _finish(self):
        self._bits = [[(c, blk.char_bits[c]) for c in self.symbols] for blk in self.blocks]
        self._lens = [blk.lengths for blk in self.blocks]
        self._totals = {c: sum(blk.char_bits[c].ones for blk in self.blocks) for c in self.symbols}
        self._rank_before = {c: [blk.rank_before[c] for blk in self.blocks] for c in self.symbols}

    # -- row access -----------------------------------------------------------

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    def _check_row(self, k):
        if not 0 <= k < self.r:
            raise IndexError(f"row {k} out of range [0, {self.r})")

    def symbol(self, k: int) -> int:
        b, l = divmod(k, self.block_size)
        for c, bv in self._bits[b]:
            if bv[l]:
                return c
        raise AssertionError(f"row {k} has no symbol")

    def length(self, k: int) -> int:
        b, l = divmod(k, self.block_size)
        return self._lens[b][l]

    def row(self, k: int) -> MoveRow:
        self._check_row(k)
        b, l = divmod(k, self.block_size)
        blk = self.blocks[b]
        c = self.symbol(k)
        dest = blk.dests[c][blk.char_bits[c].rank1(l)]
        return MoveRow(blk.lengths[l], dest, blk.offsets[l], c)

    def run_head(self, k: int) -> int:
        s = k // HEAD_SAMPLE_RATE
        h = self.head_samples[s]
        for t in range(s * HEAD_SAMPLE_RATE, k):
            h += self.length(t)
        return h

    def run_chars(self) -> bytes:
        return bytes(self.symbol(k) for k in range(self.r))

    def expand(self) -> bytes:
        return b"".join(bytes([self.symbol(k)]) * self.length(k) for k in range(self.r))

    def to_move_table(self) -> MoveTable:
        """Decode every row back into an uncompressed table."""
        from .table import ROW_DTYPE
        rows = np.array([tuple(self.row(k)) for k in range(self.r)], dtype=ROW_DTYPE)
        heads = np.concatenate(([0], np.cumsum(rows["length"].astype(np.int64))[:-1]))
        return MoveTable(rows, heads, self.n, self.parent_run, self.terminator, self.split_config)

    # -- positions ----------------------------------------------------------

    def position_to_pair(self, i: int) -> Position:
        if not 0 <= i < self.n:
            raise IndexError(f"position {i} out of range [0, {self.n})")
        s = bisect_right(self.head_samples, i) - 1
        k = s * HEAD_SAMPLE_RATE
        h = self.head_samples[s]
        L = self.length(k)
        while h + L <= i:
            h += L
            k += 1
            L = self.length(k)
        return Position(k, i - h)

    def pair_to_index(self, p) -> int:
        k, d = p
        if not 0 <= d < self.length(k):
            raise IndexError(f"offset {d} out of range for run {k}")
        return self.run_head(k) + d

    # -- LF -------------------------------------------------------------------

    def lf_step(self, p) -> Position:
        k, d = p
        B = self.block_size
        b, l = divmod(k, B)
        blk = self.blocks[b]
        for c, bv in self._bits[b]:
            if bv[l]:
                j = blk.dests[c][bv.rank1(l)]
                break
        d += blk.offsets[l]
        lens = self._lens
        L = lens[j // B][j % B]
        while d >= L:
            d -= L
            j += 1
            L = lens[j // B][j % B]
        return _new_position(Position, (j, d))

    def lf_step_counted(self, p):
        k, d = p
        B = self.block_size
        b, l = divmod(k, B)
        blk = self.blocks[b]
        for c, bv in self._bits[b]:
            if bv[l]:
                j = blk.dests[c][bv.rank1(l)]
                break
        d += blk.offsets[l]
        start = j
        lens = self._lens
        L = lens[j // B][j % B]
        while d >= L:
            d -= L
            j += 1
            L = lens[j // B][j % B]
        return _new_position(Position, (j, d)), j - start

    # -- rank/select over run characters -------------------------------------

    def run_rank(self, k: int, c: int) -> int:
        """Rows with symbol c among rows [0, k)."""
        if c not in self._totals:
            raise KeyError(f"symbol {c!r} not in table")
        if not 0 <= k <= self.r:
            raise IndexError(f"row {k} out of range [0, {self.r}]")
        if k == self.r:
            return self._totals[c]
        b, l = divmod(k, self.block_size)
        blk = self.blocks[b]
        return blk.rank_before[c] + blk.char_bits[c].rank1(l)

    def run_select(self, j: int, c: int) -> Optional[int]:
        """Row of the j-th (1-based) occurrence of c, or None if there is none."""
        if c not in self._totals or not 1 <= j <= self._totals[c]:
            return None
        b = bisect_right(self._rank_before[c], j - 1) - 1
        blk = self.blocks[b]
        return blk.start + blk.char_bits[c].select1(j - blk.rank_before[c])

    def next_occurrence(self, k: int, c: int) -> Optional[int]:
        """First row >= k with symbol c, or None."""
        if c not in self._totals:
            return None
        b, l = divmod(k, self.block_size)
        blk = self.blocks[b]
        bv = blk.char_bits[c]
        rk = bv.rank1(l)
        if rk < bv.ones:
            return blk.start + bv.select1(rk + 1)
        nxt = blk.next_ptr[c]
        return None if nxt == NONE else nxt

    def prev_occurrence(self, k: int, c: int) -> Optional[int]:
        """Last row <= k with symbol c, or None."""
        if c not in self._totals:
            return None
        b, l = divmod(k, self.block_size)
        blk = self.blocks[b]
        bv = blk.char_bits[c]
        rk = bv.rank1(l + 1)
        if rk:
            return blk.start + bv.select1(rk)
        prv = blk.prev_ptr[c]
        return None if prv == NONE else prv

    def boundary_pointers(self, b: int, c: int):
        """(last row of c before block b, first row of c after it); None when absent."""
        blk = self.blocks[b]
        prv, nxt = blk.prev_ptr[c], blk.next_ptr[c]
        return (None if prv == NONE else prv, None if nxt == NONE else nxt)

    # -- serialization -------------------------------------------------------

    def dump_header(self, w):
        w.u64(self.n)
        w.u64(self.r)
        w.u64(self.block_size)
        w.u8(ENCODINGS.index(self.encoding))
        w.u32(self.dac_rate)
        w.u32(self.interp_rate)
        w.u64_array(self.head_samples)
        w.u64_array(self.parent_run)
        w.u64(len(self.blocks))

    @classmethod
    def load(cls, r, block_readers, symbols, terminator, split_config) -> "BlockedTable":
        """Rebuild from a header reader and one reader per block section."""
        bt = cls()
        bt.n = r.u64()
        bt.r = r.u64()
        bt.block_size = r.u64()
        tag = r.u8()
        if tag >= len(ENCODINGS):
            raise IndexFormatError(f"unknown destination encoding tag {tag}")
        bt.encoding = ENCODINGS[tag]
        bt.dac_rate = r.u32()
        bt.interp_rate = r.u32()
        bt.head_samples = r.u64_array().tolist()
        bt.parent_run = r.u64_array().astype(np.int64)
        bt.symbols = tuple(symbols)
        bt.terminator = terminator
        bt.split_config = split_config
        enc_cls = encoding_class(bt.encoding)
        nblocks = r.u64()
        if bt.block_size < 1 or nblocks != -(-bt.r // bt.block_size) or nblocks != len(block_readers):
            raise IndexFormatError("block count does not match row count and block size")
        bt.blocks = [Block.load(br, bt.symbols, enc_cls) for br in block_readers]
        bt._finish()
        return bt

    def __repr__(self):
        return (f"BlockedTable(n={self.n}, r={self.r}, block_size={self.block_size}, "
                f"encoding={self.encoding!r})")
