"""Versioned index files.

Layout (all integers little-endian)::

    magic        4 bytes  b"MVTB"
    version      u32
    backend      u8       0 = move table, 1 = blocked
    split mode   u8       0 = none, 1 = max_length, 2 = balanced
    factor       u64 numerator, u64 denominator (0/1 unless max_length)
    d            u32      (0 unless balanced)
    alphabet     u16 count, then that many symbol bytes
    terminator   u8 flag, u8 symbol
    sections     u32 count, then per section: u64 byte length + payload

Move-table sections: header (n, r), run heads, rows, parent runs.
Blocked sections: header (parameters, head samples, parent runs), then
one section per block. Bitvectors are 64-bit word arrays preceded by
their bit length.
"""

from __future__ import annotations

import os
import struct
from fractions import Fraction

import numpy as np

from .blocked import BlockedTable
from .serial import (BadMagicError, IndexFormatError, Reader, TruncatedSectionError,
                     VersionMismatchError, Writer)
from .splitting import SplitConfig
from .table import ROW_DTYPE, MoveTable

MAGIC = b"MVTB"
VERSION = 1
_BACKENDS = ("move", "blocked")
_MODES = ("none", "max_length", "balanced")

__all__ = ["save", "load", "dumps", "loads", "IndexFormatError", "BadMagicError",
           "VersionMismatchError", "TruncatedSectionError"]


def _sections(index):
    if isinstance(index, MoveTable):
        head = Writer()
        head.u64(index.n)
        head.u64(index.r)
        heads, rows, parents = Writer(), Writer(), Writer()
        heads.u64_array(index.run_heads)
        rows.raw(index.rows.astype(ROW_DTYPE).tobytes())
        parents.u64_array(index.parent_run)
        return [w.getvalue() for w in (head, heads, rows, parents)]
    head = Writer()
    index.dump_header(head)
    out = [head.getvalue()]
    for blk in index.blocks:
        w = Writer()
        blk.dump(w, index.symbols)
        out.append(w.getvalue())
    return out


def dumps(index) -> bytes:
    w = Writer()
    w.raw(MAGIC)
    w.u32(VERSION)
    w.u8(_BACKENDS.index(index.backend))
    split = index.split_config or SplitConfig()
    w.u8(_MODES.index(split.mode))
    factor = Fraction(split.factor) if split.factor is not None else Fraction(0)
    w.u64(factor.numerator)
    w.u64(factor.denominator)
    w.u32(split.d or 0)
    w.raw(struct.pack("<H", len(index.symbols)))
    w.raw(bytes(index.symbols))
    w.u8(index.terminator is not None)
    w.u8(index.terminator or 0)
    sections = _sections(index)
    w.u32(len(sections))
    for s in sections:
        w.blob(s)
    return w.getvalue()


def loads(data: bytes):
    r = Reader(data, "index header")
    if len(data) < 4 or r.raw(4) != MAGIC:
        raise BadMagicError("not an index file (bad magic)")
    version = r.u32()
    if version != VERSION:
        raise VersionMismatchError(f"index file version {version}, this library reads version {VERSION}")
    tag = r.u8()
    if tag >= len(_BACKENDS):
        raise IndexFormatError(f"unknown backend tag {tag}")
    mode = r.u8()
    if mode >= len(_MODES):
        raise IndexFormatError(f"unknown split mode tag {mode}")
    num, den = r.u64(), r.u64()
    d = r.u32()
    if _MODES[mode] == "max_length":
        split = SplitConfig.max_length(Fraction(num, den))
    elif _MODES[mode] == "balanced":
        split = SplitConfig.balanced(d)
    else:
        split = SplitConfig.none()
    nsym = struct.unpack("<H", r.raw(2))[0]
    symbols = tuple(r.raw(nsym))
    has_term, term = r.u8(), r.u8()
    terminator = term if has_term else None
    nsec = r.u32()
    sections = [Reader(r.blob(), f"section {i}") for i in range(nsec)]
    if not r.at_end():
        raise IndexFormatError("trailing bytes after the last section")

    if _BACKENDS[tag] == "move":
        if nsec != 4:
            raise IndexFormatError(f"move table needs 4 sections, found {nsec}")
        head, heads, rows, parents = sections
        n, rcount = head.u64(), head.u64()
        run_heads = heads.u64_array().astype(np.int64)
        raw = rows.raw(rcount * ROW_DTYPE.itemsize)
        table_rows = np.frombuffer(raw, dtype=ROW_DTYPE).copy()
        parent = parents.u64_array().astype(np.int64)
        if len(run_heads) != rcount or len(parent) != rcount:
            raise IndexFormatError("move table sections disagree on the row count")
        if int(table_rows["length"].sum()) != n:
            raise IndexFormatError("row lengths do not sum to n")
        table = MoveTable(table_rows, run_heads, n, parent, terminator, split)
        if tuple(table.symbols) != symbols:
            raise IndexFormatError("alphabet table does not match the rows")
        return table
    if nsec < 1:
        raise IndexFormatError("blocked table without a header section")
    return BlockedTable.load(sections[0], sections[1:], symbols, terminator, split)


def save(index, destination) -> int:
    """Write *index* to a path or binary file object; returns the byte count."""
    data = dumps(index)
    if hasattr(destination, "write"):
        destination.write(data)
        return len(data)
    try:
        with open(destination, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise OSError(f"cannot write index to {os.fspath(destination)!r}: {exc.strerror or exc}") from exc
    return len(data)


def load(source):
    if hasattr(source, "read"):
        return loads(source.read())
    try:
        with open(source, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise OSError(f"cannot read index from {os.fspath(source)!r}: {exc.strerror or exc}") from exc
    return loads(data)
