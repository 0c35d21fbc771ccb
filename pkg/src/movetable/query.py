"""Count queries by backward search, text inversion, and scan profiling.

Everything here works on either backend (:class:`~movetable.table.MoveTable`
or :class:`~movetable.blocked.BlockedTable`); both expose the same
run/offset LF, neighbour search and position conversion methods.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional

from .table import Position


class SearchState(NamedTuple):
    """Inclusive BWT interval given by its first and last (run, offset) pairs."""

    start: Position
    end: Position


#: the empty interval; propagates through every further step
EMPTY = None


def full_interval(index) -> SearchState:
    last = index.r - 1
    return SearchState(Position(0, 0), Position(last, index.length(last) - 1))


def _narrow(index, state, c):
    """Runs/offsets of the first and last c inside the interval, or EMPTY."""
    (js, ds), (je, de) = state
    if index.symbol(js) != c:
        js = index.next_occurrence(js, c)
        if js is None:
            return EMPTY
        ds = 0
    if index.symbol(je) != c:
        je = index.prev_occurrence(je, c)
        if je is None:
            return EMPTY
        de = index.length(je) - 1
    if js > je or (js == je and ds > de):
        return EMPTY
    return (js, ds), (je, de)


def backward_step(index, state: Optional[SearchState], c: int, _step=None) -> Optional[SearchState]:
    """Extend the match one symbol to the left."""
    if state is EMPTY or c not in index.symbols:
        return EMPTY
    narrowed = _narrow(index, state, c)
    if narrowed is EMPTY:
        return EMPTY
    step = _step or index.lf_step
    return SearchState(step(narrowed[0]), step(narrowed[1]))


def interval_size(index, state: Optional[SearchState]) -> int:
    if state is EMPTY:
        return 0
    return index.pair_to_index(state.end) - index.pair_to_index(state.start) + 1


def search(index, pattern: bytes) -> Optional[SearchState]:
    """BWT interval of the rows prefixed by *pattern*, or EMPTY."""
    if not pattern:
        raise ValueError("empty pattern")
    if index.terminator is not None and index.terminator in pattern:
        return EMPTY
    state = full_interval(index)
    for c in reversed(pattern):
        state = backward_step(index, state, c)
        if state is EMPTY:
            break
    return state


def count(index, pattern: bytes) -> int:
    """Number of occurrences of *pattern* in the indexed text."""
    if len(pattern) >= index.n:
        return 0
    return interval_size(index, search(index, pattern))


def invert(index) -> bytes:
    """Recover the indexed text, terminator included."""
    if index.terminator is None:
        raise ValueError("table has no terminator; it was not built from a text")
    k = index.run_select(1, index.terminator)
    p = Position(k, 0)
    out = bytearray(index.n)
    step = index.lf_step
    symbol = index.symbol
    for i in range(index.n - 1, -1, -1):
        out[i] = symbol(p[0])
        p = step(p)
    return bytes(out)


@dataclass
class ScanHistogram:
    counts: Counter = field(default_factory=Counter)
    total_steps: int = 0

    def add(self, scan: int):
        self.counts[scan] += 1
        self.total_steps += 1

    @property
    def max_scan(self) -> Optional[int]:
        return max(self.counts) if self.counts else None

    def fraction(self, scan: int) -> float:
        return self.counts.get(scan, 0) / self.total_steps if self.total_steps else 0.0

    def rows(self):
        """(scan_length, frequency, percent) in increasing scan length."""
        for s in sorted(self.counts):
            yield s, self.counts[s], 100.0 * self.counts[s] / self.total_steps

    def to_csv(self) -> str:
        lines = ["scan_length,frequency,percent"]
        lines += [f"{s},{f},{p:.6f}" for s, f, p in self.rows()]
        return "\n".join(lines) + "\n"


def profile_scans(index, patterns: Iterable[bytes], histogram: Optional[ScanHistogram] = None) -> ScanHistogram:
    """Scan lengths of every LF step taken while counting *patterns*."""
    hist = histogram if histogram is not None else ScanHistogram()

    def step(p):
        q, scan = index.lf_step_counted(p)
        hist.add(scan)
        return q

    for pattern in patterns:
        if not pattern or (index.terminator is not None and index.terminator in pattern):
            continue
        state = full_interval(index)
        for c in reversed(pattern):
            state = backward_step(index, state, c, _step=step)
            if state is EMPTY:
                break
    return hist
