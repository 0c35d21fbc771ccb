"""One-call construction of either backend from a text or a BWT."""

from __future__ import annotations

from .blocked import DEFAULT_BLOCK_SIZE, BlockedTable
from .rlbwt import bwt_from_sa, lf_array, prepare_text, runs_from_bwt, suffix_array
from .splitting import SplitConfig, SplitRuns, balance_runs, rebuild_table, split_max_length


def table_from_bwt(bwt: bytes, split: SplitConfig = SplitConfig(), terminator=None, lf=None):
    rlbwt = runs_from_bwt(bwt)
    if lf is None:
        lf = lf_array(bwt)
    if split.mode == "max_length":
        splits = split_max_length(rlbwt, split.factor)
    elif split.mode == "balanced":
        splits = balance_runs(rlbwt, lf, split.d)
    else:
        splits = SplitRuns.unsplit(rlbwt)
    return rebuild_table(rlbwt, splits, lf, terminator=terminator, split_config=split)


def build_index(data: bytes, split: SplitConfig = SplitConfig(), backend: str = "move",
                block_size: int = DEFAULT_BLOCK_SIZE, encoding: str = "bv",
                dac_rate: int = 5, interp_rate: int = 16, terminated: bool = False):
    """Index a text. The zero terminator is appended unless *terminated* is set."""
    text = bytes(data) if terminated else prepare_text(data)
    bwt = bwt_from_sa(text, suffix_array(text))
    table = table_from_bwt(bwt, split, terminator=text[-1])
    return convert(table, backend, block_size, encoding, dac_rate, interp_rate)


def convert(table, backend: str = "move", block_size: int = DEFAULT_BLOCK_SIZE, encoding: str = "bv",
            dac_rate: int = 5, interp_rate: int = 16):
    if backend == "move":
        return table
    if backend == "blocked":
        return BlockedTable.compress(table, block_size, encoding, dac_rate, interp_rate)
    raise ValueError(f"unknown backend {backend!r}")
