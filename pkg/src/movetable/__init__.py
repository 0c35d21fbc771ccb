"""Move tables: LF-mapping over the run-length BWT by table lookup and short scans."""

from .blocked import AlphabetTooLargeError, BlockedTable
from .build import build_index, convert, table_from_bwt
from .io import load, save
from .query import ScanHistogram, SearchState, backward_step, count, invert, profile_scans
from .rlbwt import (Alphabet, RunLengthBWT, bwt_from_sa, count_oracle, lf_array, lf_oracle,
                    prepare_text, runs_from_bwt, suffix_array)
from .splitting import SplitConfig, SplitRuns, balance, rebuild_table, split_max_length
from .table import MoveRow, MoveTable, Position, PredecessorLF

__version__ = "0.1.0"
