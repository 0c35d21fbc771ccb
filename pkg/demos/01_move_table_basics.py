"""
The move table on a small text
===============================

Builds the run-length BWT of GATTAGATACAT, prints the move table rows and
walks LF over (run, offset) pairs until the text comes back out.
"""

from movetable import MoveTable, invert
from movetable.rlbwt import lf_oracle_all

table = MoveTable.from_text(b"GATTAGATACAT")
bwt = table.expand()
print("BWT:", bwt.replace(b"\0", b"$").decode())
print(f"n = {table.n}, r = {table.r}")

# one row per run: length, destination run, destination offset, symbol
for k in range(table.r):
    length, dest_run, dest_off, sym = table.row(k)
    print(f"row {k}: head={table.run_head(k):2d} len={length} -> ({dest_run}, {dest_off})  {chr(sym) if sym else '$'}")

# LF on pairs agrees with the plain counting definition
lf = lf_oracle_all(bwt)
for i in range(table.n):
    p = table.position_to_pair(i)
    q, scan = table.lf_step_counted(p)
    assert table.pair_to_index(q) == lf[i]
    print(f"LF({i:2d}) = {lf[i]:2d}   pair {tuple(p)} -> {tuple(q)}  scanned {scan} rows")

print("inverted:", invert(table)[:-1].decode())
