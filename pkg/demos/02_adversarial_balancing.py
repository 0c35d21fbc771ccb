"""
Why balancing matters
=====================

The BWT (bc)^(n/10) a^(4n/5) sends most LF steps from the long run of a's
into a destination interval covering almost every row, so the forward scan
visits r - 1 rows. Balancing with d = 2 adds a bounded number of extra run
heads and caps every scan below 2d.
"""

import numpy as np

from movetable import SplitConfig, MoveTable
from movetable.build import table_from_bwt
from movetable.corpora import adversarial_bwt

n = 10_000
bwt = adversarial_bwt(n)


def scan_profile(table):
    scans = np.array([table.lf_step_counted(table.position_to_pair(i))[1] for i in range(table.n)])
    return scans.max(), np.bincount(scans)


plain = MoveTable.from_bwt(bwt)
worst, hist = scan_profile(plain)
print(f"unsplit: r = {plain.r}, max scan = {worst}, steps scanning >= r-1: {hist[plain.r - 1:].sum()} of {n}")

# cutting runs at ceil(n/r) happens to help on this string, but carries no bound in general
split = table_from_bwt(bwt, SplitConfig.max_length(1))
print(f"max-length split: rows = {split.r}, max scan = {scan_profile(split)[0]}")

for d in (2, 3, 4):
    bal = table_from_bwt(bwt, SplitConfig.balanced(d))
    worst, hist = scan_profile(bal)
    print(f"balanced d={d}: rows = {bal.r} (bound {d * plain.r // (d - 1)}), max scan = {worst} (< {2 * d}), "
          f"histogram {hist.tolist()}")
