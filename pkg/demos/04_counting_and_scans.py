"""
Counting patterns and watching the scans
========================================

Backward search over a mutated-copies collection, checked against a plain
substring count, followed by the scan-length histogram of every LF step the
queries took.
"""

from movetable import build_index, count, profile_scans
from movetable.corpora import mutated_collection, random_patterns
from movetable.rlbwt import count_oracle, prepare_text

data = mutated_collection(200_000, copies=16, rate=0.001, seed=4)
text = prepare_text(data)
index = build_index(data, backend="blocked", block_size=4096, encoding="interp")

patterns = random_patterns(text, 500, 1, 64, seed=1)
for p in patterns[:8]:
    print(f"{p.decode():<64} {count(index, p):>5}")

wrong = sum(count(index, p) != count_oracle(text, p) for p in patterns)
print(f"{len(patterns)} patterns, {wrong} disagreements with the substring count")

hist = profile_scans(index, patterns)
print(f"{hist.total_steps} LF steps, {100 * hist.fraction(0):.1f}% without any scan")
print(hist.to_csv())
