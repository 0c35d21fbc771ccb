"""
Compressing the table
=====================

The blocked representation keeps lengths and offsets as DACs and encodes
each block's per-symbol destination lists in one of three ways. This script
shows the worked bit-vector example and the size of each variant on a
repetitive collection.
"""

from movetable import build_index
from movetable.io import dumps
from movetable.corpora import mutated_collection
from movetable.encodings import encode_bv, decode_bv

enc = encode_bv([11, 16, 19, 21])
print("M = [11, 16, 19, 21] ->", enc.bits.to_string(), "base", enc.base)
print("third element:", decode_bv(enc, 2))

data = mutated_collection(400_000, copies=16, rate=0.001, seed=3)
move = build_index(data)
print(f"n = {move.n}, r = {move.r}, n/r = {move.n / move.r:.1f}")
print(f"{'move table':>22}: {len(dumps(move)):>9} bytes")
for encoding in ("bv", "dac", "interp"):
    for block_size in (256, 1 << 20):
        idx = build_index(data, backend="blocked", block_size=block_size, encoding=encoding)
        print(f"{encoding + ' B=' + str(block_size):>22}: {len(dumps(idx)):>9} bytes")
