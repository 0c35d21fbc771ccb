"""
Index files
===========

Saves a balanced blocked index, loads it back and checks that the two give
the same answers. Corrupt files fail with a specific error.
"""

import os
import tempfile

from movetable import SplitConfig, build_index, count, invert, load, save
from movetable.corpora import random_text
from movetable.serial import IndexFormatError

data = random_text(5000, 4, seed=5) * 4
index = build_index(data, SplitConfig.balanced(3), backend="blocked", block_size=128, encoding="dac")

with tempfile.TemporaryDirectory() as tmp:
    path = os.path.join(tmp, "demo.idx")
    size = save(index, path)
    print(f"wrote {size} bytes for n = {index.n}, rows = {index.r}")
    back = load(path)
    for p in (b"ACGT", b"GATTACA", data[100:130]):
        print(p.decode(), count(index, p), count(back, p))
    assert invert(back)[:-1] == data

    with open(path, "r+b") as fh:
        fh.write(b"JUNK")
    try:
        load(path)
    except IndexFormatError as exc:
        print(type(exc).__name__ + ":", exc)
