"""Synthetic texts and BWTs used by the tests, demos and benchmarks."""

from __future__ import annotations

import numpy as np

DNA = b"ACGT"
LETTERS = b"ACGTNRYK"


def random_text(n: int, sigma: int = 4, seed=None) -> bytes:
    """Uniform random text over the first *sigma* letters of ``ACGTNRYK``."""
    if not 1 <= sigma <= len(LETTERS):
        raise ValueError(f"sigma must be in [1, {len(LETTERS)}]")
    rng = np.random.default_rng(seed)
    alphabet = np.frombuffer(LETTERS[:sigma], dtype=np.uint8)
    return alphabet[rng.integers(0, sigma, n)].tobytes()


def fibonacci_word(n: int, a: bytes = b"A", b: bytes = b"C") -> bytes:
    """Prefix of length n of the infinite Fibonacci word."""
    x, y = a, a + b
    while len(y) < n:
        x, y = y, y + x
    return y[:n]


def unary(n: int, symbol: bytes = b"A") -> bytes:
    return symbol * n


def adversarial_bwt(n: int) -> bytes:
    """The BWT (bc)^(n/10) a^(4n/5): a long run forces scans of r - 1 rows."""
    if n % 10:
        raise ValueError("n must be a multiple of 10")
    return b"bc" * (n // 10) + b"a" * (4 * n // 5)


def mutate(text: bytes, rate: float, rng, alphabet: bytes = DNA) -> bytes:
    """Substitute each symbol with probability *rate* by a different letter."""
    a = np.frombuffer(text, dtype=np.uint8).copy()
    hits = np.flatnonzero(rng.random(len(a)) < rate)
    letters = np.frombuffer(alphabet, dtype=np.uint8)
    for i in hits:
        choices = letters[letters != a[i]]
        a[i] = choices[rng.integers(0, len(choices))]
    return a.tobytes()


def mutated_copies(base: bytes, copies: int = 16, rate: float = 0.001, seed=None,
                   alphabet: bytes = DNA) -> bytes:
    """Concatenate *copies* independently mutated copies of *base*."""
    rng = np.random.default_rng(seed)
    return b"".join(mutate(base, rate, rng, alphabet) for _ in range(copies))


def mutated_collection(total: int, copies: int = 16, rate: float = 0.001, seed=None) -> bytes:
    """About *total* bytes of mutated copies of a random DNA base text."""
    base = random_text(total // copies, 4, seed)
    return mutated_copies(base, copies, rate, None if seed is None else seed + 1)


def random_patterns(text: bytes, count: int, min_len: int = 1, max_len: int = 64, seed=None,
                    absent_fraction: float = 0.25, alphabet: bytes = None):
    """Substrings of *text* (terminator excluded) mixed with random, mostly absent strings."""
    rng = np.random.default_rng(seed)
    body = text[:-1] if text.endswith(b"\x00") else text
    if alphabet is None:
        alphabet = bytes(sorted(set(body))) or b"A"
    letters = np.frombuffer(alphabet, dtype=np.uint8)
    out = []
    for _ in range(count):
        length = int(rng.integers(min_len, max_len + 1))
        if rng.random() < absent_fraction or length > len(body):
            out.append(letters[rng.integers(0, len(letters), length)].tobytes())
        else:
            start = int(rng.integers(0, len(body) - length + 1))
            out.append(body[start:start + length])
    return out
