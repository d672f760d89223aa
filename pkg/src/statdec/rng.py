"""Deterministic, splittable randomness.

Every sampling routine in the package draws from a stream obtained as
``stream(master_seed, *labels)``.  A stream seed is the first 8 bytes of
SHA-256 over the canonical string ``"label0|label1|..."``, so streams keyed
by distinct (seed, label, counter) tuples are independent for all practical
purposes and identical across runs and platforms.  Parallel workers get
disjoint streams by including their worker/iteration counter in the labels.

Only ``getrandbits`` is consumed from ``random.Random`` (its output for a
given seed is guaranteed stable by the standard library); sampling helpers
built on top of it live here so results never depend on stdlib internals
that may change between Python versions.
"""

from __future__ import annotations

import hashlib
import random


def derive_seed(master: int, *labels: int | str) -> int:
    """Derive a 63-bit stream seed from a master seed and label path."""
    text = "|".join(str(x) for x in (master, *labels))
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") >> 1


def stream(master: int, *labels: int | str) -> random.Random:
    """Return a fresh generator for the (master, labels) stream."""
    return random.Random(derive_seed(master, *labels))


def randbelow(rng: random.Random, bound: int) -> int:
    """Uniform integer in [0, bound) using only getrandbits."""
    if bound <= 0:
        raise ValueError("bound must be positive")
    nbits = (bound - 1).bit_length()
    if nbits == 0:
        return 0
    while True:
        value = rng.getrandbits(nbits)
        if value < bound:
            return value


def sample_distinct(rng: random.Random, n: int, k: int) -> list[int]:
    """k distinct values from range(n), by partial Fisher-Yates."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    pool = list(range(n))
    for i in range(k):
        j = i + randbelow(rng, n - i)
        pool[i], pool[j] = pool[j], pool[i]
    return pool[:k]


def shuffled(rng: random.Random, n: int) -> list[int]:
    """A uniform permutation of range(n) (Fisher-Yates on getrandbits)."""
    perm = list(range(n))
    for i in range(n - 1, 0, -1):
        j = randbelow(rng, i + 1)
        perm[i], perm[j] = perm[j], perm[i]
    return perm
