"""Harvesting pools of moderate-weight dual codewords.

Two producers: ``harvest_gauss`` reads dual-basis rows off random systematic
forms (retrying permutations whose pivot block is singular), and
``harvest_dumer`` runs the birthday-collision fusion on a partially
systematized form.  Both feed a ``ParityPool``: a deduplicated, weight- and
position-indexed set of equations, every one verified to be a dual codeword
on insert.

Iterations are independent given their derived RNG streams; batches from
parallel workers merge as plain set union.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

from .bitmat import BitMatrix, BitVector
from .codec import CodeInstance
from .errors import DimensionMismatch, InvalidParams, IterationCapExceeded, SingularLeftBlock
from .rng import derive_seed, shuffled, stream

DEFAULT_ITERATION_CAP = 10_000


@dataclass(frozen=True)
class HarvestProvenance:
    algorithm: str
    seed: int
    iterations: int = 0
    details: dict = field(default_factory=dict)


class ParityPool:
    """A deduplicated pool of dual codewords grouped by exact weight.

    Soundness (G.h^T = 0) and the weight window are enforced on every
    insert.  Equations are exposed in a canonical order (sorted by packed
    value) so pools merged in any order behave identically.
    """

    def __init__(self, code: CodeInstance, weight_window: tuple[int, int],
                 provenance: HarvestProvenance):
        w_lo, w_hi = weight_window
        if not 1 <= w_lo <= w_hi <= code.n:
            raise InvalidParams(f"bad weight window [{w_lo}, {w_hi}]")
        self.code = code
        self.weight_window = (w_lo, w_hi)
        self.provenance = provenance
        self._weights: dict[int, int] = {}          # packed bits -> weight
        self._by_position: list[list[int]] = [[] for _ in range(code.n)]

    @property
    def n(self) -> int:
        return self.code.n

    def __len__(self) -> int:
        return len(self._weights)

    def __contains__(self, h: BitVector) -> bool:
        return h.bits in self._weights

    def _is_dual_bits(self, bits: int) -> bool:
        for row in self.code.G.row_data:
            if (row & bits).bit_count() & 1:
                return False
        return True

    def add(self, h: BitVector) -> bool:
        """Insert one equation; False when it was already present."""
        if h.n != self.code.n:
            raise DimensionMismatch("equation length does not match code")
        w = h.weight()
        if not self.weight_window[0] <= w <= self.weight_window[1]:
            raise InvalidParams(f"weight {w} outside window {self.weight_window}")
        if not self._is_dual_bits(h.bits):
            raise InvalidParams("not a dual codeword of this pool's code")
        if h.bits in self._weights:
            return False
        self._weights[h.bits] = w
        bits = h.bits
        while bits:
            i = (bits & -bits).bit_length() - 1
            self._by_position[i].append(h.bits)
            bits &= bits - 1
        return True

    def equations(self) -> tuple[BitVector, ...]:
        n = self.code.n
        return tuple(BitVector(n, b) for b in sorted(self._weights))

    def weights_present(self) -> tuple[int, ...]:
        return tuple(sorted(set(self._weights.values())))

    def weight_histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for w in self._weights.values():
            hist[w] = hist.get(w, 0) + 1
        return dict(sorted(hist.items()))

    def position_index(self, i: int) -> tuple[BitVector, ...]:
        """All equations with a 1 at position i, canonical order."""
        if not 0 <= i < self.code.n:
            raise DimensionMismatch(f"position {i} outside [0, {self.code.n})")
        n = self.code.n
        return tuple(BitVector(n, b) for b in sorted(self._by_position[i]))

    def slice_bits(self, i: int, w: int | tuple[int, int] | None = None) -> list[int]:
        """Packed variant of pool_slice, for hot loops."""
        if not 0 <= i < self.code.n:
            raise DimensionMismatch(f"position {i} outside [0, {self.code.n})")
        if w is None:
            lo, hi = self.weight_window
        elif isinstance(w, tuple):
            lo, hi = w
        else:
            lo = hi = w
        return sorted(b for b in self._by_position[i] if lo <= self._weights[b] <= hi)

    def min_coverage(self, w: int | tuple[int, int] | None = None) -> int:
        return min(len(self.slice_bits(i, w)) for i in range(self.code.n))

    def merge_from(self, other: "ParityPool") -> int:
        """Set union with another pool over the same code; returns the
        number of new equations.  Windows are widened to the hull."""
        if (other.code.n, other.code.k, other.code.seed) != (self.code.n, self.code.k, self.code.seed):
            raise InvalidParams("pools built on different codes")
        self.weight_window = (min(self.weight_window[0], other.weight_window[0]),
                              max(self.weight_window[1], other.weight_window[1]))
        added = 0
        for bits, w in other._weights.items():
            if bits in self._weights:
                continue
            self._weights[bits] = w
            b = bits
            while b:
                i = (b & -b).bit_length() - 1
                self._by_position[i].append(bits)
                b &= b - 1
            added += 1
        return added


def pool_slice(pool: ParityPool, i: int, w: int | tuple[int, int] | None = None) -> list[BitVector]:
    """Equations through position i with weight w (or in a window), in
    deterministic (sorted) order."""
    n = pool.n
    return [BitVector(n, b) for b in pool.slice_bits(i, w)]


def _dual_rows_for_permutation(G: BitMatrix, images: list[int]) -> list[int] | None:
    """One Gaussian-elimination iteration, already un-permuted.

    Equivalent to: systematize(G, perm) -> [I_k | G'], read the dual basis
    [G'^T | I_{n-k}], and transport each row back through the permutation.
    Working directly on G with the pivot order given by the permutation
    avoids materializing the column-permuted matrix; the outputs are
    bit-identical to the literal pipeline.  None signals a singular pivot
    block (caller draws a fresh permutation).
    """
    k, n = G.rows, G.cols
    rows = list(G.row_data)
    for a in range(k):
        c = images[a]
        piv = None
        for i in range(a, k):
            if (rows[i] >> c) & 1:
                piv = i
                break
        if piv is None:
            return None
        rows[a], rows[piv] = rows[piv], rows[a]
        pr = rows[a]
        for i in range(k):
            if i != a and ((rows[i] >> c) & 1):
                rows[i] ^= pr
    masks = [1 << images[a] for a in range(k)]
    out = []
    for b in range(k, n):
        c = images[b]
        h = 1 << c
        for a in range(k):
            if (rows[a] >> c) & 1:
                h |= masks[a]
        out.append(h)
    return out


def harvest_gauss(code: CodeInstance, w_window: tuple[int, int], target: int, seed: int,
                  iteration_cap: int = DEFAULT_ITERATION_CAP) -> ParityPool:
    """Collect dual-basis rows whose weight falls in ``w_window``.

    Each iteration draws a fresh permutation, systematizes, and keeps the
    matching rows of the parity-check matrix (transported back to the
    original coordinates).  Singular pivot blocks count as iterations and
    are retried, per the retry-on-failure reading of the source algorithm.
    Raises IterationCapExceeded carrying the partial pool when the cap is
    hit first.
    """
    if target < 1:
        raise InvalidParams("target must be >= 1")
    if w_window[0] < 1:
        raise InvalidParams("weight window must start at 1 or above")
    pool = ParityPool(code, w_window, HarvestProvenance("gauss", seed))
    n = code.n
    w_lo, w_hi = w_window
    iterations = 0
    singular = 0
    while len(pool) < target:
        if iterations >= iteration_cap:
            pool.provenance = HarvestProvenance(
                "gauss", seed, iterations,
                {"singular_retries": singular, "weight_histogram": pool.weight_histogram()})
            raise IterationCapExceeded(
                f"pool has {len(pool)}/{target} equations after {iterations} permutations",
                pool=pool,
                diagnostics={"iterations": iterations, "singular_retries": singular})
        rng = stream(seed, "perm", iterations)
        iterations += 1
        images = shuffled(rng, n)
        rows = _dual_rows_for_permutation(code.G, images)
        if rows is None:
            singular += 1
            continue
        for bits in rows:
            if w_lo <= bits.bit_count() <= w_hi:
                pool.add(BitVector(n, bits))
                if len(pool) >= target:
                    break
    pool.provenance = HarvestProvenance(
        "gauss", seed, iterations,
        {"singular_retries": singular})
    return pool


@dataclass(frozen=True)
class DumerConfig:
    """Collision-search parameters: syndrome length l and collision weight r.

    r is split evenly across the two halves of the free block, so it must
    be even and the free block n - k + l must have even length.
    """

    l: int
    r: int

    def validate(self, code: CodeInstance) -> None:
        n, k = code.n, code.k
        if self.l < 0 or self.l > k - 1:
            raise InvalidParams("need 0 <= l <= k-1")
        if self.r < 2 or self.r % 2 != 0:
            raise InvalidParams("r must be an even integer >= 2")
        free = n - k + self.l
        if free % 2 != 0:
            raise InvalidParams(f"free block length {free} must be even")
        if self.r // 2 > free // 2:
            raise InvalidParams("r/2 exceeds half the free block")

    def half_width(self, code: CodeInstance) -> int:
        return (code.n - code.k + self.l) // 2

    def expected_collisions(self, code: CodeInstance) -> float:
        """Mean emitted count per iteration: C(half, r/2)^2 / 2^l."""
        half = self.half_width(code)
        return math.comb(half, self.r // 2) ** 2 / 2.0 ** self.l

    def list_size(self, code: CodeInstance) -> int:
        return math.comb(self.half_width(code), self.r // 2)


_SINGULAR_RETRY_CAP = 512


def dumer_iteration(code: CodeInstance, cfg: DumerConfig, seed: int) -> list[tuple[BitVector, int]]:
    """One fusion pass: returns (equation, weight) pairs, already
    transported to the original coordinates.

    A permutation is drawn and the generator is put in the block form
    [[I_{k-l}, G1], [0, G2]]; G2 is split column-wise in half, a hash index
    of G2^(1) e1^T over all weight-r/2 half-vectors e1 is probed with
    G2^(2) e2^T, and each collision e = (e1, e2) yields the dual word
    (e G1^T, e) mapped back through the permutation.  Every output has
    weight r plus the weight of e G1^T.
    """
    cfg.validate(code)
    n, k, l = code.n, code.k, cfg.l
    for attempt in range(_SINGULAR_RETRY_CAP):
        rng = stream(seed, "perm", attempt)
        images = shuffled(rng, n)
        rows = list(code.G.row_data)
        try:
            _partial_eliminate(rows, images, k, l)
        except SingularLeftBlock:
            continue
        return _fuse(rows, images, n, k, cfg)
    raise SingularLeftBlock(f"no invertible pivot block in {_SINGULAR_RETRY_CAP} attempts")


def _partial_eliminate(rows: list[int], images: list[int], k: int, l: int) -> None:
    for a in range(k - l):
        c = images[a]
        piv = None
        for i in range(a, k):
            if (rows[i] >> c) & 1:
                piv = i
                break
        if piv is None:
            raise SingularLeftBlock(f"no pivot for column {c}")
        rows[a], rows[piv] = rows[piv], rows[a]
        pr = rows[a]
        for i in range(k):
            if i != a and ((rows[i] >> c) & 1):
                rows[i] ^= pr


def _fuse(rows: list[int], images: list[int], n: int, k: int, cfg: DumerConfig) -> list[tuple[BitVector, int]]:
    l, r = cfg.l, cfg.r
    free = images[k - l:]                      # non-pivot columns, n-k+l of them
    half = len(free) // 2
    # columns of G2 = bottom l rows on the free block, packed as l-bit ints
    cols = []
    for c in free:
        v = 0
        for j in range(l):
            v |= ((rows[k - l + j] >> c) & 1) << j
        cols.append(v)
    index: dict[int, list[tuple[int, ...]]] = {}
    for sup1 in combinations(range(half), r // 2):
        x = 0
        for s in sup1:
            x ^= cols[s]
        index.setdefault(x, []).append(sup1)
    top_masks = [1 << images[a] for a in range(k - l)]
    out: list[tuple[BitVector, int]] = []
    for sup2 in combinations(range(half, 2 * half), r // 2):
        x = 0
        for s in sup2:
            x ^= cols[s]
        bucket = index.get(x)
        if not bucket:
            continue
        for sup1 in bucket:
            positions = sup1 + sup2
            h = 0
            for idx in positions:
                h |= 1 << free[idx]
            extra = 0
            for a in range(k - l):
                par = 0
                row = rows[a]
                for idx in positions:
                    par ^= (row >> free[idx]) & 1
                if par:
                    h |= top_masks[a]
                    extra += 1
            out.append((BitVector(n, h), r + extra))
    return out


def default_dumer_window(code: CodeInstance, cfg: DumerConfig) -> tuple[int, int]:
    """Window centered at r + (k-l)/2, about two standard deviations wide
    (the extra weight is binomial over k-l coordinates)."""
    center = cfg.r + (code.k - cfg.l) / 2.0
    hw = math.ceil(math.sqrt(code.k - cfg.l))
    lo = max(1, math.floor(center - hw))
    hi = min(code.n, math.ceil(center + hw))
    return lo, hi


def harvest_dumer(code: CodeInstance, cfg: DumerConfig, target: int, seed: int,
                  w_window: tuple[int, int] | None = None,
                  iteration_cap: int = DEFAULT_ITERATION_CAP) -> ParityPool:
    """Run fusion passes under fresh permutations until the pool reaches
    ``target`` equations inside the window; deduplicates across passes."""
    cfg.validate(code)
    if target < 1:
        raise InvalidParams("target must be >= 1")
    if w_window is None:
        w_window = default_dumer_window(code, cfg)
    pool = ParityPool(code, w_window, HarvestProvenance("dumer", seed))
    w_lo, w_hi = w_window
    iterations = 0
    raw_emitted = 0
    raw_weight_hist: dict[int, int] = {}
    while len(pool) < target:
        if iterations >= iteration_cap:
            pool.provenance = HarvestProvenance(
                "dumer", seed, iterations,
                {"l": cfg.l, "r": cfg.r, "raw_emitted": raw_emitted,
                 "raw_weight_histogram": dict(sorted(raw_weight_hist.items()))})
            raise IterationCapExceeded(
                f"pool has {len(pool)}/{target} equations after {iterations} iterations",
                pool=pool,
                diagnostics={"iterations": iterations,
                             "raw_weight_histogram": dict(sorted(raw_weight_hist.items()))})
        emitted = dumer_iteration(code, cfg, derive_iteration_seed(seed, iterations))
        iterations += 1
        raw_emitted += len(emitted)
        for h, w in emitted:
            raw_weight_hist[w] = raw_weight_hist.get(w, 0) + 1
            if w_lo <= w <= w_hi:
                pool.add(h)
        # expected collisions per pass can round to zero; the cap bounds us
    pool.provenance = HarvestProvenance(
        "dumer", seed, iterations,
        {"l": cfg.l, "r": cfg.r, "raw_emitted": raw_emitted,
         "mean_collisions": raw_emitted / iterations if iterations else 0.0,
         "predicted_collisions": cfg.expected_collisions(code),
         "raw_weight_histogram": dict(sorted(raw_weight_hist.items()))})
    return pool


def derive_iteration_seed(seed: int, iteration: int) -> int:
    """Stable per-iteration sub-seed (kept separate so parallel workers can
    partition the iteration counter space)."""
    return derive_seed(seed, "dumer-iter", iteration)
