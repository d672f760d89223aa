"""Dense GF(2) linear algebra on bit-packed vectors and matrices.

Vectors are stored as Python integers (bit ``i`` of ``bits`` is coordinate
``i``); matrices hold one packed integer per row.  The packing is an
implementation detail: every operation is specified, and tested, in per-bit
semantics.

All values are immutable after construction and safe to share across
threads; the elimination routines work on private copies.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionMismatch, SingularLeftBlock
from .rng import shuffled


@dataclass(frozen=True)
class BitVector:
    """A length-``n`` vector over GF(2), packed into an int."""

    n: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise DimensionMismatch("BitVector length must be positive")
        if not 0 <= self.bits < (1 << self.n):
            raise DimensionMismatch("bits outside the declared length")

    @classmethod
    def zeros(cls, n: int) -> "BitVector":
        return cls(n, 0)

    @classmethod
    def from_bits(cls, values: Iterable[int]) -> "BitVector":
        bits = 0
        n = 0
        for i, v in enumerate(values):
            if v & 1:
                bits |= 1 << i
            n = i + 1
        return cls(n, bits)

    @classmethod
    def from_support(cls, n: int, positions: Iterable[int]) -> "BitVector":
        bits = 0
        for p in positions:
            if not 0 <= p < n:
                raise DimensionMismatch(f"position {p} outside [0, {n})")
            bits |= 1 << p
        return cls(n, bits)

    def get(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise DimensionMismatch(f"index {i} outside [0, {self.n})")
        return (self.bits >> i) & 1

    __getitem__ = get

    def weight(self) -> int:
        return self.bits.bit_count()

    def support(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n) if (self.bits >> i) & 1)

    def dot(self, other: "BitVector") -> int:
        """Inner product modulo 2."""
        if self.n != other.n:
            raise DimensionMismatch("dot of vectors with different lengths")
        return (self.bits & other.bits).bit_count() & 1

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.n != other.n:
            raise DimensionMismatch("xor of vectors with different lengths")
        return BitVector(self.n, self.bits ^ other.bits)

    def to_bits(self) -> list[int]:
        return [(self.bits >> i) & 1 for i in range(self.n)]

    def __str__(self) -> str:
        return "".join("1" if (self.bits >> i) & 1 else "0" for i in range(self.n))


def weight(v: BitVector) -> int:
    """Hamming weight of ``v``."""
    return v.weight()


@dataclass(frozen=True)
class BitMatrix:
    """A ``rows x cols`` matrix over GF(2), one packed int per row.

    ``rows == 0`` is allowed so that degenerate blocks (an empty bottom
    block from a partial systematization with l = 0) stay representable.
    """

    rows: int
    cols: int
    row_data: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.cols < 1:
            raise DimensionMismatch("BitMatrix needs at least one column")
        if self.rows < 0 or len(self.row_data) != self.rows:
            raise DimensionMismatch("row count does not match row data")
        mask = (1 << self.cols) - 1
        for r in self.row_data:
            if r & ~mask:
                raise DimensionMismatch("row has bits beyond the column count")

    @classmethod
    def from_rows(cls, rows: Sequence[BitVector | Sequence[int]]) -> "BitMatrix":
        if not rows:
            raise DimensionMismatch("from_rows needs at least one row")
        vecs = [r if isinstance(r, BitVector) else BitVector.from_bits(r) for r in rows]
        cols = vecs[0].n
        if any(v.n != cols for v in vecs):
            raise DimensionMismatch("rows with different lengths")
        return cls(len(vecs), cols, tuple(v.bits for v in vecs))

    @classmethod
    def from_row_ints(cls, rows: Sequence[int], cols: int) -> "BitMatrix":
        return cls(len(rows), cols, tuple(rows))

    @classmethod
    def identity(cls, k: int) -> "BitMatrix":
        return cls(k, k, tuple(1 << i for i in range(k)))

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self.row_data[i])

    def get(self, i: int, j: int) -> int:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise DimensionMismatch("matrix index out of range")
        return (self.row_data[i] >> j) & 1

    def column_bits(self, j: int) -> int:
        """Column ``j`` packed into an int (bit i = entry in row i)."""
        out = 0
        for i, r in enumerate(self.row_data):
            out |= ((r >> j) & 1) << i
        return out

    def submatrix_cols(self, start: int, stop: int) -> "BitMatrix":
        width = stop - start
        mask = (1 << width) - 1
        return BitMatrix(self.rows, width, tuple((r >> start) & mask for r in self.row_data))

    def permute_cols(self, p: "Permutation") -> "BitMatrix":
        """Column-permuted copy: column ``i`` of the result is column
        ``p.images[i]`` of this matrix (the product G.P of the text)."""
        if p.n != self.cols:
            raise DimensionMismatch("permutation size does not match columns")
        new_rows = []
        for r in self.row_data:
            v = 0
            for i, src in enumerate(p.images):
                v |= ((r >> src) & 1) << i
            new_rows.append(v)
        return BitMatrix(self.rows, self.cols, tuple(new_rows))


def mat_vec(G: BitMatrix, v: BitVector) -> BitVector:
    """The product G * v^T as a length-``rows`` vector."""
    if G.rows == 0:
        raise DimensionMismatch("mat_vec on an empty matrix")
    if v.n != G.cols:
        raise DimensionMismatch("vector length does not match matrix columns")
    out = 0
    for i, r in enumerate(G.row_data):
        out |= ((r & v.bits).bit_count() & 1) << i
    return BitVector(G.rows, out)


def vec_mat(v: BitVector, G: BitMatrix) -> BitVector:
    """The product v * G (XOR of the rows selected by v)."""
    if v.n != G.rows:
        raise DimensionMismatch("vector length does not match matrix rows")
    acc = 0
    bits = v.bits
    while bits:
        i = (bits & -bits).bit_length() - 1
        acc ^= G.row_data[i]
        bits &= bits - 1
    return BitVector(G.cols, acc)


@dataclass(frozen=True)
class Permutation:
    """A permutation of [0, n); ``apply`` gathers: out[i] = v[images[i]]."""

    n: int
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.images) != self.n or sorted(self.images) != list(range(self.n)):
            raise DimensionMismatch("images is not a bijection on [0, n)")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(n, tuple(range(n)))

    @classmethod
    def random(cls, n: int, rng: random.Random) -> "Permutation":
        return cls(n, tuple(shuffled(rng, n)))

    def apply(self, v: BitVector) -> BitVector:
        if v.n != self.n:
            raise DimensionMismatch("vector length does not match permutation")
        out = 0
        for i, src in enumerate(self.images):
            out |= ((v.bits >> src) & 1) << i
        return BitVector(self.n, out)

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, src in enumerate(self.images):
            inv[src] = i
        return Permutation(self.n, tuple(inv))

    def unapply(self, v: BitVector) -> BitVector:
        """Inverse transport: unapply(apply(v)) == v.

        A dual word of the column-permuted code maps back to a dual word of
        the original code through this (the h.P^T step of the text).
        """
        return self.inverse().apply(v)


def _eliminate_on_pivots(rows: list[int], pivots: Sequence[int], n_pivots: int) -> None:
    """Row-reduce ``rows`` in place so pivot column ``pivots[a]`` carries the
    unit vector e_a for a < n_pivots.  Row swaps only; raises
    SingularLeftBlock when some pivot column has no usable row."""
    m = len(rows)
    for a in range(n_pivots):
        c = pivots[a]
        piv = None
        for i in range(a, m):
            if (rows[i] >> c) & 1:
                piv = i
                break
        if piv is None:
            raise SingularLeftBlock(f"no pivot for column {c}")
        rows[a], rows[piv] = rows[piv], rows[a]
        pr = rows[a]
        for i in range(m):
            if i != a and ((rows[i] >> c) & 1):
                rows[i] ^= pr


@dataclass(frozen=True)
class SystematicForm:
    """Result of ``systematize``: matrix is [I_k | G'] (permuted coords)."""

    matrix: BitMatrix
    transform_applied: bool

    def right_block(self) -> BitMatrix:
        k = self.matrix.rows
        return self.matrix.submatrix_cols(k, self.matrix.cols)


def systematize(G: BitMatrix, p: Permutation) -> SystematicForm:
    """Row-reduce G.P to the form [I_k | G'].

    The returned matrix is row-equivalent to G.P (same row space); only row
    swaps and row additions are used, so failure of the leading k x k block
    to be invertible raises SingularLeftBlock and the caller retries with a
    fresh permutation.
    """
    k, n = G.rows, G.cols
    if k > n:
        raise DimensionMismatch("more rows than columns")
    if p.n != n:
        raise DimensionMismatch("permutation size does not match columns")
    gp = G.permute_cols(p)
    rows = list(gp.row_data)
    _eliminate_on_pivots(rows, range(k), k)
    out = BitMatrix(k, n, tuple(rows))
    return SystematicForm(out, transform_applied=(out.row_data != gp.row_data))


@dataclass(frozen=True)
class PartialSystematicForm:
    """Block form [[I_{k-l}, G1], [0, G2]] of G.P.

    ``top`` holds the first k-l rows over all n columns; ``bottom_right``
    is G2, the last l rows restricted to the last n-k+l columns.
    """

    top: BitMatrix
    bottom_right: BitMatrix

    def g1(self) -> BitMatrix:
        split = self.top.rows
        return self.top.submatrix_cols(split, self.top.cols)


def partial_systematize(G: BitMatrix, p: Permutation, l: int) -> PartialSystematicForm:
    """Row-reduce G.P so only the first k-l columns are pivoted.

    With l = 0 this degenerates to ``systematize`` (empty G2).
    """
    k, n = G.rows, G.cols
    if not 0 <= l < k:
        raise DimensionMismatch("need 0 <= l < k")
    if p.n != n:
        raise DimensionMismatch("permutation size does not match columns")
    gp = G.permute_cols(p)
    rows = list(gp.row_data)
    _eliminate_on_pivots(rows, range(k - l), k - l)
    top = BitMatrix(k - l, n, tuple(rows[: k - l]))
    split = k - l
    width = n - split
    mask = (1 << width) - 1
    bottom = tuple((r >> split) & mask for r in rows[split:])
    # rows below the pivot block have zero support on the pivot columns
    for r in rows[split:]:
        if r & ((1 << split) - 1):
            raise AssertionError("elimination left bits in the cleared block")
    return PartialSystematicForm(top, BitMatrix(l, width, bottom) if l else BitMatrix(0, width, ()))


def parity_check_from_systematic(sysmat: BitMatrix) -> BitMatrix:
    """Dual basis of the row space of a systematic matrix [I_k | A].

    Returns the (n-k) x n matrix [A^T | I_{n-k}]; its rows generate the dual
    code of the code generated by [I_k | A].
    """
    k, n = sysmat.rows, sysmat.cols
    rows = []
    for j in range(n - k):
        h = 1 << (k + j)
        for i in range(k):
            h |= ((sysmat.row_data[i] >> (k + j)) & 1) << i
        rows.append(h)
    return BitMatrix(n - k, n, tuple(rows))


def rank(G: BitMatrix) -> int:
    """Rank over GF(2)."""
    work = list(G.row_data)
    r = 0
    for c in range(G.cols):
        piv = None
        for i in range(r, len(work)):
            if (work[i] >> c) & 1:
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        for i in range(len(work)):
            if i != r and ((work[i] >> c) & 1):
                work[i] ^= work[r]
        r += 1
        if r == len(work):
            break
    return r


def solve_row_combination(G: BitMatrix, target: BitVector) -> BitVector | None:
    """Find x with x * G == target, or None if target is not in the row space.

    When G has full row rank the solution is unique.
    """
    if target.n != G.cols:
        raise DimensionMismatch("target length does not match matrix columns")
    k = G.rows
    work = [(G.row_data[i], 1 << i) for i in range(k)]
    cur_val, cur_comb = target.bits, 0
    r = 0
    for c in range(G.cols):
        piv = None
        for i in range(r, k):
            if (work[i][0] >> c) & 1:
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        pv, pc = work[r]
        for i in range(k):
            if i != r and ((work[i][0] >> c) & 1):
                work[i] = (work[i][0] ^ pv, work[i][1] ^ pc)
        if (cur_val >> c) & 1:
            cur_val ^= pv
            cur_comb ^= pc
        r += 1
        if r == k:
            break
    if cur_val != 0:
        return None
    return BitVector(k, cur_comb)


def row_space_contains(G: BitMatrix, v: BitVector) -> bool:
    return solve_row_combination(G, v) is not None
