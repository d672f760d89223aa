"""Random codes and decoding instances, reproducible from seeds.

A ``CodeInstance`` is an [n, k] binary code given by a full-rank random
generator matrix; a ``DecodingProblem`` is a received word at distance t
from it, optionally carrying the hidden (message, error) pair so that
experiments can score themselves.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bitmat import BitMatrix, BitVector, mat_vec, rank, solve_row_combination, vec_mat
from .errors import DimensionMismatch, InvalidParams, RankSamplingExhausted
from .rng import sample_distinct, stream

_RANK_RETRY_CAP = 64


@dataclass(frozen=True)
class CodeInstance:
    """An [n, k] binary linear code with seed provenance."""

    n: int
    k: int
    G: BitMatrix
    seed: int

    def __post_init__(self) -> None:
        if not 1 <= self.k < self.n:
            raise InvalidParams("need 1 <= k < n")
        if self.G.rows != self.k or self.G.cols != self.n:
            raise DimensionMismatch("generator shape does not match (n, k)")

    @property
    def rate(self) -> float:
        return self.k / self.n


@dataclass(frozen=True)
class DecodingProblem:
    """An instance of the computational decoding problem.

    ``hidden_e`` / ``hidden_x`` are present for seeded experiments and are
    never consulted by the decoder itself.
    """

    code: CodeInstance
    t: int
    y: BitVector
    hidden_e: BitVector | None = None
    hidden_x: BitVector | None = None

    def __post_init__(self) -> None:
        if not 0 <= self.t <= self.code.n:
            raise InvalidParams("need 0 <= t <= n")
        if self.y.n != self.code.n:
            raise DimensionMismatch("received word length does not match code")
        if self.hidden_e is not None:
            if self.hidden_e.weight() != self.t:
                raise InvalidParams("hidden error weight does not equal t")
            if self.hidden_x is None:
                raise InvalidParams("hidden_e without hidden_x")
            expected = vec_mat(self.hidden_x, self.code.G) ^ self.hidden_e
            if expected != self.y:
                raise InvalidParams("y != x.G + e for the hidden pair")


def random_code(n: int, rate: float, seed: int) -> CodeInstance:
    """Sample a uniformly random full-rank generator, deterministically.

    Resamples until full rank (a constant fraction of random matrices
    already is, so a handful of attempts suffice); identical arguments give
    an identical matrix.
    """
    if n < 4:
        raise InvalidParams("need n >= 4")
    k = round(rate * n)
    if not 2 <= k <= n - 2:
        raise InvalidParams(f"round(rate*n) = {k} outside [2, n-2]")
    for attempt in range(_RANK_RETRY_CAP):
        rng = stream(seed, "code", attempt)
        rows = tuple(rng.getrandbits(n) for _ in range(k))
        G = BitMatrix(k, n, rows)
        if rank(G) == k:
            return CodeInstance(n, k, G, seed)
    raise RankSamplingExhausted(f"no full-rank sample in {_RANK_RETRY_CAP} attempts")


def sample_problem(code: CodeInstance, t: int, seed: int) -> DecodingProblem:
    """Uniform message, uniform weight-t error, y = x.G + e."""
    if not 0 <= t <= code.n:
        raise InvalidParams("need 0 <= t <= n")
    x = BitVector(code.k, stream(seed, "message").getrandbits(code.k))
    support = sample_distinct(stream(seed, "error"), code.n, t)
    e = BitVector.from_support(code.n, support)
    y = vec_mat(x, code.G) ^ e
    return DecodingProblem(code, t, y, hidden_e=e, hidden_x=x)


def is_dual_word(code: CodeInstance, h: BitVector) -> bool:
    """True iff G.h^T = 0, i.e. h is orthogonal to every codeword."""
    if h.n != code.n:
        raise DimensionMismatch("vector length does not match code")
    return mat_vec(code.G, h).bits == 0


def recover_message(problem: DecodingProblem, e_hat: BitVector) -> BitVector | None:
    """Solve x.G = y + e_hat; None when y + e_hat is not a codeword."""
    if e_hat.n != problem.code.n:
        raise DimensionMismatch("error length does not match code")
    return solve_row_combination(problem.code.G, problem.y ^ e_hat)
