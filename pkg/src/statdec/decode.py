"""Majority-vote statistical decoding.

``decode_single_weight`` is the plain voter: for each position it sums
sgn(eps1-eps0) <y, h> over the pool equations through that position and
compares against the midpoint threshold m sgn(eps1-eps0) (1+eps0+eps1)/2.
``decode_multi_weight`` is the Neyman-Pearson refinement that weights each
equation by its weight-class gap eps0(j) - eps1(j) and thresholds at the
midpoint of the two hypothesis means.

Decisions are taken in exact rational arithmetic (the biases are exact), so
ties are well defined: a tied statistic decides 1, matching the strict
"less than the threshold means 0" reading of the single-weight rule.  The
decoder never looks at the hidden error; scoring happens in the caller.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .bias import BiasPair, exact_biases
from .bitmat import BitVector
from .codec import DecodingProblem
from .errors import EmptySlice, InvalidParams, ZeroBias
from .harvest import ParityPool

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class PositionStats:
    """Per-position vote record.

    In single-weight mode ``v`` is the integer signed counter (|v| <= m);
    in multi-weight mode it is the float value of the weighted statistic.
    ``margin`` is |v - threshold| / m.
    """

    i: int
    m: int
    v: float
    threshold: float
    decided_bit: int
    margin: float


@dataclass(frozen=True)
class WeightClassStats:
    """One weight class at one position: gap delta = eps0 - eps1 and its
    additive contribution m delta^2 to the error exponent."""

    weight: int
    m: int
    eps0: Fraction
    eps1: Fraction

    @property
    def delta(self) -> Fraction:
        return self.eps0 - self.eps1

    @property
    def contribution(self) -> Fraction:
        return self.m * self.delta * self.delta


@dataclass(frozen=True)
class DecodeResult:
    e_hat: BitVector
    per_position: tuple[PositionStats, ...]
    predicted_fail_prob: float
    success: bool | None
    mode: str
    t_used: int
    t_mismatch: bool
    weight: int | None = None
    classes_by_position: tuple[tuple[WeightClassStats, ...], ...] | None = None


def predicted_error_single(m: int, bias: BiasPair) -> float:
    """Chernoff bound 2 * 2^(-m delta^2 / (2 ln 2)) on one position's error.

    Vacuous (value 2) at m = 0; monotone decreasing in m.
    """
    if m < 0:
        raise InvalidParams("m must be >= 0")
    if bias.delta == 0:
        return 2.0
    exponent = -m * (2.0 ** -bias.log2_pw) / (2.0 * _LN2)
    return 2.0 * 2.0**exponent


def _vote_single(m: int, ones: int, bias: BiasPair) -> tuple[int, Fraction, int, float]:
    """(V, threshold, bit, margin) for one position's counter.

    V = sgn * ones; the threshold is m sgn (1+eps0+eps1)/2; a tie decides 1.
    """
    sgn = 1 if bias.delta > 0 else -1
    v = sgn * ones
    threshold = Fraction(m * sgn) * (1 + bias.eps0 + bias.eps1) / 2
    bit = 1 if Fraction(v) >= threshold else 0
    margin = abs(v - float(threshold)) / m if m else 0.0
    return v, threshold, bit, margin


def decode_single_weight(problem: DecodingProblem, pool: ParityPool, w: int,
                         t: int | None = None) -> DecodeResult:
    """Algorithmic majority vote over the weight-w equations of the pool.

    ``t`` defaults to the problem's declared error weight; passing a
    different value is allowed for misspecification experiments and flagged
    in the result.
    """
    code = problem.code
    if pool.code.seed != code.seed or pool.n != code.n:
        raise InvalidParams("pool was built for a different code")
    t_used = problem.t if t is None else t
    bias = exact_biases(code.n, w, t_used)
    if bias.delta == 0:
        raise ZeroBias(f"eps1 == eps0 at (n={code.n}, w={w}, t={t_used})")
    y = problem.y.bits
    stats = []
    e_bits = 0
    m_min = None
    for i in range(code.n):
        slice_bits = pool.slice_bits(i, w)
        m = len(slice_bits)
        if m == 0:
            raise EmptySlice(i)
        ones = 0
        for h in slice_bits:
            ones += (h & y).bit_count() & 1
        v, threshold, bit, margin = _vote_single(m, ones, bias)
        stats.append(PositionStats(i, m, v, float(threshold), bit, margin))
        if bit:
            e_bits |= 1 << i
        m_min = m if m_min is None else min(m_min, m)
    e_hat = BitVector(code.n, e_bits)
    predicted = code.n * predicted_error_single(m_min, bias)
    success = None if problem.hidden_e is None else (e_hat == problem.hidden_e)
    return DecodeResult(e_hat, tuple(stats), predicted, success, "single",
                        t_used, t_used != problem.t, weight=w)


def decode_multi_weight(problem: DecodingProblem, pool: ParityPool,
                        t: int | None = None,
                        w_window: tuple[int, int] | None = None) -> DecodeResult:
    """Weighted vote across all weight classes present in the pool.

    Per position, V = sum_j (eps0(j)-eps1(j)) * ones_j is compared with the
    midpoint of its means under the two hypotheses; the per-position error
    bound is the Hoeffding tail 2 exp(-(1/2) sum_j m_j (eps0(j)-eps1(j))^2)
    and the reported failure probability is their sum (union bound).
    """
    code = problem.code
    if pool.code.seed != code.seed or pool.n != code.n:
        raise InvalidParams("pool was built for a different code")
    t_used = problem.t if t is None else t
    weights = [w for w in pool.weights_present()
               if w_window is None or w_window[0] <= w <= w_window[1]]
    if not weights:
        raise InvalidParams("no weight class inside the requested window")
    biases = {w: exact_biases(code.n, w, t_used) for w in weights}
    y = problem.y.bits
    stats = []
    classes_all = []
    e_bits = 0
    predicted = 0.0
    for i in range(code.n):
        v = Fraction(0)
        mid = Fraction(0)
        m_total = 0
        exponent = 0.0
        classes = []
        for w in weights:
            slice_bits = pool.slice_bits(i, w)
            m_j = len(slice_bits)
            if m_j == 0:
                continue
            b = biases[w]
            delta_j = b.eps0 - b.eps1
            ones = 0
            for h in slice_bits:
                ones += (h & y).bit_count() & 1
            v += delta_j * ones
            # midpoint of E_0 and E_1: m_j delta_j (1 + eps0 + eps1) / 2
            mid += Fraction(m_j) * delta_j * (1 + b.eps0 + b.eps1) / 2
            m_total += m_j
            classes.append(WeightClassStats(w, m_j, b.eps0, b.eps1))
            d = float(delta_j)
            exponent += m_j * d * d
        if m_total == 0:
            raise EmptySlice(i)
        if all(c.delta == 0 for c in classes):
            raise ZeroBias(f"all weight classes carry zero bias at position {i}")
        bit = 1 if v <= mid else 0
        if bit:
            e_bits |= 1 << i
        margin = abs(float(v - mid)) / m_total
        stats.append(PositionStats(i, m_total, float(v), float(mid), bit, margin))
        classes_all.append(tuple(classes))
        predicted += 2.0 * math.exp(-0.5 * exponent)
    e_hat = BitVector(code.n, e_bits)
    success = None if problem.hidden_e is None else (e_hat == problem.hidden_e)
    return DecodeResult(e_hat, tuple(stats), predicted, success, "multi",
                        t_used, t_used != problem.t,
                        classes_by_position=tuple(classes_all))


def dominant_weight(classes: list[WeightClassStats] | tuple[WeightClassStats, ...]) -> int:
    """The weight whose class maximizes m_j (eps0(j)-eps1(j))^2.

    Ties break toward the smaller weight.
    """
    usable = [c for c in classes if c.m > 0]
    if not usable:
        raise InvalidParams("no weight class with m > 0")
    best = max(usable, key=lambda c: (c.contribution, -c.weight))
    return best.weight
