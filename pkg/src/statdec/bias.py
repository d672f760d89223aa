"""Parity-check sum biases: exact values, Krawtchouk identities, binomial
model, and the equation-count calculus built on them.

Everything that feeds an exponent is computed in unbounded-integer
rationals; eps1 - eps0 is an alternating sum that cancels catastrophically
in floating point, so floats only appear in derived views (log2 values,
Chernoff bounds).  For a weight-w check through position i drawn uniformly
from the weight-w words, q1 (resp. q0) is the probability that the check
sums to 1 on the received word given that position i is (resp. is not) in
error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .errors import DegenerateBase, InvalidParams, ZeroBias
from .rng import derive_seed

_HALF = Fraction(1, 2)


def log2_int(x: int) -> float:
    """log2 of a positive integer, exact-ish for arbitrarily large values."""
    if x <= 0:
        raise InvalidParams("log2_int needs a positive integer")
    if x < (1 << 53):
        return math.log2(x)
    shift = x.bit_length() - 53
    return shift + math.log2(x >> shift)


def log2_fraction(fr: Fraction) -> float:
    """log2 |fr| without overflowing on huge numerators/denominators."""
    if fr == 0:
        raise InvalidParams("log2 of zero")
    return log2_int(abs(fr.numerator)) - log2_int(fr.denominator)


@dataclass(frozen=True)
class BiasPair:
    """Exact biases for weight-w checks against weight-t errors.

    delta = eps1 - eps0 and log2_pw = -2 log2 |delta| (so 2**log2_pw is the
    P_w equation-count scale); log2_pw is +inf when delta = 0.
    """

    n: int
    w: int
    t: int
    q0: Fraction
    q1: Fraction
    eps0: Fraction
    eps1: Fraction

    @property
    def delta(self) -> Fraction:
        return self.eps1 - self.eps0

    @property
    def log2_pw(self) -> float:
        if self.delta == 0:
            return math.inf
        return -2.0 * log2_fraction(self.delta)


def _validate_nwt(n: int, w: int, t: int) -> None:
    if n < 1:
        raise InvalidParams("need n >= 1")
    if not 1 <= w <= n:
        raise InvalidParams(f"need 1 <= w <= n, got w={w}")
    if not 0 <= t <= n:
        raise InvalidParams(f"need 0 <= t <= n, got t={t}")


def exact_biases(n: int, w: int, t: int) -> BiasPair:
    """The two conditional probabilities as exact rationals.

    q1 sums the even-overlap terms C(t-1,j) C(n-t,w-1-j), q0 the odd-overlap
    terms C(t,j) C(n-t-1,w-1-j), both over the common denominator
    C(n-1,w-1).  Conditioning on an error (no error) at the position is
    vacuous when t = 0 (t = n); the corresponding probability is 0 by
    convention.
    """
    _validate_nwt(n, w, t)
    denom = comb(n - 1, w - 1)
    if t >= 1:
        q1_num = sum(comb(t - 1, j) * comb(n - t, w - 1 - j) for j in range(0, w, 2))
    else:
        q1_num = 0
    if t <= n - 1:
        q0_num = sum(comb(t, j) * comb(n - t - 1, w - 1 - j) for j in range(1, w, 2))
    else:
        q0_num = 0
    q0 = Fraction(q0_num, denom)
    q1 = Fraction(q1_num, denom)
    return BiasPair(n, w, t, q0, q1, q0 - _HALF, q1 - _HALF)


@dataclass(frozen=True)
class KrawtchoukValue:
    v: int
    m: int
    s: int
    value: Fraction


def krawtchouk(v: int, m: int, s: int) -> KrawtchoukValue:
    """Evaluate p_v^m(s) = (-1)^v 2^-v sum_j (-1)^j C(s,j) C(m-s,v-j)."""
    if not 0 <= v <= m:
        raise InvalidParams("need 0 <= v <= m")
    if not 0 <= s <= m:
        raise InvalidParams("need 0 <= s <= m")
    total = 0
    for j in range(0, v + 1):
        term = comb(s, j) * comb(m - s, v - j)
        total += -term if j & 1 else term
    if v & 1:
        total = -total
    return KrawtchoukValue(v, m, s, Fraction(total, 1 << v))


def biases_via_krawtchouk(n: int, w: int, t: int) -> BiasPair:
    """The same biases through the Krawtchouk identities.

    eps1 = -(-2)^(w-2) p_{w-1}^{n-1}(t-1) / C(n-1,w-1) and
    eps0 =  (-2)^(w-2) p_{w-1}^{n-1}(t)   / C(n-1,w-1); at w = 1 the factor
    (-2)^(w-2) is the exact rational -1/2, which keeps both identities
    literal.  Must agree with exact_biases as rationals; requires
    1 <= t <= n-1 so both polynomial arguments are in range.
    """
    _validate_nwt(n, w, t)
    if not 1 <= t <= n - 1:
        raise InvalidParams("the Krawtchouk route needs 1 <= t <= n-1")
    denom = comb(n - 1, w - 1)
    factor = Fraction((-2) ** (w - 2)) if w >= 2 else Fraction(-1, 2)
    eps1 = -factor * krawtchouk(w - 1, n - 1, t - 1).value / denom
    eps0 = factor * krawtchouk(w - 1, n - 1, t).value / denom
    return BiasPair(n, w, t, _HALF + eps0, _HALF + eps1, eps0, eps1)


def vandermonde_normalizer_holds(n: int, w: int, t: int) -> bool:
    """Check sum_j C(t-1,j) C(n-t,w-1-j) == C(n-1,w-1) (needs t >= 1)."""
    if t < 1:
        raise InvalidParams("normalizer check needs t >= 1")
    total = sum(comb(t - 1, j) * comb(n - t, w - 1 - j) for j in range(0, w))
    return total == comb(n - 1, w - 1)


def binomial_biases(n: int, w: int, t: int) -> tuple[float, float]:
    """(eps0, eps1) in the i.i.d. Bernoulli(w/n) coordinate model.

    eps0 = -(1-2w/n)^t / 2 and eps1 = (1-2w/n)^(t-1) / 2.  Plain floats; use
    binomial_delta_log2 for parameter ranges where the powers underflow.
    """
    if not 1 <= w <= n:
        raise InvalidParams("need 1 <= w <= n")
    if t < 1:
        raise InvalidParams("need t >= 1")
    base = 1.0 - 2.0 * w / n
    return -(base**t) / 2.0, (base ** (t - 1)) / 2.0


def binomial_delta_log2(n: int, w: int, t: int) -> float:
    """log2 |eps1 - eps0| in the binomial model, computed in the log domain.

    eps1 - eps0 = (1-2w/n)^(t-1) (1 + (1-2w/n)) / 2, so the log form stays
    finite where the direct powers underflow.
    """
    if not 1 <= w <= n:
        raise InvalidParams("need 1 <= w <= n")
    if t < 1:
        raise InvalidParams("need t >= 1")
    base = 1.0 - 2.0 * w / n
    if base == 0.0:
        if t == 1:
            return -1.0  # delta = 1/2 exactly
        raise DegenerateBase("w = n/2 makes the binomial delta vanish for t >= 2")
    return (t - 1) * math.log2(abs(base)) + math.log2(1.0 + base) - 1.0


def jmin(n: int, w: int, t: int) -> float:
    """log2 of the iterative-decoder equation count (1-2w/n)^(-2(t-1))."""
    if t < 1:
        raise InvalidParams("need t >= 1")
    if 2 * w >= n:
        raise DegenerateBase("need w < n/2")
    return -2.0 * (t - 1) * math.log2(1.0 - 2.0 * w / n)


def required_equations(bias: BiasPair, target_fail_prob: float, positions: int = 1) -> int:
    """Smallest m with positions * 2 * 2^(-m delta^2 / (2 ln 2)) <= target.

    This inverts the Chernoff tail of the vote statistic, union-bounded over
    ``positions`` simultaneous decisions.
    """
    if not 0.0 < target_fail_prob < 1.0:
        raise InvalidParams("target failure probability must be in (0, 1)")
    if positions < 1:
        raise InvalidParams("positions must be >= 1")
    if bias.delta == 0:
        raise ZeroBias(f"eps1 == eps0 at (n={bias.n}, w={bias.w}, t={bias.t})")
    # m >= 2 ln 2 * log2(2 p / target) / delta^2, with delta^2 in log domain
    need_bits = math.log2(2.0 * positions / target_fail_prob)
    m = math.ceil(2.0 * math.log(2.0) * need_bits * (2.0 ** bias.log2_pw))
    return max(m, 1)


@dataclass(frozen=True)
class McBiasEstimate:
    q0_hat: float
    q1_hat: float
    stderr0: float
    stderr1: float
    samples: int


def _fixed_weight_indicators(rng: np.random.Generator, rows: int, width: int, k: int) -> np.ndarray:
    """rows x width boolean array, each row a uniform k-subset indicator."""
    if k == 0:
        return np.zeros((rows, width), dtype=bool)
    u = rng.random((rows, width))
    kth = np.partition(u, k - 1, axis=1)[:, k - 1 : k]
    return u <= kth


def mc_estimate_biases(n: int, w: int, t: int, samples: int, seed: int) -> McBiasEstimate:
    """Monte-Carlo q0/q1 with h uniform on the weight-w words through i
    and e uniform of weight t with the bit at i forced.

    Fresh (h, e) each trial; the estimator is embarrassingly parallel and
    deterministic in (parameters, seed).
    """
    _validate_nwt(n, w, t)
    if samples < 1:
        raise InvalidParams("need samples >= 1")
    rng1 = np.random.default_rng(derive_seed(seed, "mc-bias", "q1"))
    rng0 = np.random.default_rng(derive_seed(seed, "mc-bias", "q0"))
    ones1 = 0
    ones0 = 0
    chunk = 1 << 15
    done = 0
    while done < samples:
        m = min(chunk, samples - done)
        # q1 side: e_i = 1, so t-1 error positions among the other n-1;
        # the forced coordinate contributes 1 to the inner product.
        h_ind = _fixed_weight_indicators(rng1, m, n - 1, w - 1)
        if t >= 1:
            e_ind = _fixed_weight_indicators(rng1, m, n - 1, t - 1)
            par1 = (np.sum(h_ind & e_ind, axis=1) + 1) & 1
            ones1 += int(par1.sum())
        # q0 side: e_i = 0, t error positions among the other n-1.
        h_ind = _fixed_weight_indicators(rng0, m, n - 1, w - 1)
        if t <= n - 1:
            e_ind = _fixed_weight_indicators(rng0, m, n - 1, t)
            par0 = np.sum(h_ind & e_ind, axis=1) & 1
            ones0 += int(par0.sum())
        done += m
    q1_hat = ones1 / samples if t >= 1 else 0.0
    q0_hat = ones0 / samples if t <= n - 1 else 0.0
    se1 = math.sqrt(q1_hat * (1.0 - q1_hat) / samples)
    se0 = math.sqrt(q0_hat * (1.0 - q0_hat) / samples)
    return McBiasEstimate(q0_hat, q1_hat, se0, se1, samples)
