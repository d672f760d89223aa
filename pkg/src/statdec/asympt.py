"""Asymptotic exponent calculus for statistical decoding.

All exponents are base-2 and per code bit: an exponent value c means a
quantity growing like 2^(c n).  The central object is pi(omega, tau), the
exponent of the number of weight-(omega n) parity checks needed to decode
(tau n) errors.  It has two regimes separated by the curve
tau = 1/2 - sqrt(omega - omega^2): a "real" regime with a closed form built
from the smaller root of (1-omega) X^2 - (1-2 tau) X + omega = 0, and a
"complex" regime where it collapses to H(omega) + H(tau) - 1.

The module also provides the binomial-model exponent, the sublinear slope,
the feasibility weight omega0(R, tau), a Prange baseline, and the
constrained optimizer for the collision-harvest parameters.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from math import log2, sqrt

from .errors import DegenerateBase, DomainError, NoRoot

_LN2 = math.log(2.0)


def entropy(x: float) -> float:
    """Binary entropy H(x) = -x log2 x - (1-x) log2(1-x), H(0) = H(1) = 0."""
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"entropy argument {x} outside [0, 1]")
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * log2(x) - (1.0 - x) * log2(1.0 - x)


def entropy_inv(y: float) -> float:
    """The unique x in [0, 1/2] with H(x) = y, by bisection to 1e-12."""
    if not 0.0 <= y <= 1.0:
        raise DomainError(f"entropy_inv argument {y} outside [0, 1]")
    lo, hi = 0.0, 0.5
    while hi - lo > 1e-13:
        mid = 0.5 * (lo + hi)
        if entropy(mid) < y:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def gv_tau(rate: float) -> float:
    """Gilbert-Varshamov relative distance H^-1(1 - R)."""
    if not 0.0 < rate < 1.0:
        raise DomainError("rate must be in (0, 1)")
    return entropy_inv(1.0 - rate)


class Regime(str, enum.Enum):
    REAL = "real"
    COMPLEX = "complex"


@dataclass(frozen=True)
class ExponentPoint:
    omega: float
    tau: float
    regime: Regime
    pi: float


def regime_boundary(omega: float) -> float:
    """The tau above which (omega, tau) sits in the complex regime."""
    return 0.5 - sqrt(omega - omega * omega)


def _check_open_domain(omega: float, tau: float) -> None:
    if not 0.0 < omega < 0.5:
        raise DomainError(f"omega {omega} outside (0, 1/2)")
    if not 0.0 < tau < 0.5:
        raise DomainError(f"tau {tau} outside (0, 1/2)")


def pi_exponent(omega: float, tau: float) -> ExponentPoint:
    """The per-bit exponent of the needed equation count P_w.

    Real regime (tau below the boundary): with r the smaller root of
    (1-omega) X^2 - (1-2 tau) X + omega = 0,

        pi = 2 omega log2 r - 2 tau log2(1-r) - 2(1-tau) log2(1+r) + 2 H(omega).

    Complex regime: pi = H(omega) + H(tau) - 1.  Exact boundary points are
    folded into the complex branch; the two formulas agree there by
    continuity.
    """
    _check_open_domain(omega, tau)
    if tau < regime_boundary(omega):
        disc = (1.0 - 2.0 * tau) ** 2 - 4.0 * omega * (1.0 - omega)
        r = ((1.0 - 2.0 * tau) - sqrt(disc)) / (2.0 * (1.0 - omega))
        value = (
            2.0 * omega * log2(r)
            - 2.0 * tau * log2(1.0 - r)
            - 2.0 * (1.0 - tau) * log2(1.0 + r)
            + 2.0 * entropy(omega)
        )
        return ExponentPoint(omega, tau, Regime.REAL, value)
    value = entropy(omega) + entropy(tau) - 1.0
    return ExponentPoint(omega, tau, Regime.COMPLEX, value)


def corollary_pi(omega: float, tau: float) -> ExponentPoint:
    """The same exponent through the gamma = 1/omega parametrisation.

    The real branch evaluates the smaller root of
    (gamma-1) X^2 - (gamma - 2 tau/omega) X + 1 = 0; the complex branch
    evaluates 2 (omega Re p(z) + H(omega)) at z = r e^{i phi} with
    r = 1/sqrt(gamma-1) and cos phi = (2 tau/omega - gamma)/(2 sqrt(gamma-1)),
    using complex arithmetic throughout.  Serves as an independent
    evaluation path for pi_exponent.
    """
    _check_open_domain(omega, tau)
    gamma = 1.0 / omega
    ratio = tau / omega
    if ratio < 0.5 * gamma - sqrt(gamma - 1.0):
        disc = (gamma - 2.0 * ratio) ** 2 - 4.0 * (gamma - 1.0)
        r = ((gamma - 2.0 * ratio) - sqrt(disc)) / (2.0 * (gamma - 1.0))
        inner = log2(r) - ratio * log2(1.0 - r) - (gamma - ratio) * log2(1.0 + r)
        return ExponentPoint(omega, tau, Regime.REAL, 2.0 * (omega * inner + entropy(omega)))
    r = 1.0 / sqrt(gamma - 1.0)
    cos_phi = (2.0 * ratio - gamma) / (2.0 * sqrt(gamma - 1.0))
    cos_phi = min(1.0, max(-1.0, cos_phi))
    phi = math.acos(cos_phi)
    z = complex(r * math.cos(phi), r * math.sin(phi))
    p = (cmath.log(z) - ratio * cmath.log(1 + z) - (gamma - ratio) * cmath.log(1 - z)) / _LN2
    return ExponentPoint(omega, tau, Regime.COMPLEX, 2.0 * (omega * p.real + entropy(omega)))


def pi_binomial(omega: float, tau: float) -> float:
    """Equation-count exponent in the binomial model: -2 tau log2(1-2 omega)."""
    if not 0.0 < omega < 0.5:
        raise DegenerateBase(f"omega {omega} outside (0, 1/2)")
    if not 0.0 < tau < 0.5:
        raise DomainError(f"tau {tau} outside (0, 1/2)")
    return -2.0 * tau * log2(1.0 - 2.0 * omega)


def pi_sublinear_limit(omega: float) -> float:
    """Slope of pi(omega, tau) in tau at tau -> 0: -2 log2(1-2 omega)."""
    if not 0.0 < omega < 0.5:
        raise DomainError(f"omega {omega} outside (0, 1/2)")
    return -2.0 * log2(1.0 - 2.0 * omega)


def isd_sublinear_coeff(rate: float) -> float:
    """Per-error exponent -log2(1-R) shared by all ISD variants at t = o(n)."""
    if not 0.0 < rate < 1.0:
        raise DomainError("rate must be in (0, 1)")
    return -log2(1.0 - rate)


_OMEGA0_SCAN_START = 1e-4
_OMEGA0_SCAN_STEP = 1e-3
_OMEGA0_TOL = 1e-9
_PLATEAU_EPS = 1e-12


def omega0(rate: float, tau: float) -> float:
    """Smallest omega with pi(omega, tau) = H(omega) - R.

    Below this weight a random [n, Rn] code does not even contain the
    equations the decoder needs.  On the complex branch the defining gap
    pi - (H(omega) - R) is the constant H(tau) - (1 - R); when that constant
    is zero (tau on the Gilbert-Varshamov curve) the gap vanishes
    identically there and the smallest root is the regime boundary itself,
    returned in closed form rather than recovered from noise-level
    bisection.  Otherwise the smallest root is bracketed by an upward scan
    from omega = 0+ (the gap can cross several times in the real regime)
    and polished by bisection.
    """
    if not 0.0 < rate < 1.0:
        raise DomainError("rate must be in (0, 1)")
    if not 0.0 < tau < 0.5:
        raise DomainError("tau must be in (0, 1/2)")

    def gap(om: float) -> float:
        return pi_exponent(om, tau).pi - (entropy(om) - rate)

    complex_const = entropy(tau) - (1.0 - rate)
    boundary = 0.5 - sqrt(tau - tau * tau)
    if abs(complex_const) <= _PLATEAU_EPS and 0.0 < boundary < 0.5:
        probe = max(_OMEGA0_SCAN_START, boundary - _OMEGA0_SCAN_STEP)
        if gap(probe) > 0.0:
            return boundary

    prev_om = _OMEGA0_SCAN_START
    prev_gap = gap(prev_om)
    om = prev_om
    while om < 0.5 - 1e-9:
        om = min(om + _OMEGA0_SCAN_STEP, 0.5 - 1e-9)
        cur = gap(om)
        if prev_gap > 0.0 >= cur or prev_gap <= 0.0 < cur:
            lo, hi = prev_om, om
            glo = prev_gap
            while hi - lo > _OMEGA0_TOL:
                mid = 0.5 * (lo + hi)
                gm = gap(mid)
                if (glo > 0.0) == (gm > 0.0):
                    lo, glo = mid, gm
                else:
                    hi = mid
            return 0.5 * (lo + hi)
        prev_om, prev_gap = om, cur
    raise NoRoot(f"pi - (H - R) has no sign change for R={rate}, tau={tau}")


def prange_exponent(rate: float, tau: float) -> float:
    """Expected-iteration exponent of plain information-set decoding.

    H(tau) - (1-R) H(tau/(1-R)): the exponent of 1/P(a random size-Rn
    information set avoids all tau n errors).  This is an external baseline
    for comparison curves; validate against a Monte-Carlo success-rate
    estimate before trusting new parameter ranges (see
    campaign.prange_mc_exponent).
    """
    if not 0.0 < rate < 1.0:
        raise DomainError("rate must be in (0, 1)")
    if not 0.0 <= tau <= (1.0 - rate) / 2.0:
        raise DomainError("need 0 <= tau <= (1-R)/2")
    if tau == 0.0:
        return 0.0
    return entropy(tau) - (1.0 - rate) * entropy(tau / (1.0 - rate))


def dumer_rho(rate: float, lam: float) -> float:
    """Collision weight making the fusion harvest amortized-O~(1).

    rho = (1 - R + lambda) H^-1(2 lambda / (1 - R + lambda)); one iteration
    then emits about as many equations as the time it spends building its
    lists.
    """
    if not 0.0 < rate < 1.0:
        raise DomainError("rate must be in (0, 1)")
    if lam <= 0.0:
        raise DomainError("lambda must be positive")
    span = 1.0 - rate + lam
    arg = 2.0 * lam / span
    if arg > 1.0:
        raise DomainError("2 lambda / (1 - R + lambda) exceeds 1")
    return span * entropy_inv(arg)


@dataclass(frozen=True)
class DumerParams:
    """Optimized collision-harvest parameters at a given (R, tau).

    ``fallback`` marks the plain Gaussian regime (omega = R/2) returned when
    no feasible (rho, lambda) pair exists.
    """

    rho: float
    lam: float
    omega_eff: float
    pi_at_omega_eff: float
    fallback: bool


_LAMBDA_GRID_STEP = 1e-3
_LAMBDA_REFINE_TOL = 1e-6
_FEAS_SLACK = 1e-12


def optimize_dumer(rate: float, tau: float) -> DumerParams:
    """Minimize pi(rho + (R-lambda)/2, tau) under the harvest constraints.

    Feasibility: the effective weight must be at least omega0(R, tau) (the
    code must contain enough equations) and lambda <= pi at that weight (one
    iteration must not overshoot the needed pool).  Grid scan with
    golden-section refinement, per the documented tolerances; when nothing
    is feasible the omega = R/2 Gaussian regime is returned, flagged.
    """
    if not 0.0 < rate < 1.0:
        raise DomainError("rate must be in (0, 1)")
    if not 0.0 < tau < 0.5:
        raise DomainError("tau must be in (0, 1/2)")
    try:
        w0 = omega0(rate, tau)
    except NoRoot:
        w0 = None

    def point(lam: float) -> tuple[float, float, float] | None:
        """(rho, omega_eff, pi) when lam is admissible and feasible."""
        if lam <= 0.0 or lam >= min(rate, 1.0 - rate):
            return None
        try:
            rho = dumer_rho(rate, lam)
        except DomainError:
            return None
        omega_eff = rho + (rate - lam) / 2.0
        if not 0.0 < omega_eff < 0.5:
            return None
        if w0 is not None and omega_eff < w0 - _FEAS_SLACK:
            return None
        pi_val = pi_exponent(omega_eff, tau).pi
        if lam > pi_val + _FEAS_SLACK:
            return None
        return rho, omega_eff, pi_val

    best_lam = None
    best = None
    lam = _LAMBDA_GRID_STEP
    while lam < min(rate, 1.0 - rate):
        cand = point(lam)
        if cand is not None and (best is None or cand[2] < best[2]):
            best = cand
            best_lam = lam
        lam += _LAMBDA_GRID_STEP

    if best is None:
        return DumerParams(0.0, 0.0, rate / 2.0, pi_exponent(rate / 2.0, tau).pi, True)

    def objective(lam: float) -> float:
        cand = point(lam)
        return cand[2] if cand is not None else math.inf

    lo = max(best_lam - _LAMBDA_GRID_STEP, _LAMBDA_GRID_STEP / 16.0)
    hi = best_lam + _LAMBDA_GRID_STEP
    invphi = (sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = objective(c), objective(d)
    while b - a > _LAMBDA_REFINE_TOL:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = objective(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = objective(d)
    lam_star = 0.5 * (a + b)
    cand = point(lam_star)
    if cand is None or cand[2] > best[2]:
        lam_star, cand = best_lam, best
    rho, omega_eff, pi_val = cand
    return DumerParams(rho, lam_star, omega_eff, pi_val, False)


_CURVE_KINDS = (
    "pi_const_weight",
    "pi_binomial",
    "omega0",
    "prange",
    "dumer_opt",
    "sublinear_slopes",
)


@dataclass(frozen=True)
class CurveTable:
    kind: str
    columns: tuple[str, ...]
    rows: tuple[tuple[float, ...], ...]


def _resolve_tau(rate: float, tau_rule: str | float) -> float:
    if tau_rule == "gv":
        return gv_tau(rate)
    if tau_rule == "gv_half":
        return gv_tau(rate) / 2.0
    if isinstance(tau_rule, (int, float)):
        return float(tau_rule)
    raise DomainError(f"unknown tau rule {tau_rule!r}")


def emit_curve(kind: str, rate_grid: list[float], tau_rule: str | float = "gv") -> CurveTable:
    """Tabulate one comparison curve over a rate grid.

    Rows are (rate, value, ...) tuples ready for CSV; evaluation order never
    affects the result.  NaN marks points where a quantity is undefined
    (e.g. no feasibility root).
    """
    if kind not in _CURVE_KINDS:
        raise DomainError(f"unknown curve kind {kind!r}")
    if not rate_grid:
        raise DomainError("empty rate grid")
    rows = []
    if kind == "pi_const_weight":
        columns = ("rate", "tau", "omega", "pi", "regime_complex")
        for rate in rate_grid:
            tau = _resolve_tau(rate, tau_rule)
            pt = pi_exponent(rate / 2.0, tau)
            rows.append((rate, tau, rate / 2.0, pt.pi, 1.0 if pt.regime is Regime.COMPLEX else 0.0))
    elif kind == "pi_binomial":
        columns = ("rate", "tau", "omega", "pi_binomial")
        for rate in rate_grid:
            tau = _resolve_tau(rate, tau_rule)
            rows.append((rate, tau, rate / 2.0, pi_binomial(rate / 2.0, tau)))
    elif kind == "omega0":
        columns = ("rate", "tau", "omega0")
        for rate in rate_grid:
            tau = _resolve_tau(rate, tau_rule)
            try:
                rows.append((rate, tau, omega0(rate, tau)))
            except NoRoot:
                rows.append((rate, tau, math.nan))
    elif kind == "prange":
        columns = ("rate", "tau", "prange")
        for rate in rate_grid:
            tau = _resolve_tau(rate, tau_rule)
            rows.append((rate, tau, prange_exponent(rate, tau)))
    elif kind == "dumer_opt":
        columns = ("rate", "tau", "pi", "rho", "lambda", "omega_eff", "fallback")
        for rate in rate_grid:
            tau = _resolve_tau(rate, tau_rule)
            dp = optimize_dumer(rate, tau)
            rows.append((rate, tau, dp.pi_at_omega_eff, dp.rho, dp.lam, dp.omega_eff,
                         1.0 if dp.fallback else 0.0))
    else:  # sublinear_slopes
        columns = ("rate", "sd_slope", "isd_slope")
        for rate in rate_grid:
            rows.append((rate, pi_sublinear_limit(rate / 2.0), isd_sublinear_coeff(rate)))
    return CurveTable(kind, columns, tuple(tuple(r) for r in rows))
