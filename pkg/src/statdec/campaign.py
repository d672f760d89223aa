"""Seeded experiment campaigns and Monte-Carlo baselines.

A campaign runs independent decode trials, each fully determined by
(config, trial index): fresh code, fresh problem, fresh pool, decode,
score.  Trials carry their own derived seeds in the report so any single
one can be re-run in isolation.  Trials may run in worker processes; the
report is assembled by trial index so concurrency never changes output.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from pathlib import Path

from .bias import exact_biases, required_equations
from .bitmat import BitVector, Permutation, systematize, vec_mat
from .codec import CodeInstance, random_code, sample_problem
from .decode import DecodeResult, decode_multi_weight, decode_single_weight
from .errors import FormatError, InvalidParams, IterationCapExceeded, SingularLeftBlock
from .harvest import DumerConfig, ParityPool, harvest_dumer, harvest_gauss
from .rng import derive_seed, stream


@dataclass
class ExperimentConfig:
    """Flat description of a campaign; round-trips through a key-value file."""

    n: int = 128
    rate: float = 0.5
    seed: int = 1
    t: int = 4
    method: str = "gauss"            # gauss | dumer
    w: int = 33                      # decode weight (single mode)
    w_lo: int = 33
    w_hi: int = 33
    dumer_l: int = 8
    dumer_r: int = 4
    mode: str = "single"             # single | multi
    trials: int = 100
    target_fail: float = 0.05        # per-trial failure budget (union over positions)
    threads: int = 1

    def to_file(self, path: str | Path) -> None:
        lines = [f"{f.name} {getattr(self, f.name)}" for f in fields(self)]
        Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")

    @classmethod
    def from_file(cls, path: str | Path) -> "ExperimentConfig":
        values: dict[str, str] = {}
        for line in Path(path).read_text(encoding="ascii").splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, value = line.partition(" ")
            if not value:
                raise FormatError(f"bad config line: {line!r}")
            values[key] = value.strip()
        kwargs = {}
        for f in fields(cls):
            if f.name in values:
                kwargs[f.name] = _convert(f.type, values.pop(f.name))
        if values:
            raise FormatError(f"unknown config keys: {sorted(values)}")
        return cls(**kwargs)


def _convert(type_name: str, raw: str):
    if type_name == "int":
        return int(raw)
    if type_name == "float":
        return float(raw)
    return raw


def build_pool_for_decoding(code: CodeInstance, w: int, t: int, per_position_fail: float,
                            seed: int, max_topups: int = 8) -> tuple[ParityPool, int]:
    """Harvest (Gaussian method) until every position has at least the
    Chernoff-required number of weight-w equations.

    Returns (pool, required_per_position).  Top-up batches use derived
    seeds and merge into the pool, so the result is deterministic in
    (code, w, t, per_position_fail, seed).
    """
    bias = exact_biases(code.n, w, t)
    m_req = required_equations(bias, per_position_fail, positions=1)
    target = math.ceil(m_req * code.n / w * 1.07) + 64
    pool = harvest_gauss(code, (w, w), target, derive_seed(seed, "harvest", 0))
    for topup in range(1, max_topups + 1):
        deficit = m_req - pool.min_coverage(w)
        if deficit <= 0:
            return pool, m_req
        extra_target = math.ceil(deficit * code.n / w * 1.3) + 64
        extra = harvest_gauss(code, (w, w), extra_target, derive_seed(seed, "harvest", topup))
        pool.merge_from(extra)
    if pool.min_coverage(w) < m_req:
        raise IterationCapExceeded(
            f"could not reach per-position coverage {m_req}", pool=pool,
            diagnostics={"min_coverage": pool.min_coverage(w)})
    return pool, m_req


@dataclass(frozen=True)
class TrialResult:
    trial: int
    seed: int
    success: bool
    bit_errors: int
    pool_size: int
    min_coverage: int
    required_per_position: int
    predicted_fail_prob: float
    elapsed: float


@dataclass(frozen=True)
class CampaignReport:
    config: ExperimentConfig
    trials: tuple[TrialResult, ...]

    @property
    def successes(self) -> int:
        return sum(1 for t in self.trials if t.success)

    @property
    def observed_fail_rate(self) -> float:
        return 1.0 - self.successes / len(self.trials)

    @property
    def worst_predicted_fail(self) -> float:
        return max(t.predicted_fail_prob for t in self.trials)

    def to_payload(self) -> dict:
        return {
            "config": {f.name: getattr(self.config, f.name) for f in fields(self.config)},
            "successes": self.successes,
            "trials": [t.__dict__ for t in self.trials],
        }


def run_trial(config: ExperimentConfig, trial: int) -> TrialResult:
    start = time.monotonic()
    trial_seed = derive_seed(config.seed, "trial", trial)
    code = random_code(config.n, config.rate, trial_seed)
    problem = sample_problem(code, config.t, derive_seed(trial_seed, "problem"))
    per_position_fail = config.target_fail / config.n
    if config.method == "gauss":
        pool, m_req = build_pool_for_decoding(
            code, config.w, config.t, per_position_fail, trial_seed)
    elif config.method == "dumer":
        cfg = DumerConfig(config.dumer_l, config.dumer_r)
        bias = exact_biases(code.n, config.w, config.t)
        m_req = required_equations(bias, per_position_fail, positions=1)
        target = math.ceil(m_req * code.n / config.w * 1.1) + 64
        pool = harvest_dumer(code, cfg, target, derive_seed(trial_seed, "harvest"),
                             w_window=(config.w_lo, config.w_hi))
    else:
        raise InvalidParams(f"unknown harvest method {config.method!r}")
    result: DecodeResult
    if config.mode == "single":
        result = decode_single_weight(problem, pool, config.w)
        min_cov = pool.min_coverage(config.w)
    elif config.mode == "multi":
        result = decode_multi_weight(problem, pool)
        min_cov = pool.min_coverage()
    else:
        raise InvalidParams(f"unknown decoder mode {config.mode!r}")
    bit_errors = (result.e_hat.bits ^ problem.hidden_e.bits).bit_count()
    return TrialResult(trial, trial_seed, bool(result.success), bit_errors,
                       len(pool), min_cov, m_req, result.predicted_fail_prob,
                       time.monotonic() - start)


def _trial_worker(args: tuple) -> TrialResult:
    config_values, trial = args
    return run_trial(ExperimentConfig(**config_values), trial)


def run_campaign(config: ExperimentConfig) -> CampaignReport:
    jobs = [(dict((f.name, getattr(config, f.name)) for f in fields(config)), i)
            for i in range(config.trials)]
    if config.threads > 1:
        with ProcessPoolExecutor(max_workers=config.threads) as executor:
            results = list(executor.map(_trial_worker, jobs))
    else:
        results = [_trial_worker(j) for j in jobs]
    results.sort(key=lambda r: r.trial)
    return CampaignReport(config, tuple(results))


def prange_mc_exponent(n: int, rate: float, t: int, iterations: int, seed: int) -> float:
    """Monte-Carlo estimate of the Prange iteration-success exponent.

    Each iteration draws a fresh random code and weight-t error, picks
    random information sets until one is invertible, decodes through it,
    and counts success when the residual has weight exactly t.  Returns
    -(1/n) log2 of the success frequency; this is the brute-force oracle
    used to validate the closed-form baseline at small n.
    """
    if iterations < 1:
        raise InvalidParams("iterations must be >= 1")
    k = round(rate * n)
    successes = 0
    for it in range(iterations):
        it_seed = derive_seed(seed, "prange", it)
        code = random_code(n, rate, it_seed)
        problem = sample_problem(code, t, derive_seed(it_seed, "problem"))
        rng = stream(it_seed, "infoset")
        while True:
            p = Permutation.random(n, rng)
            try:
                sysform = systematize(code.G, p)
            except SingularLeftBlock:
                continue
            break
        # y in permuted coordinates; first k bits select the message of the
        # permuted systematic code, the residual is the error candidate
        y_perm = p.apply(problem.y)
        x_hat = BitVector(k, y_perm.bits & ((1 << k) - 1))
        cand = vec_mat(x_hat, sysform.matrix)
        e_perm = cand ^ y_perm
        if e_perm.weight() == t:
            successes += 1
    if successes == 0:
        raise InvalidParams(f"no Prange success in {iterations} iterations; raise the budget")
    return -math.log2(successes / iterations) / n
