"""Command-line surface.

Commands: gen, harvest, decode, bias, exponent, verify, campaign.

Exit codes: 0 success; 2 usage errors (argparse); 3 data/format problems
(bad files, checksum or instance/pool mismatch); 4 algorithmic failures
(iteration caps, empty slices, degenerate biases, failed decodes, failed
verification suites).
"""

from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction
from pathlib import Path

from . import asympt, bias as bias_mod, formats
from .asympt import emit_curve, entropy_inv, gv_tau, pi_exponent
from .bias import exact_biases, biases_via_krawtchouk, binomial_biases, mc_estimate_biases
from .campaign import ExperimentConfig, run_campaign
from .codec import is_dual_word, random_code, sample_problem
from .decode import decode_multi_weight, decode_single_weight
from .errors import (FormatError, InvalidParams, IterationCapExceeded, PoolMismatch,
                     StatDecError)
from .harvest import DumerConfig, harvest_dumer, harvest_gauss, default_dumer_window

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_ALGO = 4


def _cmd_gen(args: argparse.Namespace) -> int:
    code = random_code(args.n, args.rate, args.seed)
    problem = sample_problem(code, args.t, args.seed)
    gv = gv_tau(args.rate)
    print(f"[n={code.n}, k={code.k}] rate {code.rate:.4f}, GV relative distance {gv:.6f} "
          f"(t_gv ~ {gv * code.n:.1f})")
    if args.t > gv * code.n:
        print(f"warning: t={args.t} exceeds the GV radius; the solution may not be unique",
              file=sys.stderr)
    formats.write_instance(args.out, problem, include_hidden=not args.no_hidden)
    print(f"wrote instance to {args.out}")
    return EXIT_OK


def _cmd_harvest(args: argparse.Namespace) -> int:
    problem = formats.read_instance(args.instance)
    code = problem.code
    partial = False
    if args.method == "gauss":
        w_lo = args.w_lo if args.w_lo is not None else code.k // 2
        w_hi = args.w_hi if args.w_hi is not None else w_lo
        try:
            pool = harvest_gauss(code, (w_lo, w_hi), args.target, args.seed,
                                 iteration_cap=args.cap)
        except IterationCapExceeded as exc:
            pool, partial = exc.pool, True
            print(f"warning: {exc}", file=sys.stderr)
    else:
        cfg = DumerConfig(args.l, args.r)
        window = (args.w_lo, args.w_hi) if args.w_lo is not None and args.w_hi is not None \
            else default_dumer_window(code, cfg)
        try:
            pool = harvest_dumer(code, cfg, args.target, args.seed, w_window=window,
                                 iteration_cap=args.cap)
        except IterationCapExceeded as exc:
            pool, partial = exc.pool, True
            print(f"warning: {exc}", file=sys.stderr)
    print(f"pool: {len(pool)} equations, window {pool.weight_window}, "
          f"{pool.provenance.iterations} iterations")
    print("weight histogram:", pool.weight_histogram())
    details = pool.provenance.details
    if args.method == "dumer" and "mean_collisions" in details:
        print(f"collisions per iteration: observed {details['mean_collisions']:.2f}, "
              f"predicted {details['predicted_collisions']:.2f}")
    formats.write_pool(args.out, pool)
    print(f"wrote pool to {args.out}")
    return EXIT_ALGO if partial else EXIT_OK


def _cmd_decode(args: argparse.Namespace) -> int:
    problem = formats.read_instance(args.instance)
    pool = formats.read_pool(args.pool, problem.code)
    t = args.t if args.t is not None else problem.t
    if args.multiweight:
        result = decode_multi_weight(problem, pool, t=t)
    else:
        w = args.w if args.w is not None else pool.weight_window[0]
        result = decode_single_weight(problem, pool, w, t=t)
    payload = {
        "mode": result.mode,
        "t_used": result.t_used,
        "t_mismatch": result.t_mismatch,
        "weight": result.weight,
        "predicted_fail_prob": result.predicted_fail_prob,
        "e_hat": formats.bitvector_to_hex(result.e_hat),
        "e_hat_weight": result.e_hat.weight(),
        "success": result.success,
        "positions": [
            {"i": s.i, "m": s.m, "v": s.v, "threshold": s.threshold,
             "bit": s.decided_bit, "margin": s.margin}
            for s in result.per_position
        ],
    }
    if args.out:
        formats.write_report(args.out, payload)
        print(f"wrote decode report to {args.out}")
    print(f"e_hat weight {result.e_hat.weight()}, predicted failure bound "
          f"{result.predicted_fail_prob:.3g}")
    if result.success is not None:
        print("ground truth:", "recovered" if result.success else "MISSED")
        return EXIT_OK if result.success else EXIT_ALGO
    return EXIT_OK


def _cmd_bias(args: argparse.Namespace) -> int:
    pair = exact_biases(args.n, args.w, args.t)
    print(f"q0 = {pair.q0}  q1 = {pair.q1}")
    print(f"eps0 = {pair.eps0}  eps1 = {pair.eps1}")
    print(f"delta = eps1 - eps0 = {pair.delta}")
    print(f"log2 P_w = {pair.log2_pw:.6f}" if pair.delta else "log2 P_w = inf (zero bias)")
    if args.via_krawtchouk:
        other = biases_via_krawtchouk(args.n, args.w, args.t)
        if (other.eps0, other.eps1) == (pair.eps0, pair.eps1):
            print("identity: exact match")
        else:
            print(f"identity: MISMATCH (krawtchouk route gives eps0={other.eps0}, "
                  f"eps1={other.eps1})")
            return EXIT_ALGO
    if args.binomial:
        e0b, e1b = binomial_biases(args.n, args.w, args.t)
        print(f"binomial model: eps0 = {e0b:.6g}  eps1 = {e1b:.6g}")
    if args.mc:
        est = mc_estimate_biases(args.n, args.w, args.t, args.mc, args.seed)
        print(f"monte carlo ({est.samples} samples): q0_hat = {est.q0_hat:.6f} "
              f"(se {est.stderr0:.2g}), q1_hat = {est.q1_hat:.6f} (se {est.stderr1:.2g})")
    return EXIT_OK


def _parse_rates(spec: str) -> list[float]:
    if ":" in spec:
        lo, hi, step = (float(x) for x in spec.split(":"))
        out = []
        r = lo
        while r <= hi + 1e-12:
            out.append(round(r, 12))
            r += step
        return out
    return [float(x) for x in spec.split(",")]


_FIG_DEFAULT_RATES = {
    1: "0.1:0.9:0.1", 2: "0.05:0.95:0.05", 3: "0.002:0.05:0.002",
    4: "0.05:0.95:0.05", 5: "0.05:0.95:0.05", 6: "0.05:0.95:0.05",
    7: "0.02:0.9:0.02",
}


def _fig_rows(fig: int, rates: list[float], n_numeric: int) -> tuple[tuple[str, ...], list[tuple]]:
    rows = []
    if fig == 1:
        columns = ("rate", "numeric_exponent", "asymptotic_exponent")
        for rate in rates:
            tau = gv_tau(rate)
            n = n_numeric
            t = round(tau * n)
            w = round(rate / 2.0 * n)
            vals = []
            for wi in (w - 1, w, w + 1):
                d = exact_biases(n, wi, t).delta
                vals.append(-2.0 * bias_mod.log2_fraction(d) / n)
            rows.append((rate, sum(vals) / 3.0, pi_exponent(rate / 2.0, tau).pi))
    elif fig in (2, 3, 4):
        rule = "gv_half" if fig == 4 else "gv"
        columns = ("rate", "binomial_exponent", "constant_weight_exponent")
        for rate in rates:
            tau = gv_tau(rate) / 2.0 if fig == 4 else gv_tau(rate)
            rows.append((rate, asympt.pi_binomial(rate / 2.0, tau),
                         pi_exponent(rate / 2.0, tau).pi))
    elif fig == 5:
        columns = ("rate", "prange", "stat_dec_half_rate")
        for rate in rates:
            tau = gv_tau(rate)
            rows.append((rate, asympt.prange_exponent(rate, tau),
                         pi_exponent(rate / 2.0, tau).pi))
    elif fig == 6:
        columns = ("rate", "prange", "naive_half_rate", "lower_bound")
        for rate in rates:
            tau = gv_tau(rate)
            w0 = asympt.omega0(rate, tau)
            rows.append((rate, asympt.prange_exponent(rate, tau),
                         pi_exponent(rate / 2.0, tau).pi,
                         pi_exponent(w0, tau).pi if w0 < 0.5 else math.nan))
    elif fig == 7:
        columns = ("rate", "prange", "naive_half_rate", "lower_bound", "dumer_optimized")
        for rate in rates:
            tau = gv_tau(rate)
            w0 = asympt.omega0(rate, tau)
            dp = asympt.optimize_dumer(rate, tau)
            rows.append((rate, asympt.prange_exponent(rate, tau),
                         pi_exponent(rate / 2.0, tau).pi,
                         pi_exponent(w0, tau).pi, dp.pi_at_omega_eff))
    else:
        raise InvalidParams(f"unknown figure {fig}")
    return columns, rows


def _cmd_exponent(args: argparse.Namespace) -> int:
    if args.fig is not None:
        rates = _parse_rates(args.rates or _FIG_DEFAULT_RATES[args.fig])
        columns, rows = _fig_rows(args.fig, rates, args.n_numeric)
    else:
        rates = _parse_rates(args.rates or "0.05:0.95:0.05")
        tau_rule: str | float = args.tau
        if tau_rule not in ("gv", "gv_half"):
            tau_rule = float(tau_rule)
        table = emit_curve(args.kind, rates, tau_rule)
        columns, rows = table.columns, list(table.rows)
    formats.write_csv(args.out, columns, rows)
    print(f"wrote {len(rows)} rows to {args.out}")
    return EXIT_OK


def _verify_bias_identity(max_n: int) -> list[str]:
    failures = []
    for n in range(2, max_n + 1):
        for w in range(1, n):
            for t in range(1, n):
                a = exact_biases(n, w, t)
                b = biases_via_krawtchouk(n, w, t)
                if (a.eps0, a.eps1) != (b.eps0, b.eps1):
                    failures.append(f"bias identity fails at (n={n}, w={w}, t={t})")
                if not bias_mod.vandermonde_normalizer_holds(n, w, t):
                    failures.append(f"normalizer fails at (n={n}, w={w}, t={t})")
    return failures


def _verify_exponent_consistency() -> list[str]:
    failures = []
    # dual-path agreement across both regimes
    for i in range(1, 21):
        for j in range(1, 11):
            omega, tau = i / 45.0, j / 25.0
            if not (0 < omega < 0.5 and 0 < tau < 0.5):
                continue
            a = pi_exponent(omega, tau).pi
            b = asympt.corollary_pi(omega, tau).pi
            if abs(a - b) > 1e-9:
                failures.append(f"dual-path mismatch at ({omega:.4f}, {tau:.4f}): {a} vs {b}")
    # continuity across the regime boundary
    for i in range(1, 101):
        omega = i / 202.0
        tau = asympt.regime_boundary(omega)
        if not 0.0 < tau < 0.5:
            continue
        below = pi_exponent(omega, max(tau - 1e-9, 1e-12)).pi
        above = pi_exponent(omega, min(tau + 1e-9, 0.5 - 1e-12)).pi
        if abs(below - above) > 1e-6:
            failures.append(f"regime boundary jump at omega={omega:.4f}")
    # complex-regime identity at the GV radius
    for rate in (0.3, 0.5, 0.7):
        tau = gv_tau(rate)
        w0 = asympt.omega0(rate, tau)
        closed = 0.5 - math.sqrt(tau - tau * tau)
        if abs(w0 - closed) > 1e-6:
            failures.append(f"omega0 mismatch at R={rate}: {w0} vs {closed}")
        for frac in (0.0, 0.25, 0.5, 0.75):
            omega = w0 + frac * (0.5 - 1e-6 - w0)
            pt = pi_exponent(omega, tau)
            if abs(pt.pi - (asympt.entropy(omega) - rate)) > 1e-10:
                failures.append(f"complex identity fails at R={rate}, omega={omega:.4f}")
    return failures


def _verify_pool_roundtrip(tmpdir: Path) -> list[str]:
    failures = []
    code = random_code(32, 0.5, seed=20240101)
    pool = harvest_gauss(code, (6, 12), 80, seed=3)
    for h in pool.equations():
        if not is_dual_word(code, h):
            failures.append("harvested equation is not a dual codeword")
            break
    path = tmpdir / "verify-pool.txt"
    formats.write_pool(path, pool)
    loaded = formats.read_pool(path, code)
    if sorted(v.bits for v in loaded.equations()) != sorted(v.bits for v in pool.equations()):
        failures.append("pool file round-trip changed the equation set")
    return failures


def _cmd_verify(args: argparse.Namespace) -> int:
    failures: list[str] = []
    suites = []
    suites.append(("bias-krawtchouk identity grid", _verify_bias_identity(args.max_n)))
    suites.append(("exponent consistency", _verify_exponent_consistency()))
    import tempfile
    with tempfile.TemporaryDirectory() as tmp:
        suites.append(("pool soundness and round-trip", _verify_pool_roundtrip(Path(tmp))))
    if args.pool and args.instance:
        problem = formats.read_instance(args.instance)
        try:
            formats.read_pool(args.pool, problem.code)
            suites.append(("pool file integrity", []))
        except (FormatError, PoolMismatch) as exc:
            suites.append(("pool file integrity", [str(exc)]))
    for name, found in suites:
        status = "PASS" if not found else "FAIL"
        print(f"[{status}] {name}")
        failures.extend(found)
    for f in failures:
        print("  -", f)
    return EXIT_OK if not failures else EXIT_ALGO


def _cmd_campaign(args: argparse.Namespace) -> int:
    if args.config:
        config = ExperimentConfig.from_file(args.config)
    else:
        config = ExperimentConfig()
    for name in ("n", "rate", "seed", "t", "w", "trials", "threads"):
        value = getattr(args, name, None)
        if value is not None:
            setattr(config, name, value)
    if args.save_config:
        config.to_file(args.save_config)
    report = run_campaign(config)
    print(f"campaign: {report.successes}/{len(report.trials)} trials recovered the error")
    print(f"observed failure rate {report.observed_fail_rate:.3f}, "
          f"worst predicted bound {report.worst_predicted_fail:.3f}")
    if args.out:
        formats.write_report(args.out, report.to_payload())
        print(f"wrote campaign report to {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="statdec",
        description="Statistical decoding workbench: instances, harvests, decoding, "
                    "bias tables, and asymptotic exponent curves.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a decoding instance file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rate", type=float, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--out", required=True)
    p.add_argument("--no-hidden", action="store_true",
                   help="omit the ground-truth trailer")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("harvest", help="harvest dual codewords into a pool file")
    p.add_argument("--instance", required=True)
    p.add_argument("--method", choices=("gauss", "dumer"), default="gauss")
    p.add_argument("--target", type=int, required=True)
    p.add_argument("--w-lo", type=int)
    p.add_argument("--w-hi", type=int)
    p.add_argument("--l", type=int, default=8, help="dumer syndrome length")
    p.add_argument("--r", type=int, default=4, help="dumer collision weight (even)")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--cap", type=int, default=10_000)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_harvest)

    p = sub.add_parser("decode", help="run the majority-vote decoder")
    p.add_argument("--instance", required=True)
    p.add_argument("--pool", required=True)
    p.add_argument("--w", type=int, help="equation weight (single-weight mode)")
    p.add_argument("--t", type=int, help="override the declared error weight")
    p.add_argument("--multiweight", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_decode)

    p = sub.add_parser("bias", help="print exact bias values")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--via-krawtchouk", action="store_true")
    p.add_argument("--binomial", action="store_true")
    p.add_argument("--mc", type=int, help="Monte-Carlo sample count")
    p.add_argument("--seed", type=int, default=1)
    p.set_defaults(func=_cmd_bias)

    p = sub.add_parser("exponent", help="emit exponent curve CSVs")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--fig", type=int, choices=range(1, 8))
    group.add_argument("--kind", choices=("pi_const_weight", "pi_binomial", "omega0",
                                          "prange", "dumer_opt", "sublinear_slopes"))
    p.add_argument("--rates", help="grid as lo:hi:step or comma list")
    p.add_argument("--tau", default="gv", help="gv, gv_half, or a fixed value")
    p.add_argument("--n-numeric", type=int, default=1000,
                   help="code length for the finite-length column of fig 1")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_exponent)

    p = sub.add_parser("verify", help="run the identity and invariant suites")
    p.add_argument("--max-n", type=int, default=40,
                   help="upper length bound of the exact identity grid")
    p.add_argument("--instance", help="optional instance file to check")
    p.add_argument("--pool", help="optional pool file to check against --instance")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("campaign", help="run seeded decode trials")
    p.add_argument("--config", help="key-value config file")
    p.add_argument("--save-config", help="write the effective config here")
    p.add_argument("--n", type=int)
    p.add_argument("--rate", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--w", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--threads", type=int)
    p.add_argument("--out", help="campaign report path")
    p.set_defaults(func=_cmd_campaign)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, PoolMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except StatDecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ALGO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
