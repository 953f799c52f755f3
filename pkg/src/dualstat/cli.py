"""Command-line front end: eval, verify, interval, reconstruct.

Output contract: the machine payload goes to stdout (JSON envelope by
default, CSV where requested, bare scalar for ``eval``); a short human
summary goes to stderr unless --quiet.  Exit codes: 0 success, 1 a
requested statistical gate failed, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import identities, intervals, reconstruct
from .distributions import (
    BetaModel,
    GammaModel,
    NegBinomialModel,
    NormalModel,
    PoissonModel,
    beta_pdf,
    dual_gamma_cdf,
    gamma_pdf,
    neg_binomial_pmf,
    normal_pdf,
    poisson_cdf,
    poisson_pmf,
)
from .errors import ConvergenceError, DomainError
from .serialize import csv_line, fmt_float, json_dumps

SEED_ENV_VAR = "DUALSTAT_SEED"
DEFAULT_SEED = 1


def _resolve_seed(value) -> int:
    if value is not None:
        return value
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise DomainError(f"{SEED_ENV_VAR} must be an integer, got {env!r}") from exc
    return DEFAULT_SEED


def _emit(envelope: dict, summary: str, quiet: bool) -> None:
    print(json_dumps(envelope))
    if not quiet:
        print(summary, file=sys.stderr)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dualstat",
        description=(
            "Dual-distribution toolkit: density evaluation, duality identity "
            "verification, confidence intervals, and Monte Carlo reconstruction "
            "of parameter distributions."
        ),
    )
    top = parser.add_subparsers(dest="command", required=True)

    # interval
    interval = top.add_parser("interval", help="construct a confidence interval")
    fam = interval.add_subparsers(dest="family", required=True)
    ip = fam.add_parser("poisson", help="rate interval from an observed count")
    ip.add_argument("--n", type=int, required=True, help="observed count")
    ip.add_argument("--level", type=float, required=True, help="confidence level in (0,1)")
    ip.add_argument("--policy", choices=intervals.POLICIES, default="central")
    ip.add_argument("--format", choices=("json", "csv"), default="json")
    ip.add_argument("--quiet", action="store_true")
    im = fam.add_parser("normal", help="mean interval from one observation")
    im.add_argument("--x", type=float, required=True, help="observed value")
    im.add_argument("--sigma", type=float, required=True, help="known sigma")
    im.add_argument("--level", type=float, required=True)
    im.add_argument("--policy", choices=intervals.POLICIES, default="central")
    im.add_argument("--format", choices=("json", "csv"), default="json")
    im.add_argument("--quiet", action="store_true")

    # verify
    verify = top.add_parser("verify", help="evaluate identity residuals")
    which = verify.add_subparsers(dest="identity", required=True)
    v5 = which.add_parser("eq5")
    v5.add_argument("--mu1", type=float, required=True)
    v5.add_argument("--mu2", type=float, required=True)
    v5.add_argument("--n", type=int, required=True)
    v5.add_argument("--m", type=int, required=True)
    v8 = which.add_parser("eq8")
    v8.add_argument("--b", type=float, required=True)
    v8.add_argument("--c", type=float, required=True)
    v8.add_argument("--d", type=float, required=True)
    v8.add_argument("--sigma", type=float, required=True)
    v11 = which.add_parser("eq11")
    v11.add_argument("--p", type=float, required=True)
    v11.add_argument("--n", type=int, required=True)
    v11.add_argument("--m", type=int, required=True)
    v12 = which.add_parser("eq12")
    v12.add_argument("--mu1", type=float, required=True)
    v12.add_argument("--mu2", type=float, required=True)
    v12.add_argument("--n", type=int, required=True)
    normal_ids = []
    for name in ("eq17", "eq18"):
        vp = which.add_parser(name)
        vp.add_argument("--x", type=float, required=True, help="observed value")
        vp.add_argument("--c", type=float, required=True)
        vp.add_argument("--d", type=float, required=True)
        vp.add_argument("--sigma", type=float, required=True)
        normal_ids.append(vp)
    sweep = which.add_parser("sweep", help="randomized residual sweep over all identities")
    sweep.add_argument("--count", type=int, default=10000, help="tuples per identity")
    sweep.add_argument("--seed", type=int, default=None)
    for sub in (v5, v8, v11, v12, sweep, *normal_ids):
        sub.add_argument("--quiet", action="store_true")

    # reconstruct
    rec = top.add_parser("reconstruct", help="Monte Carlo parameter reconstruction")
    rfam = rec.add_subparsers(dest="family", required=True)
    rp = rfam.add_parser("poisson")
    rp.add_argument("--n", type=int, required=True, help="observed count")
    rp.add_argument("--accepted", type=int, required=True, help="accepted sample size")
    rp.add_argument("--seed", type=int, default=None)
    rp.add_argument("--mu-max", type=float, default=None, help="rate support cutoff")
    rp.add_argument("--bins", type=int, default=60)
    rp.add_argument("--workers", type=int, default=1)
    rp.add_argument("--hist-out", default=None, help="write histogram CSV here")
    rp.add_argument("--quiet", action="store_true")
    rn = rfam.add_parser("normal")
    rn.add_argument("--x", type=float, required=True, help="observed value")
    rn.add_argument("--sigma", type=float, required=True)
    rn.add_argument("--accepted", type=int, required=True)
    rn.add_argument("--seed", type=int, default=None)
    rn.add_argument("--half-width", type=float, default=None,
                    help="support half-width in sigma units (default 10)")
    rn.add_argument("--window", type=float, default=0.01,
                    help="acceptance half-window in sigma units")
    rn.add_argument("--bins", type=int, default=60)
    rn.add_argument("--workers", type=int, default=1)
    rn.add_argument("--hist-out", default=None)
    rn.add_argument("--quiet", action="store_true")

    # eval
    ev = top.add_parser("eval", help="evaluate one density/pmf/cdf")
    efam = ev.add_subparsers(dest="function", required=True)
    e = efam.add_parser("poisson-pmf")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--mu", type=float, required=True)
    e = efam.add_parser("poisson-cdf")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--mu", type=float, required=True)
    e = efam.add_parser("gamma-pdf")
    e.add_argument("--x", type=float, required=True)
    e.add_argument("--scale", type=float, required=True, help="inverse-scale parameter a")
    e.add_argument("--shape", type=float, required=True)
    e = efam.add_parser("gamma-cdf")
    e.add_argument("--mu", type=float, required=True)
    e.add_argument("--n", type=int, required=True, help="observed count of the dual reading")
    e = efam.add_parser("normal-pdf")
    e.add_argument("--x", type=float, required=True)
    e.add_argument("--mean", type=float, required=True)
    e.add_argument("--sigma", type=float, required=True)
    e = efam.add_parser("negbin-pmf")
    e.add_argument("--k", type=int, required=True)
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--p", type=float, required=True)
    e = efam.add_parser("beta-pdf")
    e.add_argument("--x", type=float, required=True)
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--m", type=int, required=True)
    return parser


def _cmd_interval(args) -> int:
    if args.family == "poisson":
        ci = intervals.poisson_interval(args.n, args.level, args.policy)
        inputs = {"n": args.n, "level": args.level, "policy": args.policy}
        label = f"interval poisson n={args.n}"
    else:
        ci = intervals.normal_interval(args.x, args.sigma, args.level, args.policy)
        inputs = {
            "x": args.x,
            "sigma": args.sigma,
            "level": args.level,
            "policy": args.policy,
        }
        label = f"interval normal x={fmt_float(args.x)}"
    summary = (
        f"{label} {args.policy} {fmt_float(args.level)}: "
        f"[{fmt_float(ci.lower)}, {fmt_float(ci.upper)}] "
        f"achieved={fmt_float(ci.achieved)}"
    )
    if args.format == "csv":
        print(csv_line([ci.lower, ci.upper, ci.level, ci.policy, ci.achieved]))
        if not args.quiet:
            print(summary, file=sys.stderr)
        return 0
    envelope = {
        "command": f"interval {args.family}",
        "inputs": inputs,
        "result": ci.to_dict(),
        "status": "ok",
    }
    _emit(envelope, summary, args.quiet)
    return 0


def _cmd_verify(args) -> int:
    if args.identity == "sweep":
        seed = _resolve_seed(args.seed)
        summaries = identities.sweep(args.count, seed)
        ok = all(s["ok"] for s in summaries)
        envelope = {
            "command": "verify sweep",
            "inputs": {"count": args.count, "seed": seed},
            "result": summaries,
            "status": "ok" if ok else "fail",
        }
        worst = max(s["max_abs_residual"] for s in summaries)
        _emit(envelope, f"sweep of {args.count} tuples/identity: "
                        f"worst residual {fmt_float(worst)} "
                        f"{'ok' if ok else 'FAIL'}", args.quiet)
        return 0 if ok else 1

    if args.identity == "eq5":
        report = identities.eq5_residual(args.mu1, args.mu2, args.n, args.m)
    elif args.identity == "eq8":
        report = identities.eq8_residual(args.b, args.c, args.d, args.sigma)
    elif args.identity == "eq11":
        report = identities.eq11_residual(args.p, args.n, args.m)
    elif args.identity == "eq12":
        report = identities.eq12_residual(args.mu1, args.mu2, args.n)
    elif args.identity == "eq17":
        report = identities.eq17_residual(args.x, args.c, args.d, args.sigma)
    else:
        report = identities.eq18_residual(args.x, args.c, args.d, args.sigma)
    ok = abs(report.residual) <= identities.RESIDUAL_TOLERANCE
    envelope = {
        "command": f"verify {args.identity}",
        "inputs": report.inputs,
        "result": report.to_dict(),
        "status": "ok" if ok else "fail",
    }
    _emit(envelope, f"{args.identity} residual={fmt_float(report.residual)} "
                    f"{'ok' if ok else 'FAIL'}", args.quiet)
    return 0 if ok else 1


def _write_histogram_csv(path: str, result) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("edge_low,edge_high,count,model_mass\n")
        for row in result.histogram_rows():
            fh.write(csv_line(row) + "\n")


def _cmd_reconstruct(args) -> int:
    seed = _resolve_seed(args.seed)
    if args.family == "poisson":
        config = reconstruct.ReconstructionConfig(
            target=reconstruct.PoissonTarget(n_hat=args.n),
            target_accepted=args.accepted,
            seed=seed,
            support_bound=args.mu_max,
            bins=args.bins,
            workers=args.workers,
        )
        result = reconstruct.reconstruct_poisson_parameter(config)
        inputs = {
            "n": args.n,
            "accepted": args.accepted,
            "seed": seed,
            "mu_max": config.resolved_support(),
            "bins": args.bins,
            "workers": args.workers,
        }
    else:
        config = reconstruct.ReconstructionConfig(
            target=reconstruct.NormalTarget(x_hat=args.x, sigma=args.sigma),
            target_accepted=args.accepted,
            seed=seed,
            support_bound=args.half_width,
            accept_window=args.window,
            bins=args.bins,
            workers=args.workers,
        )
        result = reconstruct.reconstruct_normal_parameter(config)
        inputs = {
            "x": args.x,
            "sigma": args.sigma,
            "accepted": args.accepted,
            "seed": seed,
            "half_width": config.resolved_support(),
            "window": args.window,
            "bins": args.bins,
            "workers": args.workers,
        }
    if args.hist_out:
        _write_histogram_csv(args.hist_out, result)
    envelope = {
        "command": f"reconstruct {args.family}",
        "inputs": inputs,
        "result": result.to_dict(),
        "status": "ok" if result.passed else "fail",
    }
    _emit(envelope, f"reconstruct {args.family}: accepted={result.accepted} "
                    f"trials={result.trials} D={fmt_float(result.ks_statistic)} "
                    f"threshold={fmt_float(result.ks_threshold)} "
                    f"{'pass' if result.passed else 'FAIL'}", args.quiet)
    return 0 if result.passed else 1


def _cmd_eval(args) -> int:
    fn = args.function
    if fn == "poisson-pmf":
        value = poisson_pmf(args.n, PoissonModel(mu=args.mu))
    elif fn == "poisson-cdf":
        value = poisson_cdf(args.n, PoissonModel(mu=args.mu))
    elif fn == "gamma-pdf":
        value = gamma_pdf(args.x, GammaModel(scale_a=args.scale, shape=args.shape))
    elif fn == "gamma-cdf":
        value = dual_gamma_cdf(args.mu, args.n)
    elif fn == "normal-pdf":
        value = normal_pdf(args.x, NormalModel(mean_a=args.mean, sigma=args.sigma))
    elif fn == "negbin-pmf":
        value = neg_binomial_pmf(args.k, NegBinomialModel(n=args.n, p=args.p))
    else:
        value = beta_pdf(args.x, BetaModel(n=args.n, m=args.m))
    print(fmt_float(value))
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "interval":
            return _cmd_interval(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "reconstruct":
            return _cmd_reconstruct(args)
        return _cmd_eval(args)
    except (DomainError, ConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
