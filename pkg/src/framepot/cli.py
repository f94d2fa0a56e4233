"""Command-line front end: ``framepot <subcommand>``.

Exit codes: 0 success, 1 internal error, 2 input validation, 3 verification
failure. Every subcommand accepts ``--json`` and then prints a run record
``{command, params, timestamp, version, results}``.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path

from . import campaign, core, io, potential, simplex
from .optimizer import MinimizeOptions, minimize_fp

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2, 3


class InputError(Exception):
    pass


def _version():
    try:
        return version("framepot")
    except PackageNotFoundError:
        return "0+unknown"


def _fmt(x):
    if x is None:
        return "-"
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def _jsonable(obj):
    if isinstance(obj, float) and math.isinf(obj):
        return "inf" if obj > 0 else "-inf"
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def run_record(command, params, results) -> dict:
    return {
        "command": command,
        "params": params,
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
        "version": _version(),
        "results": _jsonable(results),
    }


def _emit(args, results, text_lines):
    if args.json:
        params = {k: v for k, v in vars(args).items() if k not in ("json", "func")}
        params = {k: (str(v) if isinstance(v, Path) else v) for k, v in params.items()}
        print(json.dumps(run_record(args.command, params, results), indent=2))
    else:
        for line in text_lines:
            print(line)


def _construct(family, d, k=None, m=None):
    if family == "lifted-etf":
        if k is None:
            raise InputError("lifted-etf needs --k")
        if not 1 <= k <= d:
            raise InputError(f"lifted-etf needs 1 <= k <= d, got k={k}, d={d}")
        return core.lifted_etf(d, k)
    if family == "simplex-etf":
        if d < 1:
            raise InputError("simplex-etf needs d >= 1")
        return core.lifted_etf(d, d)
    if family == "onb-plus-repeats":
        if m is None or m < 0 or d < 1:
            raise InputError("onb-plus-repeats needs d >= 1 and --m >= 0")
        return core.onb_plus_repeats(d, m)
    raise InputError(f"unknown family {family!r}")


def cmd_eval(args):
    try:
        X = io.load_configuration(args.config)
    except FileNotFoundError as exc:
        raise InputError(str(exc)) from exc
    except core.NonUnitRowError as exc:
        raise InputError(f"{args.config}: {exc}") from exc
    except io.FormatError as exc:
        raise InputError(str(exc)) from exc
    if not args.p > 0:
        raise InputError("p must be positive")
    fp = potential.frame_potential(X, args.p)
    coh = potential.coherence(X) if X.n >= 2 else None
    bounds = potential.bound_report(X.n, X.dim, args.p)
    results = {"n": X.n, "d": X.dim, "p": args.p, "frame_potential": fp, "coherence": coh,
               "bounds": bounds}
    lines = [f"N={X.n} d={X.dim} p={_fmt(args.p)}",
             f"frame potential  {_fmt(fp)}",
             f"coherence        {_fmt(coh)}"]
    for b in bounds:
        flag = "valid" if b["valid"] else "not proven here"
        lines.append(f"{b['bound_name']:<16} {_fmt(b['value'])}  ({flag})")
    _emit(args, results, lines)
    return EXIT_OK


def cmd_construct(args):
    X = _construct(args.family, args.d, args.k, args.m)
    if args.out:
        io.save_configuration(X, args.out)
    results = io.configuration_to_dict(X)
    lines = [f"{args.family} d={args.d}: {X.n} vectors"]
    lines += ["  " + " ".join(f"{v: .12g}" for v in row) for row in X.vectors]
    if args.out:
        lines.append(f"written to {args.out}")
    _emit(args, results, lines)
    return EXIT_OK


def cmd_bounds(args):
    n = args.n if args.n is not None else args.d + 1
    if n < 1 or args.d < 1 or not args.p > 0:
        raise InputError("need n >= 1, d >= 1, p > 0")
    try:
        records = potential.bound_report(n, args.d, args.p)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if n == args.d + 1:
        for k in range(1, args.d + 1):
            value = potential.frame_potential(core.lifted_etf(args.d, k), args.p)
            records.append(dict(bound_name=None, family="lifted-etf", d=args.d, k=k, p=args.p,
                                value=value, valid=True))
    lines = [f"{'name':<16} {'family':<12} {'k':>3} {'value':>20}  valid"]
    for r in records:
        lines.append(f"{_fmt(r['bound_name']):<16} {_fmt(r['family']):<12} {_fmt(r['k']):>3} "
                     f"{_fmt(r['value']):>20}  {r['valid']}")
    _emit(args, records, lines)
    return EXIT_OK


def regime_rows(d: int) -> list[dict]:
    """Rows of the minimizer table for ``N = d+1``: interior regimes then boundaries."""
    table = potential.regime_boundaries(d)
    rows = []
    for k in range(1, d + 1):
        lo, hi = table.interval(k)
        a_lo, a_hi = table.alpha_interval(k)
        rows.append({"kind": "interior", "k": k, "p_interval": [lo, hi],
                     "minimizers": [f"L_{k}^{d}"], "value": f"({k}+1)*{k}^(1-p)",
                     "alpha_interval": [a_lo, a_hi]})
    for k in range(1, d):
        pk = float(table.boundaries[k])
        rows.append({"kind": "boundary", "k": k, "p": pk,
                     "minimizers": [f"L_{k}^{d}", f"L_{k + 1}^{d}"],
                     "value": potential.lifted_etf_potential(k, pk),
                     "alpha": float(table.alpha_thresholds[k])})
    return rows


def cmd_regimes(args):
    if args.d < 2:
        raise InputError("regimes needs d >= 2")
    rows = regime_rows(args.d)
    lines = [f"{'kind':<9} {'k':>2}  {'p range':<34} {'minimizer(s)':<16} {'value':<16} alpha range"]
    for r in rows:
        if r["kind"] == "interior":
            pr = f"({_fmt(r['p_interval'][0])}, {_fmt(r['p_interval'][1])})"
            ar = f"({_fmt(r['alpha_interval'][0])}, {_fmt(r['alpha_interval'][1])})"
            lines.append(f"{'interior':<9} {r['k']:>2}  {pr:<34} {r['minimizers'][0]:<16} "
                         f"{r['value']:<16} {ar}")
        else:
            lines.append(f"{'boundary':<9} {r['k']:>2}  {'p = ' + _fmt(r['p']):<34} "
                         f"{' or '.join(r['minimizers']):<16} {_fmt(r['value']):<16} "
                         f"alpha = {_fmt(r['alpha'])}")
    _emit(args, rows, lines)
    return EXIT_OK


def cmd_minimize(args):
    if args.d < 2 or not 0 < args.p < 2:
        raise InputError("minimize needs d >= 2 and 0 < p < 2")
    opts = MinimizeOptions(restarts=args.restarts, seed=args.seed, max_iters=args.max_iters)
    rep = minimize_fp(args.d, args.p, opts)
    results = rep.to_dict()
    if args.json_out:
        Path(args.json_out).write_text(json.dumps(_jsonable(results), indent=2))
    if args.config_out:
        io.save_configuration(rep.best, args.config_out)
    lines = [f"d={args.d} p={_fmt(args.p)} restarts={args.restarts} seed={args.seed}",
             f"value        {_fmt(rep.value)}",
             f"theoretical  {_fmt(rep.theoretical)}",
             f"rel_gap      {rep.rel_gap:.3e}",
             f"classified   {_fmt(rep.classified_as)}",
             f"converged    {rep.restarts_converged}/{args.restarts}",
             f"fallback     {rep.used_fallback}"]
    _emit(args, results, lines)
    return EXIT_OK


def lemma_m_payload(d, alpha, grid_n=200, restarts=20, seed=0):
    an = simplex.maximize_m_analytic(d, alpha)
    pt, val = simplex.maximize_m_brute(d, alpha, grid_n=grid_n, restarts=restarts, seed=seed)
    agree = abs(an.value - val) <= 1e-8
    return {
        "d": d, "alpha": alpha,
        "analytic": {"points": [p.z.tolist() for p in an.points], "value": an.value},
        "brute": {"point": pt.z.tolist(), "value": val},
        "agree": bool(agree),
    }


def cmd_lemma_m(args):
    if args.d < 1:
        raise InputError("d must be >= 1")
    if args.k is not None:
        if not 1 <= args.k <= args.d - 1:
            raise InputError("--k must lie in 1..d-1")
        alpha = potential.alpha_threshold(args.k)
    elif args.alpha is not None:
        alpha = args.alpha
    else:
        raise InputError("give --alpha or --k")
    if not alpha > 1:
        raise InputError("alpha must be > 1")
    if args.grid_n < 50 or args.restarts < 1:
        raise InputError("need --grid-n >= 50 and --restarts >= 1")
    payload = lemma_m_payload(args.d, alpha, args.grid_n, args.restarts, args.seed)
    lines = [f"d={args.d} alpha={_fmt(alpha)}",
             f"analytic value {_fmt(payload['analytic']['value'])} at "
             + "; ".join(str([round(v, 12) for v in p]) for p in payload["analytic"]["points"]),
             f"brute value    {_fmt(payload['brute']['value'])}",
             f"agree          {payload['agree']}"]
    _emit(args, payload, lines)
    return EXIT_OK if payload["agree"] else EXIT_VERIFY


def _sabotaged_theory(k, p):
    return (k + 1) * k ** (-p)


def cmd_verify(args):
    if any(d < 2 for d in args.d) or args.samples < 1 or args.restarts < 1:
        raise InputError("verify needs every d >= 2, samples >= 1, restarts >= 1")
    theory = _sabotaged_theory if args.sabotage else potential.lifted_etf_potential
    results = campaign.verify_campaign(args.d, args.samples, args.restarts, args.seed,
                                       boundaries=not args.no_boundaries, theory=theory,
                                       max_iters=args.max_iters)
    summary = campaign.summarize(results)
    payload = {"summary": summary, "cells": [r.to_dict() for r in results]}
    lines = []
    for r in results:
        tag = "PASS" if r.passed else "FAIL"
        lines.append(f"{tag} d={r.d} p={r.p:.12g} {r.kind:<8} expected k in {list(r.expected)} "
                     f"got {_fmt(r.classified_as)} rel_gap={r.rel_gap:.2e}"
                     + ("" if r.passed else "  <- " + "; ".join(r.reasons)))
    lines.append(f"{summary['cells'] - summary['failed']}/{summary['cells']} cells passed")
    _emit(args, payload, lines)
    return EXIT_OK if summary["passed"] else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="framepot", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {_version()}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("--json", action="store_true", help="print a JSON run record")
        p.set_defaults(func=func)
        return p

    p = add("eval", cmd_eval, "evaluate the p-frame potential of a configuration file")
    p.add_argument("config", type=Path)
    p.add_argument("--p", type=float, required=True)

    p = add("construct", cmd_construct, "write a canonical configuration")
    p.add_argument("family", choices=["lifted-etf", "onb-plus-repeats", "simplex-etf"])
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--out", type=Path)

    p = add("bounds", cmd_bounds, "classical lower bounds and lifted ETF values")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, help="number of vectors (default d+1)")
    p.add_argument("--p", type=float, required=True)

    p = add("regimes", cmd_regimes, "minimizer table for N = d+1")
    p.add_argument("--d", type=int, required=True)

    p = add("minimize", cmd_minimize, "numerically minimize the p-frame potential, N = d+1")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--restarts", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iters", type=int, default=20_000)
    p.add_argument("--json-out", type=Path)
    p.add_argument("--config-out", type=Path)

    p = add("lemma-m", cmd_lemma_m, "analytic vs brute-force maximum of M_alpha on the simplex")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--alpha", type=float)
    p.add_argument("--k", type=int, help="use the exact threshold a_k as alpha")
    p.add_argument("--grid-n", type=int, default=200)
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)

    p = add("verify", cmd_verify, "minimization campaign over regimes and boundaries")
    p.add_argument("--d", type=int, nargs="+", default=[2, 3])
    p.add_argument("--samples", type=int, default=5, help="interior samples per regime")
    p.add_argument("--restarts", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iters", type=int, default=20_000)
    p.add_argument("--no-boundaries", action="store_true")
    p.add_argument("--sabotage", action="store_true", help=argparse.SUPPRESS)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
