"""Command-line front end.

Exit codes: 0 success, 1 a checked claim failed, 2 usage error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import __version__
from .arceval import EvalConfig, PrecisionError, TruncationError, real_trace
from .basis import construct, split_weight
from .bounds import (
    INTERVAL_ONE_HI,
    INTERVAL_TWO_LO,
    RESIDUE_CASES,
    residue_rhs,
    residue_suite,
    threshold_search,
    verify_delta_constants,
)
from .models import CosModel, b_value, model_property_suite
from .zeros import (
    MultiplicityError,
    OverlapError,
    ZeroMismatchError,
    count_expected,
    interlace_check,
    isolate_zeros,
    restrict,
    root_disposition,
    sign_scan_zeros,
    zero_sets_agree,
)

EXIT_OK, EXIT_CLAIM, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3
SCHEMA = 1
NUMERIC_ERRORS = (PrecisionError, TruncationError, ZeroMismatchError, MultiplicityError, OverlapError, ArithmeticError)

THRESHOLD_NAMES = ("epsilon", "b06", "b410", "b814", "overlap_combined")


class UsageError(Exception):
    pass


def parse_range(text: str, even: bool) -> list[int]:
    """``a..b`` (inclusive) or a single integer; with ``even`` the endpoints must be even."""
    try:
        if ".." in text:
            a, b = (int(s) for s in text.split("..", 1))
        else:
            a = b = int(text)
    except ValueError:
        raise UsageError(f"bad range {text!r}; use a..b") from None
    if a > b:
        raise UsageError(f"empty range {text!r}")
    if even:
        if a % 2 or b % 2:
            raise UsageError(f"range {text!r} must have even endpoints")
        return list(range(a, b + 1, 2))
    return list(range(a, b + 1))


def _config(args) -> EvalConfig:
    if getattr(args, "prec_bits", None):
        return EvalConfig(prec_bits=args.prec_bits)
    return EvalConfig()


def _metadata(argv, cfg: EvalConfig, started: float, **grids) -> dict:
    return {
        "command": ["mzl", *argv],
        "config": {**cfg.as_dict(), **grids},
        "version": __version__,
        "wall_time_s": round(time.perf_counter() - started, 3),
    }


def _emit_json(doc: dict) -> None:
    print(json.dumps({"schema": SCHEMA, **doc}, indent=2, sort_keys=True))


# --- basis -----------------------------------------------------------------


def cmd_basis(args, argv, started) -> int:
    try:
        form = construct(args.k, args.m)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.terms < -args.m:
        raise UsageError("--terms must be at least -m")
    series = form.expand(args.terms)
    coeffs = [(n, series.coefficient(n)) for n in range(-args.m, args.terms + 1)]
    F = [str(c) for c in form.F]
    if args.format == "json":
        _emit_json(
            {
                "k": form.k,
                "m": form.m,
                "ell": form.ell,
                "kprime": form.kprime,
                "F": F,
                "coefficients": [{"n": n, "c": str(c)} for n, c in coeffs],
                "metadata": _metadata(argv, EvalConfig(), started, terms=args.terms),
            }
        )
    elif args.format == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["n", "coefficient"])
        w.writerows((n, str(c)) for n, c in coeffs)
    else:
        print(f"f_{{{form.k},{form.m}}}  (l={form.ell}, k'={form.kprime})")
        print("F(j) = " + " + ".join(f"({c})*j^{i}" for i, c in enumerate(F) if c != "0"))
        for n, c in coeffs:
            print(f"q^{n}: {c}")
    return EXIT_OK


# --- zeros -------------------------------------------------------------------


def cmd_zeros(args, argv, started) -> int:
    cfg = _config(args)
    try:
        form = construct(args.k, args.m)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    zs = isolate_zeros(form, cfg)
    doc = {
        "k": form.k,
        "m": form.m,
        "ell": form.ell,
        "kprime": form.kprime,
        "degree_F": form.degree,
        **{key: zs.as_dict()[key] for key in ("zeros_theta", "radii", "endpoint_i", "endpoint_rho", "method")},
    }
    code = EXIT_OK
    if args.cross_check:
        scan = sign_scan_zeros(form, cfg)
        agree = zero_sets_agree(zs, scan)
        doc["cross_check"] = {"agree": agree, "sign_scan": scan.as_dict()}
        if not agree:
            doc["partial"] = True
            code = EXIT_NUMERIC
    if len(zs) < form.degree:
        disp = root_disposition(form)
        doc["root_disposition"] = disp
        msg = (
            f"f_{{{form.k},{form.m}}} has {len(zs)} arc zeros but deg F = {form.degree}: "
            "not every root of F lies in (0, 1728)"
        )
        doc["warning"] = msg
        print(f"warning: {msg}", file=sys.stderr)
    doc["metadata"] = _metadata(argv, cfg, started)
    if args.format == "json":
        _emit_json(doc)
    else:
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["theta", "radius"])
        w.writerows((repr(t), repr(r)) for t, r in zip(zs.zeros_theta, zs.radii))
    return code


# --- interlace -----------------------------------------------------------------


def _pair_verdict(task) -> dict:
    (k1, m1), (k2, m2), epsilon, prec = task
    cfg = EvalConfig(prec_bits=prec)
    out = {"first": [k1, m1], "second": [k2, m2]}
    try:
        a = isolate_zeros(construct(k1, m1), cfg, cross_check=True)
        b = isolate_zeros(construct(k2, m2), cfg, cross_check=True)
        if epsilon > 0:
            upper = 2 * math.pi / 3 - epsilon
            a, b = restrict(a, upper), restrict(b, upper)
        v = interlace_check(a, b)
        out.update(counts=[len(a), len(b)], **v.as_dict())
    except NUMERIC_ERRORS as exc:
        out.update(ok=False, numeric_error=f"{type(exc).__name__}: {exc}")
    return out


def cmd_interlace(args, argv, started) -> int:
    cfg = _config(args)
    if args.epsilon < 0:
        raise UsageError("--epsilon must be >= 0")
    ks = parse_range(args.k, even=True)
    ms = parse_range(args.m, even=False)
    tasks = []
    for k in ks:
        for m in ms:
            try:
                construct(k, m)
            except ValueError as exc:
                raise UsageError(str(exc)) from None
            second = (k + 12, m) if args.mode == "weight" else (k, m + 1)
            tasks.append(((k, m), second, args.epsilon, cfg.prec_bits))
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_pair_verdict, tasks))
    else:
        results = [_pair_verdict(t) for t in tasks]
    failed = [r for r in results if not r["ok"]]
    numeric = [r for r in failed if "numeric_error" in r]
    summary = f"{len(results) - len(failed)}/{len(results)} pairs interlace"
    doc = {
        "mode": args.mode,
        "epsilon": args.epsilon,
        "pairs": results,
        "summary": summary,
        "metadata": _metadata(argv, cfg, started),
    }
    if args.format == "json":
        _emit_json(doc)
    else:
        for r in results:
            print(f"{r['first']} vs {r['second']}: {'ok' if r['ok'] else 'FAIL'}")
        print(summary)
    if numeric:
        return EXIT_NUMERIC
    return EXIT_CLAIM if failed else EXIT_OK


# --- verify --------------------------------------------------------------------


def _suite_constants(args, cfg):
    reports = verify_delta_constants(args.grid)
    claimed = [r for r in reports.values() if r.paper_claim]
    items = [{**r.as_dict(), "relative_margin": r.relative_margin} for r in reports.values()]
    return items, all(r.holds for r in claimed)


def _suite_thresholds(args, cfg):
    items = [threshold_search(name, args.k_max).as_dict() for name in THRESHOLD_NAMES]
    return items, all(i["confirms_claim"] for i in items)


def _suite_residue(args, cfg):
    reports = residue_suite(RESIDUE_CASES, args.samples, cfg)
    bad = [r for r in reports if not r.holds]
    items = {
        "checked": len(reports),
        "failed": [r.as_dict() for r in bad],
        "worst_ratio": max(r.lhs / r.rhs for r in reports),
    }
    return [items], not bad


def _suite_models(args, cfg):
    reports = model_property_suite(args.draws, args.seed)
    bad = [r for r in reports if not r.ok]
    return [{"checked": len(reports), "failed": [r.as_dict() for r in bad]}], not bad


SUITES = {
    "constants": _suite_constants,
    "thresholds": _suite_thresholds,
    "residue": _suite_residue,
    "models": _suite_models,
}


def cmd_verify(args, argv, started) -> int:
    cfg = _config(args)
    names = list(SUITES) if args.suite == "all" else [args.suite]
    results = {}
    ok = True
    for name in names:
        items, passed = SUITES[name](args, cfg)
        results[name] = {"ok": passed, "reports": items}
        ok &= passed
    grids = {"grid": args.grid, "samples": args.samples, "draws": args.draws, "seed": args.seed, "k_max": args.k_max}
    _emit_json({"suites": results, "ok": ok, "metadata": _metadata(argv, cfg, started, **grids)})
    for name, res in results.items():
        if not res["ok"]:
            print(f"suite {name} failed", file=sys.stderr)
    return EXIT_OK if ok else EXIT_CLAIM


# --- plot -------------------------------------------------------------------------

PLOT_COLUMNS = ["theta", "g", "cos_model", "h_model", "rhs_bound_interval1", "rhs_bound_interval2"]


def plot_rows(k: int, m: int, samples: int, cfg: EvalConfig) -> list[list]:
    form = construct(k, m)
    model = CosModel(k, m)
    rows = []
    for i in range(samples):
        t = math.pi / 2 + (math.pi / 6) * (i + 1) / (samples + 1)
        g = float(real_trace(form, t, cfg).value)
        cos_model = 2 * math.cos(b_value(model, t))
        h = r1 = r2 = ""
        if t <= INTERVAL_ONE_HI:
            r1 = residue_rhs(k, m, t, "one", cfg)
        if t >= INTERVAL_TWO_LO:
            h = cos_model + (-1) ** m * math.exp(
                -math.pi * m * (2 * math.sin(t) - math.tan(t / 2))
            ) / (2 * math.cos(t / 2)) ** k
            r2 = residue_rhs(k, m, t, "two", cfg)
        rows.append([t, g, cos_model, h, r1, r2])
    return rows


def cmd_plot(args, argv, started) -> int:
    cfg = _config(args)
    if args.samples < 2:
        raise UsageError("--samples must be at least 2")
    try:
        construct(args.k, args.m)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = plot_rows(args.k, args.m, args.samples, cfg)
    try:
        with open(args.out, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(PLOT_COLUMNS)
            w.writerows([repr(v) if isinstance(v, float) else v for v in row] for row in rows)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(json.dumps({"schema": SCHEMA, "out": args.out, "rows": len(rows)}, sort_keys=True))
    return EXIT_OK


# --- entry point ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mzl", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"mzl {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("basis", help="exact q-expansion of f_{k,m}")
    b.add_argument("-k", type=int, required=True)
    b.add_argument("-m", type=int, required=True)
    b.add_argument("--terms", type=int, default=10)
    b.add_argument("--format", choices=("json", "csv", "text"), default="text")
    b.set_defaults(func=cmd_basis)

    z = sub.add_parser("zeros", help="certified zeros on the arc")
    z.add_argument("-k", type=int, required=True)
    z.add_argument("-m", type=int, required=True)
    z.add_argument("--prec-bits", type=int)
    z.add_argument("--format", choices=("json", "csv"), default="json")
    z.add_argument("--no-cross-check", dest="cross_check", action="store_false")
    z.set_defaults(func=cmd_zeros)

    i = sub.add_parser("interlace", help="interlacing scans over k or m")
    i.add_argument("--mode", choices=("weight", "index"), required=True)
    i.add_argument("-k", required=True, help="even k or inclusive range a..b")
    i.add_argument("-m", required=True, help="m or inclusive range a..b")
    i.add_argument("--epsilon", type=float, default=0.0)
    i.add_argument("--prec-bits", type=int)
    i.add_argument("--jobs", type=int, default=1)
    i.add_argument("--format", choices=("json", "text"), default="json")
    i.set_defaults(func=cmd_interlace)

    v = sub.add_parser("verify", help="run a reproduction suite")
    v.add_argument("--suite", choices=(*SUITES, "all"), default="all")
    v.add_argument("--grid", type=int, default=10_000)
    v.add_argument("--samples", type=int, default=50)
    v.add_argument("--draws", type=int, default=200)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--k-max", type=int, default=600)
    v.add_argument("--prec-bits", type=int)
    v.set_defaults(func=cmd_verify)

    pl = sub.add_parser("plot", help="CSV of the real trace and its models over the arc")
    pl.add_argument("-k", type=int, required=True)
    pl.add_argument("-m", type=int, required=True)
    pl.add_argument("--samples", type=int, default=200)
    pl.add_argument("--out", required=True)
    pl.add_argument("--prec-bits", type=int)
    pl.set_defaults(func=cmd_plot)
    return p


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    started = time.perf_counter()
    try:
        return args.func(args, argv, started)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NUMERIC_ERRORS as exc:
        print(f"numeric failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
