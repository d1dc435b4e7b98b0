"""``glk``: evaluate and cross-check the representations of log A."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from typing import Optional, Sequence

from . import binet, glaisher, specialfn
from .quadrature import QuadratureConfig, QuadratureError

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3

FORMATS = ("text", "json", "csv")
RESULT_FIELDS = ("id", "log_a_estimate", "error_bound", "evals", "status", "deviation")

EQ13_NOTE = ("note: the eq13 integrand is implemented exactly as printed; it has a "
             "dangling term and its integral diverges, so 'diverged' is the expected outcome")


class UsageError(Exception):
    pass


def round15(v):
    """Round a float to 15 significant digits; repr of the result is stable
    under JSON parse/serialize. Non-finite values become None."""
    if v is None or not math.isfinite(v):
        return None
    return float(f"{v:.14e}")


def _rounded(d: dict) -> dict:
    out = {}
    for k, v in d.items():
        if isinstance(v, float):
            out[k] = round15(v)
        elif isinstance(v, list):
            out[k] = [_rounded(x) for x in v]
        else:
            out[k] = v
    return out


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False)


def _sci(v: Optional[float]) -> str:
    if v is None:
        return "nan"
    return f"{v:.14e}" if math.isfinite(v) else str(v)


def _fixed(v: float) -> str:
    # 15 significant digits; positional for the magnitudes that occur here
    return f"{v:.15g}" if math.isfinite(v) else str(v)


def base_config(tol: Optional[float] = None) -> QuadratureConfig:
    kw = {}
    if tol is not None:
        kw["abs_tol"] = kw["rel_tol"] = tol
    env = os.environ.get("GLK_MAX_EVALS")
    if env:
        try:
            kw["max_evals"] = int(env)
        except ValueError:
            raise UsageError(f"GLK_MAX_EVALS must be an integer, got {env!r}")
    try:
        return QuadratureConfig(**kw)
    except ValueError as exc:
        raise UsageError(str(exc))


def _result_row(r: glaisher.RepresentationResult) -> dict:
    return {
        "id": r.id.value,
        "log_a_estimate": r.log_a_estimate,
        "error_bound": r.error_bound,
        "evals": r.evals,
        "status": r.status,
        "deviation": r.deviation,
    }


def _csv(rows: list) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0]) if rows else RESULT_FIELDS,
                       lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({k: _sci(v) if isinstance(v, float) else v for k, v in row.items()})
    return buf.getvalue().rstrip("\n")


def _table(rows: list) -> str:
    header = ("id", "log A estimate", "deviation", "error bound", "evals", "status")
    body = [(row["id"], _fixed(row["log_a_estimate"]),
             f"{row['deviation']:.3e}" if math.isfinite(row["deviation"]) else "nan",
             f"{row['error_bound']:.3e}" if math.isfinite(row["error_bound"]) else "inf",
             str(row["evals"]), row["status"]) for row in rows]
    widths = [max(len(r[i]) for r in [header, *body]) for i in range(len(header))]
    fmt = lambda r: "  ".join(c.ljust(w) if i in (0, 5) else c.rjust(w)
                              for i, (c, w) in enumerate(zip(r, widths))).rstrip()
    lines = [fmt(header), fmt(tuple("-" * w for w in widths))]
    lines += [fmt(r) for r in body]
    return "\n".join(lines)


# --- subcommands ------------------------------------------------------------

def cmd_list(args) -> int:
    for rid in glaisher.RepresentationId:
        print(f"{rid.short:<5} {rid.value:<22} eq. ({rid.equation:>2})  {rid.description}")
    return EXIT_OK


def cmd_eval(args) -> int:
    try:
        rid = glaisher.RepresentationId.parse(args.rep)
    except ValueError as exc:
        raise UsageError(str(exc))
    if not 1e-14 <= args.tol <= 1e-2:
        raise UsageError("--tol must lie in [1e-14, 1e-2]")
    cfg = base_config(args.tol)
    r = glaisher.eval_representation(rid, cfg, prime_limit=args.prime_limit,
                                     barnes_n=args.barnes_n)
    row = _result_row(r)
    if args.format == "json":
        print(_dumps(_rounded(row)))
    elif args.format == "csv":
        print(_csv([row]))
    else:
        print(_table([row]))
    expected_divergence = rid is glaisher.RepresentationId.EQ13_TANH
    if expected_divergence and r.status == "diverged":
        print(EQ13_NOTE, file=sys.stderr if args.format != "text" else sys.stdout)
        return EXIT_OK
    if r.status in ("converged", glaisher.NOT_APPLICABLE) and not expected_divergence:
        return EXIT_OK
    print(f"error: {rid.value} finished with status {r.status}", file=sys.stderr)
    return EXIT_NUMERIC


def cmd_verify(args) -> int:
    if args.prime_limit < 2:
        raise UsageError("--prime-limit must be at least 2")
    if not 1 <= args.barnes_n <= glaisher.BARNES_N_MAX:
        raise UsageError(f"--barnes-n must lie in [1, {glaisher.BARNES_N_MAX}]")
    report = glaisher.verify_all(base_config(), prime_limit=args.prime_limit,
                                 barnes_n=args.barnes_n)
    if args.format == "json":
        print(_dumps(_rounded(report.to_dict())))
    elif args.format == "csv":
        print(_csv([_result_row(r) for r in report.results]))
    else:
        print(f"reference log A = {_fixed(report.reference_log_a)}")
        print(_table([_result_row(r) for r in report.results]))
        print(f"max |deviation| over converged integrals = {_sci(report.max_abs_deviation)}")
        print(f"verdict: {report.verdict}")
    return EXIT_OK if report.passed else EXIT_FAIL


def _print_estimate(name: str, est) -> int:
    print(f"{name} = {est.value:.15g}")
    print(f"error_bound = {est.error_bound:.3e}")
    print(f"evals = {est.evals}")
    print(f"status = {est.status.value}")
    return EXIT_OK if est.converged else EXIT_NUMERIC


def cmd_special(args) -> int:
    what = args.name
    if what == "constants":
        for name, value, prov in specialfn.CONSTANTS.items():
            print(f"{name} = {value!r}  [{prov}]")
        return EXIT_OK
    cfg = base_config()
    try:
        if what == "mu":
            method = args.method or "definition"
            est = binet.mu(_need(args.x, "--x"), _choice(binet.MuMethod, method), cfg)
            return _print_estimate(f"mu({args.x})", est)
        if what == "nu":
            variant = args.method or "poisson_exp"
            est = binet.nu(_need(args.x, "--x"), _choice(binet.NuVariant, variant), cfg)
            return _print_estimate(f"nu({args.x})", est)
        n = _need(args.n, "--n")
        z = _need(args.z, "--z")
        print(f"gamma_{n}({z}) = {specialfn.stieltjes_gamma(n, z, cfg):.15g}")
        return EXIT_OK
    except QuadratureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        raise UsageError(str(exc))


def _need(value, flag: str):
    if value is None:
        raise UsageError(f"{flag} is required")
    return value


def _choice(enum_cls, text: str):
    try:
        return enum_cls(text)
    except ValueError:
        names = ", ".join(m.value for m in enum_cls)
        raise UsageError(f"unknown method {text!r}; choose from {names}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="glk", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="list the representations of log A")

    e = sub.add_parser("eval", help="evaluate one representation")
    e.add_argument("--rep", required=True, help="tag such as eq28 or eq28_schaar_new")
    e.add_argument("--tol", type=float, default=1e-12)
    e.add_argument("--format", choices=FORMATS, default="text")
    e.add_argument("--prime-limit", type=int, default=100_000)
    e.add_argument("--barnes-n", type=int, default=50)

    v = sub.add_parser("verify", help="evaluate all representations and compare")
    v.add_argument("--format", choices=FORMATS, default="text")
    v.add_argument("--prime-limit", type=int, default=100_000)
    v.add_argument("--barnes-n", type=int, default=50)

    s = sub.add_parser("special", help="Binet function, Stieltjes constants, constants")
    s.add_argument("name", choices=("mu", "nu", "stieltjes", "constants"))
    s.add_argument("--x", type=float)
    s.add_argument("--method", help="mu method or nu variant")
    s.add_argument("--n", type=int)
    s.add_argument("--z", type=float)
    return p


_COMMANDS = {"list": cmd_list, "eval": cmd_eval, "verify": cmd_verify,
             "special": cmd_special}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"glk: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ArithmeticError, ValueError) as exc:
        print(f"glk: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
