"""Command-line front end.

Exit codes: 0 success, 1 a verified property failed, 2 usage, parse or
domain error.  Output depends only on the arguments (and ``--seed``), so
repeated runs are byte-identical.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import qexpr, verify, vitali
from .errors import QError
from .qalgebra import QParam, as_rational
from .qmeasure import (
    measure_set,
    parse_interval_set,
    scale_set,
    translate_set,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class RunConfig:
    q: Fraction = Fraction(1)
    seed: int = 42
    cases: int = 1000
    format: str = "plain"
    precision: int = 12


class UsageError(Exception):
    pass


def fmt_float(x: float, precision: int) -> str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    text = format(x, f".{precision}g")
    return "0" if text == "-0" else text


def _rational_arg(text: str) -> Fraction:
    try:
        return as_rational(text)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from exc


def _qparam(cfg: RunConfig) -> QParam:
    return QParam(cfg.q)


def _emit_rows(rows: list[dict], cfg: RunConfig, notes: list[str] = ()) -> str:
    if cfg.format == "json":
        return json.dumps({"rows": rows, "notes": list(notes)}, indent=2) + "\n"
    if cfg.format == "csv":
        buf = io.StringIO()
        fields = list(rows[0]) if rows else []
        w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        for note in notes:
            w.writerow({fields[0]: "note", fields[-1]: note} if fields else {})
        return buf.getvalue()
    out = []
    for row in rows:
        out.append("  ".join(f"{k}={v}" for k, v in row.items()))
    out.extend(f"note: {n}" for n in notes)
    return "\n".join(out) + "\n"


def _emit_mapping(data: dict, cfg: RunConfig) -> str:
    if cfg.format == "json":
        return json.dumps(data, indent=2) + "\n"
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(list(data))
        w.writerow(list(data.values()))
        return buf.getvalue()
    return "".join(f"{k}: {v}\n" for k, v in data.items())


# -- subcommands -------------------------------------------------------------


def cmd_eval(expr: str, cfg: RunConfig) -> str:
    tree = qexpr.parse(qexpr.tokenize(expr))
    q = _qparam(cfg)
    if qexpr.is_exact(tree):
        value = str(qexpr.evaluate(tree, q, "exact"))
    else:
        value = fmt_float(qexpr.evaluate(tree, q, "float"), cfg.precision)
    if cfg.format == "plain":
        return value + "\n"
    return _emit_mapping({"expr": expr, "q": str(q), "value": value}, cfg)


def cmd_measure(set_text: str, cfg: RunConfig) -> str:
    s = parse_interval_set(set_text)
    value = fmt_float(measure_set(s, _qparam(cfg)), cfg.precision)
    if cfg.format == "plain":
        return value + "\n"
    return _emit_mapping({"set": str(s), "q": str(cfg.q), "measure": value}, cfg)


def cmd_translate(set_text: str, v: Fraction, cfg: RunConfig) -> str:
    q = _qparam(cfg)
    s = parse_interval_set(set_text)
    moved = translate_set(s, v, q)
    p = cfg.precision
    return _emit_mapping(
        {
            "set": str(s),
            "v": str(v),
            "q": str(q),
            "translated": str(moved),
            "measure": fmt_float(measure_set(s, q), p),
            "translated_measure": fmt_float(measure_set(moved, q), p),
        },
        cfg,
    )


def cmd_scale(set_text: str, alpha: Fraction, cfg: RunConfig) -> str:
    q = _qparam(cfg)
    s = parse_interval_set(set_text)
    scaled, q2 = scale_set(s, alpha, q)
    p = cfg.precision
    return _emit_mapping(
        {
            "set": str(s),
            "alpha": str(alpha),
            "q": str(q),
            "scaled": str(scaled),
            "q_prime": str(q2),
            "lhs_mu_q(alpha*A)": fmt_float(measure_set(scaled, q), p),
            "rhs_alpha*mu_q'(A)": fmt_float(float(alpha) * measure_set(s, q2), p),
        },
        cfg,
    )


def parse_grid(text: str) -> list[Fraction]:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"q-grid must be start:stop:step, got {text!r}")
    try:
        start, stop, step = (as_rational(p) for p in parts)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"q-grid values must be exact rationals: {text!r}") from exc
    if step <= 0:
        raise UsageError("q-grid step must be positive")
    grid = []
    q = start
    while q <= stop:
        grid.append(q)
        q += step
    if not grid:
        raise UsageError(f"q-grid {text!r} is empty")
    bad = [g for g in grid if not (vitali.HALF <= g <= 1)]
    if bad:
        raise UsageError(f"q-grid values must lie in [1/2, 1]; got {bad[0]}")
    return grid


def half_limit_note(precision: int) -> str:
    d = vitali.half_limit_discrepancy()
    return (
        f"q->1/2 lower-bound limit: computed 2*ln(3/2) = {fmt_float(d['computed'], precision)}; "
        f"the stated value 3*ln(4/3) = {fmt_float(d['reported'], precision)} differs "
        f"(it is the bound at q = 2/3); upper bound diverges"
    )


def cmd_bounds(grid_text: str, cfg: RunConfig) -> str:
    grid = parse_grid(grid_text)
    rows = []
    for q in grid:
        row = vitali.theorem_bounds(q)
        rows.append(
            {
                "q": fmt_float(float(row.q), cfg.precision),
                "lower": fmt_float(row.lower, cfg.precision),
                "upper": fmt_float(row.upper, cfg.precision),
                "status": "finite" if math.isfinite(row.upper) else "divergent",
            }
        )
    notes = [half_limit_note(cfg.precision)] if vitali.HALF in grid else []
    return _emit_rows(rows, cfg, notes)


def cmd_enumerate(n: int, cfg: RunConfig) -> str:
    if n < 1:
        raise UsageError("n must be >= 1")
    values = [str(r) for r in vitali.enumerate_rationals(n)]
    if cfg.format == "json":
        return json.dumps(values) + "\n"
    if cfg.format == "csv":
        return "k,r\n" + "".join(f"{k},{r}\n" for k, r in enumerate(values, 1))
    return "\n".join(values) + "\n"


def cmd_verify(suite: str, cfg: RunConfig) -> tuple[str, bool]:
    if cfg.cases < 1:
        raise UsageError("cases must be ≥ 1")
    names = verify.suite_names() if suite == "all" else [suite]
    report = verify.run_suites(names, seed=cfg.seed, cases=cfg.cases)
    rows = [
        {
            "suite": r.suite,
            "property": r.name,
            "cases": r.cases,
            "failures": r.failures,
            "max_error": f"{r.max_error:.3e}",
            "status": "pass" if r.passed else "FAIL",
        }
        for r in report.results
    ]
    failed = [r for r in report.results if not r.passed]
    if cfg.format == "json":
        payload = {
            "seed": cfg.seed,
            "cases": cfg.cases,
            "results": [
                dict(row, counterexample=r.counterexample) for row, r in zip(rows, report.results)
            ],
            "passed": report.passed,
        }
        return json.dumps(payload, indent=2) + "\n", report.passed
    if cfg.format == "csv":
        return _emit_rows(rows, cfg), report.passed
    lines = [f"seed={cfg.seed} cases={cfg.cases}"]
    for r in report.results:
        status = "pass" if r.passed else "FAIL"
        lines.append(
            f"{status:4}  {r.suite}.{r.name}: {r.cases - r.failures}/{r.cases} passed"
            f" (max error {r.max_error:.3e})"
        )
    for r in failed[:1]:
        lines.append(f"first counterexample in {r.suite}.{r.name}: {r.counterexample}")
    lines.append(f"{len(report.results) - len(failed)}/{len(report.results)} properties passed")
    return "\n".join(lines) + "\n", report.passed


# -- argument parsing --------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=_rational_arg, default=Fraction(1),
                        help="deformation parameter as an exact rational, e.g. 1/2 or 0.75 (default 1)")
    common.add_argument("--format", choices=("plain", "csv", "json"), default="plain")
    common.add_argument("--seed", type=int, default=42, help="random seed (default 42)")
    common.add_argument("--cases", type=int, default=1000, help="random cases per property (default 1000)")
    common.add_argument("--precision", type=int, default=12,
                        help="significant digits for floats (default 12)")

    parser = argparse.ArgumentParser(
        prog="qvitali",
        description="q-deformed algebra, the nonextensive measure mu_q and the generalized Vitali checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate a q-expression")
    p.add_argument("expr", help='expression, e.g. "1/2 o+ 1/3" or "qexp(2)"')

    p = sub.add_parser("measure", parents=[common], help="mu_q of a finite union of intervals")
    p.add_argument("--set", dest="set_text", required=True, help='intervals, e.g. "[0,1],[3/2,2]"')

    p = sub.add_parser("translate", parents=[common], help="q-translate a set and compare measures")
    p.add_argument("--set", dest="set_text", required=True)
    p.add_argument("--v", type=_rational_arg, required=True, help="translation amount (exact rational)")

    p = sub.add_parser("scale", parents=[common], help="dilate a set and check the scaling law")
    p.add_argument("--set", dest="set_text", required=True)
    p.add_argument("--alpha", type=_rational_arg, required=True, help="scale factor > 0 (exact rational)")

    p = sub.add_parser("bounds", parents=[common], help="lower/upper measure bounds over a q grid")
    p.add_argument("--q-grid", dest="q_grid", required=True, help="start:stop:step, e.g. 1/2:1:1/10")

    p = sub.add_parser("enumerate-rationals", parents=[common], help="first n terms of the enumeration of Q in [-1,1]")
    p.add_argument("n", type=int)

    p = sub.add_parser("verify", parents=[common], help="run seeded property suites")
    p.add_argument("--suite", choices=("all", *verify.suite_names()), default="all")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_USAGE
    cfg = RunConfig(q=args.q, seed=args.seed, cases=args.cases, format=args.format, precision=args.precision)
    status = EXIT_OK
    try:
        if cfg.precision < 1:
            raise UsageError("precision must be >= 1")
        _qparam(cfg)
        if args.command == "eval":
            out = cmd_eval(args.expr, cfg)
        elif args.command == "measure":
            out = cmd_measure(args.set_text, cfg)
        elif args.command == "translate":
            out = cmd_translate(args.set_text, args.v, cfg)
        elif args.command == "scale":
            out = cmd_scale(args.set_text, args.alpha, cfg)
        elif args.command == "bounds":
            out = cmd_bounds(args.q_grid, cfg)
        elif args.command == "enumerate-rationals":
            out = cmd_enumerate(args.n, cfg)
        else:
            out, ok = cmd_verify(args.suite, cfg)
            status = EXIT_OK if ok else EXIT_FAIL
    except (QError, UsageError, ValueError, ZeroDivisionError) as exc:
        print(f"qvitali {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(out)
    return status


if __name__ == "__main__":
    sys.exit(main())
