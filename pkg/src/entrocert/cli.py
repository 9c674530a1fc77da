"""Command-line front end.

Exit codes: 0 all selected suites PASS; 1 at least one FAIL; 2 deviations
that are only INCONCLUSIVE or SKIPPED; 3 usage or domain errors.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import Optional

from .certify import SUITE_TOKENS, TestConfig, run_suite, worst_exit_code
from .expr import ParseError, parse
from .functions import ScalarFunction, lookup, registry
from .jets import DomainError
from .report import CertificationReport, write_sweep_csv


class _ArgumentParser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags, but 2 already means
    # "inconclusive deviations" here; usage errors are 3.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(3, f"{self.prog}: error: {message}\n")


def _add_selection_flags(sp: argparse.ArgumentParser) -> None:
    grp = sp.add_mutually_exclusive_group(required=True)
    grp.add_argument("--function", help="registry function name (see `entrocert list`)")
    grp.add_argument("--expr", help="scalar expression in t, e.g. 't*log(t)'")
    sp.add_argument(
        "--zero-extension",
        type=float,
        default=None,
        metavar="VALUE",
        help="value assigned at t=0 for --expr functions (omit: undefined at 0)",
    )
    sp.add_argument("--suite", default="all", choices=SUITE_TOKENS)
    sp.add_argument(
        "--dim",
        type=int,
        action="append",
        metavar="N",
        help="matrix dimension, repeatable (default: 2 and 3)",
    )
    sp.add_argument(
        "--bipartite",
        action="append",
        metavar="D1xD2",
        help="bipartite split for partial-trace tests, repeatable "
        "(default: 2x2, 2x3, 3x2)",
    )
    sp.add_argument("--samples", type=int, default=200, help="trials per dimension")
    sp.add_argument("--seed", type=int, required=True, help="64-bit RNG seed")
    sp.add_argument("--tol", type=float, default=1e-8, help="violation threshold on normalized margins")
    sp.add_argument("--eig-min", type=float, default=0.1)
    sp.add_argument("--eig-max", type=float, default=10.0)


def _build_parser() -> _ArgumentParser:
    p = _ArgumentParser(
        prog="entrocert",
        description="Certify or refute entropy properties of convex trace functions.",
    )
    sub = p.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    sp_cert = sub.add_parser("certify", help="run suites and emit a JSON report")
    _add_selection_flags(sp_cert)
    sp_cert.add_argument("--out", metavar="PATH", help="report file (default: stdout)")
    sp_cert.add_argument(
        "--sweep-csv", metavar="PATH", help="also dump per-trial margins as CSV"
    )

    sp_sweep = sub.add_parser("sweep", help="emit per-trial margins as CSV")
    _add_selection_flags(sp_sweep)
    sp_sweep.add_argument("--out", metavar="PATH", help="CSV file (default: stdout)")

    sub.add_parser("list", help="list built-in candidate functions")
    return p


def _resolve_function(args) -> ScalarFunction:
    if args.function is not None:
        if args.zero_extension is not None:
            raise ValueError("--zero-extension only applies to --expr functions")
        return lookup(args.function)
    return parse(args.expr).as_function(zero_extension=args.zero_extension)


def _parse_bipartite(text: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise ValueError(f"--bipartite expects D1xD2 (e.g. 2x3), got {text!r}")
    try:
        d1, d2 = int(parts[0]), int(parts[1])
    except ValueError:
        raise ValueError(f"--bipartite expects integers D1xD2, got {text!r}") from None
    return d1, d2


def _build_config(args) -> TestConfig:
    kwargs = {
        "seed": args.seed,
        "samples": args.samples,
        "tol": args.tol,
        "eig_range": (args.eig_min, args.eig_max),
    }
    if args.dim:
        kwargs["dims"] = tuple(args.dim)
    if args.bipartite:
        kwargs["bipartite"] = tuple(_parse_bipartite(b) for b in args.bipartite)
    return TestConfig(**kwargs)


def _print_summary(outcomes) -> None:
    for o in outcomes:
        margin = "n/a" if o.min_margin is None else f"{o.min_margin:.3e}"
        line = (
            f"[{o.verdict}] {o.name}: min margin {margin} "
            f"({o.trials_run} trials, {o.trials_skipped} skipped)"
        )
        if o.detail:
            line += f" -- {o.detail}"
        print(line, file=sys.stderr)


def cmd_certify(args) -> int:
    f = _resolve_function(args)
    cfg = _build_config(args)
    recorder = [] if args.sweep_csv else None
    start = time.perf_counter()
    outcomes, fit = run_suite(f, args.suite, cfg, recorder)
    wall_ms = (time.perf_counter() - start) * 1000.0
    report = CertificationReport(
        function=f.describe(),
        config=cfg.as_dict(),
        outcomes=tuple(outcomes),
        wall_time_ms=wall_ms,
        fit=fit,
    )
    text = report.to_json()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    if args.sweep_csv:
        with open(args.sweep_csv, "w", encoding="utf-8", newline="") as fh:
            write_sweep_csv(recorder, fh)
    _print_summary(outcomes)
    return worst_exit_code(outcomes)


def cmd_sweep(args) -> int:
    f = _resolve_function(args)
    cfg = _build_config(args)
    recorder: list = []
    outcomes, _ = run_suite(f, args.suite, cfg, recorder)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_sweep_csv(recorder, fh)
    else:
        write_sweep_csv(recorder, sys.stdout)
    _print_summary(outcomes)
    return worst_exit_code(outcomes)


def cmd_list(_args) -> int:
    for f in registry():
        ext = "undefined at 0" if f.zero_extension is None else f"f(0)={f.zero_extension:g}"
        print(f"{f.name:<12} {ext}")
    return 0


def main(argv: Optional[list] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help exits 0, usage errors exit 3
        return int(exc.code or 0)
    try:
        if args.command == "certify":
            return cmd_certify(args)
        if args.command == "sweep":
            return cmd_sweep(args)
        return cmd_list(args)
    except ParseError as exc:
        print(f"entrocert: expression error: {exc}", file=sys.stderr)
        return 3
    except DomainError as exc:
        print(f"entrocert: domain error: {exc}", file=sys.stderr)
        return 3
    except KeyError as exc:
        msg = exc.args[0] if exc.args else str(exc)
        print(f"entrocert: error: {msg}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"entrocert: error: {exc}", file=sys.stderr)
        return 3


def entry() -> None:
    sys.exit(main())
