"""Command-line front end.

JSON goes to stdout and diagnostics to stderr.  Exit codes: 0 on success
(a failed dominance check is still a success), 2 on bad input, 3 when a
``verify`` suite finds a violation.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import harness
from .functionals import FunctionalSpec, alpha_min_from_set, evaluate
from .jsonio import distribution_to_json, dumps, load_distribution, load_json
from .lattice import sup_order, total_variation
from .orders import Relation, check_order
from .quantile import (
    DEFAULT_TOL,
    eval_q,
    eval_q_plus,
    integrated_quantile,
    reflected_integrated,
)

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION = 0, 2, 3


class InputError(Exception):
    """Bad arguments or unreadable input; maps to exit code 2."""


def _positive(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (x > 0 and math.isfinite(x)):
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return x


def _count(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("count must be at least 1")
    return n


def _expand(paths: Sequence[str]) -> list[Path]:
    """Files as given; directories contribute their ``*.json`` files in name order."""
    out: list[Path] = []
    for p in map(Path, paths):
        out.extend(sorted(p.glob("*.json")) if p.is_dir() else [p])
    if not out:
        raise InputError("no distribution files given")
    return out


def _load_all(paths: Sequence[str], tol: float):
    return [load_distribution(p, tol) for p in _expand(paths)]


def _emit(obj, out: Optional[str] = None) -> None:
    text = dumps(obj)
    if out is None:
        print(text)
    else:
        Path(out).write_text(text + "\n", encoding="utf-8")


def _load_spec(text: str) -> FunctionalSpec:
    """``--spec`` takes inline JSON or a path to a JSON file."""
    obj = json.loads(text) if text.lstrip().startswith("{") else load_json(text)
    return FunctionalSpec.from_json(obj)


def cmd_check(args) -> int:
    a, b = (load_distribution(p, args.tol) for p in (args.a, args.b))
    _emit(check_order(args.relation, a, b, args.tol).to_json())
    return EXIT_OK


def cmd_sup(args) -> int:
    fam = _load_all(args.files, args.tol)
    _emit(distribution_to_json(sup_order(args.relation, fam, args.tol)), args.out)
    return EXIT_OK


def cmd_eval(args) -> int:
    spec = _load_spec(args.spec)
    _emit({"value": evaluate(spec, load_distribution(args.dist, args.tol), args.tol)})
    return EXIT_OK


def cmd_alpha_min(args) -> int:
    if args.levels is None:
        if len(args.set) != 1:
            raise InputError("several --set groups need --levels")
        result = alpha_min_from_set(args.relation, _load_all(args.set[0], args.tol), tol=args.tol)
    else:
        if len(args.levels) != len(args.set):
            raise InputError("need one --set group per level")
        fams = [_load_all(group, args.tol) for group in args.set]
        result = alpha_min_from_set(args.relation, fams, args.levels, args.tol)
    _emit(result.to_json(), args.out)
    return EXIT_OK


def cmd_tv(args) -> int:
    fam = _load_all(args.set, args.tol)
    _emit({"tv": total_variation(fam, args.lo, args.hi), "interval": [args.lo, args.hi]})
    return EXIT_OK


def cmd_verify(args) -> int:
    report = harness.run_suite(args.suite, args.trials, args.seed, args.tol)
    _emit(report.to_json())
    return EXIT_VIOLATION if report.violations else EXIT_OK


def cmd_plot_data(args) -> int:
    q = load_distribution(args.dist, args.tol)
    n = args.points
    if args.what == "q":
        rows = [(k / n, eval_q(q, k / n)) for k in range(1, n + 1)]
    elif args.what == "qplus":
        rows = [(k / n, eval_q_plus(q, k / n)) for k in range(n)]
    else:
        f = integrated_quantile(q) if args.what == "Q" else reflected_integrated(q)
        rows = [(k / n, f(k / n)) for k in range(n + 1)]
    out = sys.stdout
    out.write("u,value\n")
    for u, v in rows:
        out.write(f"{u:.17g},{v:.17g}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=_positive, default=DEFAULT_TOL, help="absolute tolerance (default 1e-9)")
    common.add_argument("--seed", type=int, default=0, help="master seed (default 0)")

    parser = argparse.ArgumentParser(prog="stochlattice", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    rels = [r.value for r in Relation]

    p = sub.add_parser("check", parents=[common], help="decide a ≼ b")
    p.add_argument("--relation", required=True, choices=rels)
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("sup", parents=[common], help="supremum of a family")
    p.add_argument("--relation", required=True, choices=rels)
    p.add_argument("files", nargs="+")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sup)

    p = sub.add_parser("eval", parents=[common], help="evaluate a functional")
    p.add_argument("--spec", required=True, help="inline JSON or a file")
    p.add_argument("dist")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("alpha-min", parents=[common], help="minimal penalty of an acceptance set")
    p.add_argument("--relation", required=True, choices=["st", "icx", "icv", "disp"])
    p.add_argument("--set", required=True, nargs="+", action="append", help="files or a directory; repeat per level")
    p.add_argument("--levels", type=float, nargs="+")
    p.add_argument("--out")
    p.set_defaults(func=cmd_alpha_min)

    p = sub.add_parser("tv", parents=[common], help="total variation of a family on [u, v]")
    p.add_argument("--set", required=True, nargs="+")
    p.add_argument("--from", dest="lo", type=float, required=True)
    p.add_argument("--to", dest="hi", type=float, required=True)
    p.set_defaults(func=cmd_tv)

    p = sub.add_parser("verify", parents=[common], help="run the property suites")
    p.add_argument("--suite", choices=[*harness.SUITES, "all"], default="all")
    p.add_argument("--trials", type=_count, default=100)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("plot-data", parents=[common], help="CSV samples of q, q+, Q or Qbar")
    p.add_argument("dist")
    p.add_argument("--what", choices=["q", "qplus", "Q", "Qbar"], default="q")
    p.add_argument("--points", type=_count, default=100)
    p.set_defaults(func=cmd_plot_data)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args)
    except (InputError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())
