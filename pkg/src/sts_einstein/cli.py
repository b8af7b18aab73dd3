"""Command-line front end.

    sts-einstein list
    sts-einstein verify <key|path> [--all | --checks a,b,c | --axioms ...] [--samples N] [--seed S] [--format json|table]
    sts-einstein dump <key|path> [--what sts|lie|metric|report]

Exit codes: 0 all selected checks pass, 1 a check failed, 2 bad input or usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import catalog, sts
from .exactnum import to_strings
from .geometry import build_metric
from .lie import build_enveloping, lie_to_json
from .pipeline import CHECKS, DEFAULT_SAMPLES, DEFAULT_SEED, verify
from .results import ConstructionError

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def load_instance(selector: str, max_n: int = catalog.DEFAULT_MAX_N) -> sts.TripleSystem:
    """A catalog key, or a path to a JSON triple system."""
    if catalog.is_catalog_key(selector):
        try:
            return catalog.from_key(selector, max_n=max_n)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    path = Path(selector)
    if path.suffix == ".json" or path.exists():
        if not path.is_file():
            raise UsageError(f"no such file: {selector}")
        try:
            return sts.load(path)
        except (ValueError, OSError, UnicodeDecodeError) as exc:
            raise UsageError(f"{selector}: {exc}") from None
    raise UsageError(f"unknown catalog key {selector!r} (see `list`)")


def cmd_list(args) -> int:
    rows = [("key", "dim T", "dim g(T)", "dim m", "pair", "")]
    for e in catalog.ENTRIES + catalog.EXCEPTIONAL:
        rows.append((e.key, e.dim_t, e.dim_g, e.dim_m, e.pair, e.note))
    widths = [max(len(r[i]) for r in rows) for i in range(5)]
    for r in rows:
        line = "  ".join(c.ljust(w) for c, w in zip(r, widths))
        print((line + "  " + r[5]).rstrip())
    return EXIT_OK


def _selected_checks(args) -> list[str]:
    picked = [c for c in CHECKS if getattr(args, c.replace("-", "_"))]
    if args.checks:
        picked += [c.strip() for c in args.checks.split(",") if c.strip()]
    if args.all or not picked:
        return list(CHECKS)
    unknown = [c for c in picked if c not in CHECKS]
    if unknown:
        raise UsageError(f"unknown check(s): {', '.join(unknown)}; choose from {', '.join(CHECKS)}")
    return picked


def cmd_verify(args) -> int:
    if args.samples < 0:
        raise UsageError("--samples must be non-negative")
    checks = _selected_checks(args)
    ts = load_instance(args.instance, args.max_n)
    report = verify(ts, checks, samples=args.samples, seed=args.seed,
                    instance=ts.name or args.instance)
    sys.stdout.write(report.dumps() if args.format == "json" else report.table())
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_dump(args) -> int:
    ts = load_instance(args.instance, args.max_n)
    if args.what == "sts":
        payload = sts.to_json(ts, sparse=args.sparse)
    elif args.what == "report":
        report = verify(ts, samples=args.samples, seed=args.seed, instance=ts.name or args.instance)
        sys.stdout.write(report.dumps())
        return EXIT_OK if report.ok else EXIT_FAIL
    else:
        if not sts.is_simple(ts):
            print("error: the enveloping algebra needs a simple triple system", file=sys.stderr)
            return EXIT_FAIL
        E = build_enveloping(ts)
        if args.what == "lie":
            payload = lie_to_json(E.algebra, E.killing)
        else:
            metric = build_metric(E)
            payload = {"labels": metric.labels, "n": metric.n_param,
                       "signature": metric.signature.as_list(), "G": to_strings(metric.G)}
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sts-einstein",
                     description="Exact verification of the Einstein metric built from a symplectic triple system.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("list", help="catalog of built-in triple systems")

    v = sub.add_parser("verify", help="run the verification pipeline")
    v.add_argument("instance", help="catalog key (e.g. g2, symplectic:2) or JSON file")
    v.add_argument("--all", action="store_true", help="run every check (default)")
    v.add_argument("--checks", help="comma-separated subset of: " + ", ".join(CHECKS))
    for name in CHECKS:
        v.add_argument(f"--{name}", action="store_true", help=f"select the {name} check")
    _common(v)
    v.add_argument("--format", choices=("json", "table"), default="json")

    d = sub.add_parser("dump", help="print a triple system, its Lie algebra, metric or report as JSON")
    d.add_argument("instance")
    d.add_argument("--what", choices=("sts", "lie", "metric", "report"), default="sts")
    d.add_argument("--sparse", action="store_true", help="sparse structure tensor for --what sts")
    _common(d)
    return parser


def _common(p):
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="random X for the trace checks")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--max-n", type=int, default=catalog.DEFAULT_MAX_N, help="cap on n for catalog keys")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return {"list": cmd_list, "verify": cmd_verify, "dump": cmd_dump}[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConstructionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
