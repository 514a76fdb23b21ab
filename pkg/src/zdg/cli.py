"""Command-line driver: ``zdg ring info``, ``graph export``, ``solve``,
``verify`` and ``catalog list``.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 resource cap exceeded. Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from . import catalog as cat
from . import harness
from .alliance import DEFAULT_ENUMERATION_CAP, KINDS, OFFENSIVE, enumerate_min_alliances, solve_min_alliance
from .descriptor import canonical, parse_descriptor
from .errors import (
    EnumerationTruncated,
    IoFailure,
    OrderCapExceeded,
    ParseError,
    ResourceCap,
    TooLarge,
    UnknownCheck,
    UnsupportedFormat,
    ZdgError,
)
from .graph import build_zdg, export_graph
from .ring import build_ring

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

SYMBOL = {"offensive": "gamma_o", "defensive": "gamma_a"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _descriptor(text: str) -> str:
    # reject before any computation
    return canonical(parse_descriptor(text))


def _fmt_set(labels) -> str:
    return "{" + ", ".join(labels) + "}"


def cmd_ring_info(args, out) -> int:
    ring = build_ring(_descriptor(args.descriptor))
    info = ring.analysis
    rows = [
        ("descriptor", ring.descriptor),
        ("order", ring.order),
        ("characteristic", info.characteristic),
        ("units", len(info.units)),
        ("zero_divisors", len(info.zero_divisors_star) + 1),
        ("nilradical", len(info.nilradical)),
        ("field", info.is_field),
        ("local", info.is_local),
        ("reduced", info.is_reduced),
        ("co_local", info.is_colocal),
    ]
    if info.is_local and not info.is_field:
        rows.append(("maximal_ideal", len(info.maximal_ideal)))
    for key, value in rows:
        out.write(f"{key}: {str(value).lower() if isinstance(value, bool) else value}\n")
    return EXIT_OK


def cmd_graph_export(args, out) -> int:
    graph = build_zdg(build_ring(_descriptor(args.descriptor)))
    data = export_graph(graph, args.format)
    if args.out:
        try:
            Path(args.out).write_bytes(data)
        except OSError as exc:
            raise IoFailure(f"cannot write {args.out}: {exc}") from exc
    else:
        out.write(data.decode("utf-8"))
    return EXIT_OK


def cmd_solve(args, out) -> int:
    graph = build_zdg(build_ring(_descriptor(args.descriptor)))
    symbol = SYMBOL[args.kind]
    if args.enumerate_all:
        result = enumerate_min_alliances(graph, args.kind, args.cap)
    else:
        result = solve_min_alliance(graph, args.kind)
    out.write(f"{symbol} = {result.number}, witness = {_fmt_set(result.witness_labels(graph))}\n")
    if args.enumerate_all:
        for S in result.all_minimum:
            out.write(_fmt_set(graph.labels_of(S)) + "\n")
        if result.enumeration_truncated:
            print(f"enumeration stopped at the cap of {args.cap} alliances", file=sys.stderr)
            return EXIT_CAP
    return EXIT_OK


def cmd_verify(args, out) -> int:
    if not args.all and not args.check:
        print("verify: pass --all or --check ID[,ID...]", file=sys.stderr)
        return EXIT_USAGE
    ids = None
    if args.check:
        ids = [c.strip() for item in args.check for c in item.split(",") if c.strip()]
    cache = None if args.no_cache else cat.ResultCache()
    report = harness.run_all(args.max_order, args.report, check_ids=ids, cache=cache, jobs=args.jobs)
    out.write(f"{'check':<14} {'pass':>5} {'fail':>5} {'skip':>5} {'inconc':>6}  status\n")
    for (cid, npass, nfail, nskip, ninc), o in zip(report.counts(), report.outcomes):
        out.write(f"{cid:<14} {npass:>5} {nfail:>5} {nskip:>5} {ninc:>6}  {o.status}\n")
    for o in report.outcomes:
        if o.error:
            print(f"{o.check_id}: {o.error}", file=sys.stderr)
        for inst in o.counterexamples:
            print(f"{o.check_id}: counterexample {inst.rings} {inst.measured} ({inst.relation})", file=sys.stderr)
    if not report.passed:
        return EXIT_FAIL
    if report.inconclusive:
        return EXIT_CAP
    return EXIT_OK


def cmd_catalog_list(args, out) -> int:
    for e in cat.catalog(args.max_order):
        out.write(f"{e.order}\t{e.descriptor}\t{e.provenance}\t{e.name}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="zdg", description="Alliances in zero-divisor graphs of finite commutative rings.")
    p.add_argument("--version", action="version", version=f"zdg {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ring = sub.add_parser("ring", help="ring queries")
    ring_sub = ring.add_subparsers(dest="action", required=True, parser_class=_Parser)
    info = ring_sub.add_parser("info", help="invariants of a ring")
    info.add_argument("descriptor")
    info.set_defaults(func=cmd_ring_info)

    graph = sub.add_parser("graph", help="zero-divisor graph output")
    graph_sub = graph.add_subparsers(dest="action", required=True, parser_class=_Parser)
    export = graph_sub.add_parser("export", help="write Γ(R) as DOT or JSON")
    export.add_argument("descriptor")
    export.add_argument("--format", choices=("dot", "json"), default="dot")
    export.add_argument("--out", help="output file (default stdout)")
    export.set_defaults(func=cmd_graph_export)

    solve = sub.add_parser("solve", help="minimum global alliance of Γ(R)")
    solve.add_argument("descriptor")
    solve.add_argument("--kind", choices=KINDS, default=OFFENSIVE)
    solve.add_argument("--enumerate-all", action="store_true", help="list every minimum alliance")
    solve.add_argument("--cap", type=int, default=DEFAULT_ENUMERATION_CAP)
    solve.set_defaults(func=cmd_solve)

    verify = sub.add_parser("verify", help="run the theorem checks over the catalog")
    verify.add_argument("--all", action="store_true")
    verify.add_argument("--check", action="append", metavar="ID[,ID...]")
    verify.add_argument("--max-order", type=int, default=100)
    verify.add_argument("--report", default="zdg-report.json")
    verify.add_argument("--jobs", type=int, default=1)
    verify.add_argument("--no-cache", action="store_true")
    verify.set_defaults(func=cmd_verify)

    listing = sub.add_parser("catalog", help="ring catalog")
    cat_sub = listing.add_subparsers(dest="action", required=True, parser_class=_Parser)
    lst = cat_sub.add_parser("list")
    lst.add_argument("--max-order", type=int, default=100)
    lst.set_defaults(func=cmd_catalog_list)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args, sys.stdout)
    except (ParseError, UnknownCheck, UnsupportedFormat, ValueError) as exc:
        # KeyError subclasses repr() their message
        print(f"zdg: {exc.args[0] if exc.args else exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ResourceCap, EnumerationTruncated, OrderCapExceeded, TooLarge) as exc:
        print(f"zdg: resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except IoFailure as exc:
        print(f"zdg: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ZdgError as exc:
        print(f"zdg: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
