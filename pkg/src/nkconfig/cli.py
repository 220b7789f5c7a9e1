"""
Command-line interface.

Every command reads and writes the configuration JSON format; ``-`` (the
default) means stdin/stdout so commands can be piped::

    nkconfig seed --type pappus | nkconfig verify
    nkconfig plan --k 3 --n 20 --execute | nkconfig render -o out.svg

Exit codes: 0 success / verified, 1 verification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import io, seeds
from .bounds import best_table1, hat_table, n_bound, table1, KNOWN_THRESHOLDS
from .configuration import independent_pencils, largest_pencil, pencils, verify
from .constructions import affine_replication, affine_switch, affine_switch_band
from .errors import NkError, NotCoveredByKit, ResourceLimit
from .planner import execute, guaranteed_from, plan
from .render import RenderOptions, render_svg

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _cmd_seed(args) -> int:
    if args.type == "pappus":
        c = seeds.pappus()
    else:
        if args.n is None:
            raise UsageError("--n is required for multilateral seeds")
        c = seeds.multilateral(args.n)
    io.write(c, args.output)
    return EXIT_OK


def _cmd_ar(args) -> int:
    c = io.read(args.input)
    res = affine_replication(c, args.k, seed=args.seed)
    io.write(res.output, args.output)
    return EXIT_OK


def _select_pencils(c, args):
    found = pencils(c, singletons=True)
    horiz = found[args.pencil] if args.pencil is not None else largest_pencil(c)
    vert = None
    if args.t:
        candidates = [p for p in found if p.direction != horiz.direction and len(p) >= args.t
                      and independent_pencils(c, horiz, p)]
        if not candidates:
            raise UsageError("no independent second pencil with enough lines for --t")
        vert = max(candidates, key=len)
    return horiz, vert


def _cmd_switch(args) -> int:
    c = io.read(args.input)
    horiz, vert = _select_pencils(c, args)
    t = args.t or 0
    res = affine_switch(c, horiz, vert, s=args.r - t, t=t, h=args.h, seed=args.seed)
    io.write(res.output, args.output)
    return EXIT_OK


def _cmd_band(args) -> int:
    c = io.read(args.input)
    out_dir = Path(args.output)
    out_dir.mkdir(parents=True, exist_ok=True)
    for res in affine_switch_band(c, largest_pencil(c), seed=args.seed):
        path = out_dir / f"config_{res.output.n}_{res.output.k}.json"
        io.write(res.output, path)
        print(path)
    return EXIT_OK


def _cmd_verify(args) -> int:
    c = io.read(args.input)
    report = verify(c)
    if args.report:
        print(json.dumps(report.to_json(), indent=1))
    else:
        status = "ok" if report.ok else f"FAILED ({len(report.violations)} violations)"
        print(f"({c.n}_{c.k}) {status}")
        for v in report.violations[:20]:
            print(f"  {v.kind} point={v.point_id} line={v.line_id} {v.detail}")
    return EXIT_OK if report.ok else EXIT_FAIL


def _cmd_plan(args) -> int:
    try:
        p = plan(args.k, args.n)
    except NotCoveredByKit as exc:
        print(f"not covered: {exc}", file=sys.stderr)
        print(f"constructive threshold G_{args.k} = {guaranteed_from(args.k)}", file=sys.stderr)
        return EXIT_FAIL
    if not args.execute:
        doc = p.to_json()
        doc["describe"] = p.describe()
        doc["guaranteed_from"] = guaranteed_from(args.k)
        print(json.dumps(doc, indent=1))
        return EXIT_OK
    try:
        c = execute(p, seed=args.seed, enforce_limit=not args.force)
    except ResourceLimit as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_FAIL
    io.write(c, args.output)
    return EXIT_OK


def _cmd_bounds(args) -> int:
    if args.table1 is not None:
        start = args.table1
        table = best_table1(args.max_k) if start == 0 else table1(start, KNOWN_THRESHOLDS[start], args.max_k)
    elif args.hat:
        table = hat_table(args.max_k)
    else:
        k, t, a, d = args.nk
        value = n_bound(k, t, a, d)
        print(f"{value}" if not args.csv else f"k,t,a,d,value\n{k},{t},{a},{d},{value}")
        return EXIT_OK
    sys.stdout.write(table.to_csv() if args.csv else table.to_text())
    return EXIT_OK


def _cmd_render(args) -> int:
    c = io.read(args.input)
    highlight = "pencil" if args.highlight_pencil else ("new" if args.highlight_new else None)
    new_points = frozenset()
    if highlight == "new" and c.meta.get("operation") == "affine_switch":
        r = len(c.meta["params"]["removed"])
        new_points = frozenset(range(c.n - r, c.n))
    opts = RenderOptions(width=args.width, height=args.width, highlight=highlight)
    svg = render_svg(c, opts, new_points=new_points)
    if args.output == "-":
        sys.stdout.write(svg)
    else:
        Path(args.output).write_text(svg)
    return EXIT_OK


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nkconfig", description=__doc__.split("\n\n")[1].strip())
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def io_args(p, inp=True, out=True):
        if inp:
            p.add_argument("-i", "--input", default="-", help="configuration JSON (default stdin)")
        if out:
            p.add_argument("-o", "--output", default="-", help="output path (default stdout)")
        p.add_argument("--seed", type=int, default=0, help="seed of the deterministic retry stream")

    p = sub.add_parser("seed", help="emit a base configuration")
    p.add_argument("--type", choices=["multilateral", "pappus"], required=True)
    p.add_argument("--n", type=int)
    io_args(p, inp=False)
    p.set_defaults(func=_cmd_seed)

    p = sub.add_parser("ar", help="affine replication (m_{k-1}) -> ((k+1)m)_k")
    p.add_argument("--k", type=int, required=True)
    io_args(p)
    p.set_defaults(func=_cmd_ar)

    p = sub.add_parser("switch", help="affine switch (m_k) -> ((k-1)m + r)_k")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--h", type=int, default=None)
    p.add_argument("--t", type=int, default=0, help="lines taken from a second, independent pencil")
    p.add_argument("--pencil", type=int, default=None, help="index into the pencil list (default: largest)")
    io_args(p)
    p.set_defaults(func=_cmd_switch)

    p = sub.add_parser("band", help="all switches of the largest pencil, one file each")
    p.add_argument("-i", "--input", default="-")
    p.add_argument("-o", "--output", required=True, help="output directory")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_band)

    p = sub.add_parser("verify", help="exact (n_k) check; exit 1 on failure")
    p.add_argument("-i", "--input", default="-")
    p.add_argument("--report", action="store_true", help="print the full JSON report")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("plan", help="recipe for an (n_k) from the kit's seeds")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--execute", action="store_true")
    p.add_argument("--force", action="store_true", help="ignore the execution size budget")
    io_args(p, inp=False)
    p.set_defaults(func=_cmd_plan)

    p = sub.add_parser("bounds", help="upper-bound tables for N_k")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--table1", type=int, choices=[0, 2, 3, 4], metavar="START",
                   help="iterate from N_START (2, 3 or 4); 0 = row-wise best")
    g.add_argument("--hat", action="store_true", help="improved bounds over all initial t")
    g.add_argument("--nk", type=int, nargs=4, metavar=("K", "T", "A", "D"))
    p.add_argument("--max-k", type=int, default=10)
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("render", help="draw a configuration as SVG")
    p.add_argument("-i", "--input", default="-")
    p.add_argument("-o", "--output", default="-")
    p.add_argument("--width", type=int, default=800)
    hl = p.add_mutually_exclusive_group()
    hl.add_argument("--highlight-pencil", action="store_true")
    hl.add_argument("--highlight-new", action="store_true")
    p.set_defaults(func=_cmd_render)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NkError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


def main() -> None:
    sys.exit(run())
