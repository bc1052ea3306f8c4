"""Command-line entry point: ``k2t <subcommand> ...``.

Exit status: 0 success, 1 a check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
from typing import Iterable, Optional, Sequence, TextIO

from . import extremal, graph, minor, search, spectral, verify
from .graph import Graph, parse_graph6, write_graph6
from .search import CSV_COLUMNS, fmt

SWEEP_COLUMNS = ("t", "n", "p", "s", "mu_exact", "upper", "gap_upper", "lower", "lower_in_range", "ysh")


class UsageError(Exception):
    pass


def _read_graphs(path: str) -> Iterable[Graph]:
    stream = sys.stdin if path == "-" else open(path, encoding="ascii")
    try:
        for lineno, line in enumerate(stream, 1):
            if line.strip():
                try:
                    yield parse_graph6(line)
                except graph.Graph6Error as exc:
                    raise UsageError(f"line {lineno}: {exc}") from None
    finally:
        if stream is not sys.stdin:
            stream.close()


def _start_graph(kind: str, t: int, n: int, seed: int) -> Graph:
    if kind == "ft":
        return extremal.build_F(t, n)
    if kind == "star":
        return graph.star(n)
    if kind == "fan":
        return graph.join(graph.complete(1), graph.path(n - 1))
    if kind == "path":
        return graph.path(n)
    if kind == "tree":
        rng = random.Random(seed)
        return Graph.from_edges(n, ((v, rng.randrange(v)) for v in range(1, n)))
    raise UsageError(f"unknown start graph {kind!r}")


def _write_records(records: Sequence[search.SearchRecord], fmt_name: str, out: TextIO) -> None:
    if fmt_name == "jsonl":
        for r in records:
            out.write(json.dumps(r.to_json()) + "\n")
        return
    w = csv.writer(out, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow(r.csv_row())


# -- subcommands -----------------------------------------------------------

def cmd_construct(args, out: TextIO) -> int:
    if args.named:
        if args.k is None:
            raise UsageError("--named needs --k")
        g = graph.build_named(args.named, args.k)
    else:
        if args.t is None or args.n is None:
            raise UsageError("construct needs --t and --n (or --named and --k)")
        g = extremal.build_F(args.t, args.n)
    out.write(write_graph6(g) + "\n")
    return 0


def cmd_mu(args, out: TextIO) -> int:
    if args.t is not None and args.n is not None:
        if args.exact:
            mu = spectral.ft_mu_exact(args.t, args.n)
        else:
            mu = spectral.spectral_radius(extremal.build_F(args.t, args.n), args.tol).mu
        out.write(fmt(mu) + "\n")
        return 0
    if args.exact:
        raise UsageError("--exact needs --t and --n")
    w = csv.writer(out, lineterminator="\n")
    w.writerow(("graph6", "mu", "iterations", "residual"))
    for g in _read_graphs(args.input):
        res = spectral.spectral_radius(g, args.tol)
        w.writerow((write_graph6(g), fmt(res.mu), res.iterations, fmt(res.residual)))
    return 0


def cmd_bounds(args, out: TextIO) -> int:
    b = spectral.bounds(args.t, args.n)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(("t", "n", "upper", "lower", "lower_in_range", "ysh"))
    w.writerow((args.t, args.n, fmt(b.upper), fmt(b.lower), str(b.lower_in_range).lower(), "" if b.ysh is None else fmt(b.ysh)))
    return 0


def cmd_minor(args, out: TextIO) -> int:
    if (args.t is None) == (args.pattern is None):
        raise UsageError("minor needs exactly one of --t or --pattern")
    pattern = parse_graph6(args.pattern) if args.pattern else None
    w = csv.writer(out, lineterminator="\n")
    w.writerow(("graph6", "present", "method", "branch_sets"))
    for g in _read_graphs(args.input):
        if pattern is None:
            res = minor.k2t_minor_test(g, args.t, force_witness=args.force_witness)
        else:
            res = minor.has_minor(g, pattern)
        sets = "" if res.branch_sets is None else "|".join(" ".join(map(str, sorted(s))) for s in res.branch_sets)
        w.writerow((write_graph6(g), str(res.present).lower(), res.method, sets))
    return 0


def cmd_search_exhaustive(args, out: TextIO) -> int:
    if args.generate:
        if args.n is None:
            raise UsageError("--generate needs --n")
        source = search.enumerate_graphs(args.n) if args.all_graphs else search.enumerate_connected(args.n)
    else:
        source = _read_graphs(args.input)
        if args.n is not None:
            source = _check_order(source, args.n)
    if args.jobs > 1:
        records = search.exhaustive_max_parallel(source, args.t, args.jobs)
    else:
        records = search.exhaustive_max(source, args.t)
    _write_records(records, args.format, out)
    return 1 if any(r.violated for r in records) else 0


def _check_order(source: Iterable[Graph], n: int) -> Iterable[Graph]:
    for g in source:
        if g.n != n:
            raise UsageError(f"input graph {write_graph6(g)} has order {g.n}, expected {n}")
        yield g


def cmd_search_local(args, out: TextIO) -> int:
    start = _start_graph(args.start, args.t, args.n, args.seed)
    rec = search.local_search(args.t, args.n, start, args.max_steps)
    _write_records([rec], args.format, out)
    return 1 if rec.violated else 0


def cmd_audit(args, out: TextIO) -> int:
    ok = True
    if args.generate is not None:
        source: Iterable[Graph] = search.enumerate_connected(args.generate)
    elif args.n is not None:
        source = [extremal.build_F(args.t, args.n)]
    else:
        source = _read_graphs(args.input)
    for g in source:
        if args.minor_free_only and minor.k2t_minor_test(g, args.t).present:
            continue
        report = verify.audit(g, args.t)
        ok &= report.ok
        out.write((report.to_jsonl() if args.format == "jsonl" else report.table()) + "\n")
    return 0 if ok else 1


def cmd_sweep(args, out: TextIO) -> int:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(SWEEP_COLUMNS)
    for t in range(args.t_min, args.t_max + 1):
        for n in range(max(args.n_min, t + 1), args.n_max + 1):
            prm = extremal.split_params(t, n)
            mu = spectral.ft_mu_exact(t, n)
            b = spectral.bounds(t, n)
            w.writerow((t, n, prm.p, prm.s, fmt(mu), fmt(b.upper), fmt(b.upper - mu), fmt(b.lower),
                        str(b.lower_in_range).lower(), "" if b.ysh is None else fmt(b.ysh)))
    return 0


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="k2t", description="Spectral extremal graphs without K_{2,t} minors.")
    p.add_argument("--output", "-o", default="-", help="output file (default stdout)")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="emit graph6 of F_t(n) or a named graph")
    c.add_argument("--t", type=int)
    c.add_argument("--n", type=int)
    c.add_argument("--named", choices=["complete", "path", "cycle", "star", "empty"])
    c.add_argument("--k", type=int)
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("mu", help="spectral radius of F_t(n) or of graph6 input")
    c.add_argument("--t", type=int)
    c.add_argument("--n", type=int)
    c.add_argument("--exact", action="store_true", help="use the cubic instead of an eigensolve")
    c.add_argument("--tol", type=float, default=spectral.DEFAULT_TOL)
    c.add_argument("--input", default="-")
    c.set_defaults(func=cmd_mu)

    c = sub.add_parser("bounds", help="upper / lower / n-7/4 bounds at (t, n)")
    c.add_argument("--t", type=int, required=True)
    c.add_argument("--n", type=int, required=True)
    c.set_defaults(func=cmd_bounds)

    c = sub.add_parser("minor", help="minor test for each graph6 input line")
    c.add_argument("--t", type=int, help="test for a K_{2,t} minor")
    c.add_argument("--pattern", help="graph6 of an arbitrary pattern (at most 12 vertices)")
    c.add_argument("--force-witness", action="store_true", help="build a model even when density alone decides")
    c.add_argument("--input", default="-")
    c.set_defaults(func=cmd_minor)

    c = sub.add_parser("search", help="exhaustive or local search")
    ss = c.add_subparsers(dest="mode", required=True)
    e = ss.add_parser("exhaustive", help="argmax mu over minor-free graphs of one order")
    e.add_argument("--t", type=int, required=True)
    e.add_argument("--n", type=int)
    e.add_argument("--input", default="-", help="graph6 stream (default stdin)")
    e.add_argument("--generate", action="store_true", help="use the built-in generator (n <= 8)")
    e.add_argument("--all-graphs", action="store_true", help="with --generate, include disconnected graphs")
    e.add_argument("--jobs", type=int, default=1)
    e.add_argument("--format", choices=["csv", "jsonl"], default="csv")
    e.set_defaults(func=cmd_search_exhaustive)
    loc = ss.add_parser("local", help="hill-climb from a start graph")
    loc.add_argument("--t", type=int, required=True)
    loc.add_argument("--n", type=int, required=True)
    loc.add_argument("--start", choices=["ft", "star", "fan", "path", "tree"], default="star")
    loc.add_argument("--seed", type=int, default=0, help="seed for --start tree")
    loc.add_argument("--max-steps", type=int, default=1000)
    loc.add_argument("--format", choices=["csv", "jsonl"], default="jsonl")
    loc.set_defaults(func=cmd_search_local)

    c = sub.add_parser("audit", help="check the inequality suite C1-C7")
    c.add_argument("--t", type=int, required=True)
    c.add_argument("--n", type=int, help="audit F_t(n) instead of reading input")
    c.add_argument("--generate", type=int, metavar="N", help="audit every connected graph on N <= 8 vertices")
    c.add_argument("--minor-free-only", action="store_true", help="skip graphs with a K_{2,t} minor")
    c.add_argument("--input", default="-")
    c.add_argument("--format", choices=["table", "jsonl"], default="table")
    c.set_defaults(func=cmd_audit)

    c = sub.add_parser("sweep", help="CSV grid of cubic values against the bounds")
    c.add_argument("--t-min", type=int, default=2)
    c.add_argument("--t-max", type=int, default=6)
    c.add_argument("--n-min", type=int, default=3)
    c.add_argument("--n-max", type=int, default=200)
    c.set_defaults(func=cmd_sweep)
    return p


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = sys.stdout if args.output == "-" else open(args.output, "w", encoding="ascii")
    try:
        return args.func(args, out)
    except (UsageError, ValueError) as exc:
        print(f"k2t: error: {exc}", file=sys.stderr)
        return 2
    finally:
        if out is not sys.stdout:
            out.close()


def main() -> None:
    sys.exit(run())
