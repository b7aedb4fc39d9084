"""Command-line front end.

Machine-readable output goes to stdout, progress and diagnostics to stderr.
Exit codes: 0 success, 1 usage, 2 invalid input, 3 incomplete
(checkpointed) enumeration, 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .enumeration import (
    BudgetExceeded,
    EnumerationFilter,
    IncompleteCatalog,
    classify,
    conjecture_probe,
    enumerate_catalog,
    finiteness_check,
    free_energy_counts,
    read_catalog,
    write_catalog,
)
from .graph import COLOR_FIXED, COLOR_FREE, ColoredGraph, GraphError, connected_components
from .halfint import HalfInteger
from .moves import dipole_to_dict, find_dipoles, reduce, reduce_moves
from .tensor import BudgetExceeded as PairingBudgetExceeded
from .tensor import TraceInvariant, expansion_histogram, quartic_invariant
from .topology import IntegralityViolation, gurau_degree, gurau_degree_recursive, invariant_report
from .triangulation import Gluing, Pseudocomplex, cone_boundary, from_triangulation

log = logging.getLogger("gemtopo")

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_INCOMPLETE, EXIT_INTERNAL = 0, 1, 2, 3, 4


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load_json_objects(path: str) -> list[dict]:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(str(exc)) from exc
    text = text.strip()
    if not text:
        return []
    try:
        return [json.loads(text)]
    except json.JSONDecodeError:
        pass
    try:
        return [json.loads(line) for line in text.splitlines() if line.strip()]
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: not JSON or JSON lines ({exc})") from exc


def read_graphs(path: str) -> list[ColoredGraph]:
    graphs = []
    for obj in _load_json_objects(path):
        try:
            graphs.append(ColoredGraph.from_dict(obj))
        except (KeyError, TypeError) as exc:
            raise InputError(f"{path}: malformed graph object ({exc})") from exc
    return graphs


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


# -- subcommands --------------------------------------------------------------

def cmd_inspect(args) -> int:
    for g in read_graphs(args.file):
        _emit(invariant_report(g))
    return EXIT_OK


def cmd_degree(args) -> int:
    for g in read_graphs(args.file):
        direct = gurau_degree(g)
        recursive = gurau_degree_recursive(g)
        if direct != recursive:
            raise IntegralityViolation(f"direct G-degree {direct} != recursive {recursive}")
        if args.format == "json":
            _emit({"order": g.order, "d": g.d, "direct": str(direct), "recursive": str(recursive)})
        else:
            print(direct)
    return EXIT_OK


def cmd_dipoles(args) -> int:
    for g in read_graphs(args.file):
        for dip in find_dipoles(g, r=args.r):
            _emit(dipole_to_dict(dip))
    return EXIT_OK


def cmd_reduce(args) -> int:
    logfh = open(args.log, "w") if args.log else None
    try:
        for g in read_graphs(args.file):
            res = reduce_moves(g)
            cert = res.certificate
            if args.exhaustive:
                cert = reduce(g, exhaustive=True)[1]
            if logfh:
                for mv in res.moves:
                    logfh.write(json.dumps(mv, sort_keys=True) + "\n")
            _emit({"certificate": cert, "moves": len(res.moves), "order": res.graph.order,
                   "gdegree": str(gurau_degree(res.graph)), "graph": res.graph.to_dict()})
    finally:
        if logfh:
            logfh.close()
    return EXIT_OK


def cmd_enumerate(args) -> int:
    if args.max_order < 2 or args.max_order % 2:
        raise InputError("--max-order must be an even number >= 2")
    filt = EnumerationFilter(
        bipartite_only=args.bipartite,
        non_bipartite_only=args.non_bipartite,
        contracted_only=args.contracted,
        no_2_dipoles=args.no_2_dipoles,
        require_singular=args.singular,
        max_gdegree=HalfInteger.parse(args.max_gdegree) if args.max_gdegree else None,
        membership_Gs_only=args.gs_only,
    )
    cat = enumerate_catalog(args.d, args.max_order, filt, args.mode, threads=args.threads,
                            checkpoint=args.resume, time_budget=args.time_budget)
    if not cat.complete:
        log.warning("time budget exhausted; progress saved to %s", args.resume)
        return EXIT_INCOMPLETE
    if args.out and args.out != "-":
        with open(args.out, "w") as fh:
            write_catalog(cat, fh)
    else:
        write_catalog(cat, sys.stdout)
    log.info("%d graphs written", len(cat))
    return EXIT_OK


def _read_catalog(path: str):
    try:
        return read_catalog(path)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def cmd_classify(args) -> int:
    entries = _read_catalog(args.catalog)
    table = classify(entries)
    fmt = args.format or ("json" if args.out and args.out.endswith(".json") else "csv")
    text = table.to_csv() if fmt == "csv" else json.dumps(table.to_json(), sort_keys=True) + "\n"
    if args.out and args.out != "-":
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if table.identity_failures:
        log.error("%d entries break omega = p - 1 + g_boundary", len(table.identity_failures))
        return EXIT_INTERNAL
    log.info("%d entries, identity checked on %d", table.total(), table.identity_checked)
    return EXIT_OK


def cmd_probe(args) -> int:
    entries = _read_catalog(args.catalog)
    if args.finiteness:
        S, R = args.finiteness
        d = entries[0].d if entries else args.d
        max_order = entries[0].provenance.get("max_order") if entries else args.max_order
        _emit(finiteness_check(entries, HalfInteger.parse(S), int(R), d=d, max_order=max_order))
    if args.conjecture:
        for row in conjecture_probe(entries):
            _emit(row)
    return EXIT_OK


def cmd_wick(args) -> int:
    if args.invariant == "q1":
        inv = quartic_invariant(args.d)
    else:
        objs = _load_json_objects(args.invariant)
        if len(objs) != 1:
            raise InputError("expected exactly one trace invariant")
        try:
            inv = TraceInvariant.from_dict(objs[0])
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed trace invariant ({exc})") from exc
        if inv.d != args.d:
            raise InputError(f"invariant has {inv.d} colors but --d {args.d}")
    _emit(expansion_histogram(inv).to_dict())
    return EXIT_OK


def cmd_counts(args) -> int:
    _emit(free_energy_counts(args.d, args.p, bipartite_only=not args.all,
                             mode=args.mode))
    return EXIT_OK


def cmd_from_triangulation(args) -> int:
    objs = _load_json_objects(args.file)
    if len(objs) != 1:
        raise InputError("expected one pseudocomplex object")
    obj = objs[0]
    try:
        simplices = [tuple(s) for s in obj["simplices"]]
        gluings = None
        if obj.get("gluings") is not None:
            gluings = [Gluing(g["i"], g["a"], g["j"], g["b"], tuple(g["perm"]))
                       for g in obj["gluings"]]
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed pseudocomplex ({exc})") from exc
    k = Pseudocomplex(simplices, gluings)
    if args.cap:
        k = cone_boundary(k)
    g = from_triangulation(k)
    for comp in connected_components(g):
        _emit(comp.to_dict())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gemtopo", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true", help="more progress output")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("inspect", help="full invariant report")
    s.add_argument("file")
    s.set_defaults(func=cmd_inspect)

    s = sub.add_parser("degree", help="G-degree by the direct and the recursive formula")
    s.add_argument("file")
    s.add_argument("--format", choices=["text", "json"], default="text")
    s.set_defaults(func=cmd_degree)

    s = sub.add_parser("dipoles", help="list dipoles with properness")
    s.add_argument("file")
    s.add_argument("--r", type=int, default=None)
    s.set_defaults(func=cmd_dipoles)

    s = sub.add_parser("reduce", help="greedy dipole reduction with certificate")
    s.add_argument("file")
    s.add_argument("--log", help="write the moves as JSON lines")
    s.add_argument("--exhaustive", action="store_true",
                   help="search all elimination sequences when greedy fails (order <= 8)")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("enumerate", help="exhaustive catalog of connected graphs")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--max-order", type=int, required=True)
    s.add_argument("--bipartite", action="store_true")
    s.add_argument("--non-bipartite", action="store_true")
    s.add_argument("--contracted", action="store_true")
    s.add_argument("--no-2-dipoles", action="store_true")
    s.add_argument("--singular", action="store_true", help="at least one singular vertex")
    s.add_argument("--gs-only", action="store_true", help="only graphs of singular manifolds")
    s.add_argument("--max-gdegree")
    s.add_argument("--mode", choices=[COLOR_FREE, COLOR_FIXED], default=COLOR_FREE)
    s.add_argument("--out", default="-")
    s.add_argument("--resume", help="checkpoint file (created or resumed)")
    s.add_argument("--time-budget", type=float, help="seconds before checkpointing out")
    s.add_argument("--threads", type=int, default=1)
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("classify", help="bucket a catalog by G-degree and boundary")
    s.add_argument("--catalog", required=True)
    s.add_argument("--out")
    s.add_argument("--format", choices=["csv", "json"])
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("probe", help="finiteness bound and boundary-genus probes on a catalog")
    s.add_argument("--catalog", required=True)
    s.add_argument("--finiteness", nargs=2, metavar=("S", "R"))
    s.add_argument("--conjecture", action="store_true")
    s.add_argument("--d", type=int)
    s.add_argument("--max-order", type=int)
    s.set_defaults(func=cmd_probe)

    s = sub.add_parser("wick", help="G-degree histogram of the Wick pairings of an invariant")
    s.add_argument("--invariant", required=True, help="JSON file, or q1 for the quartic one")
    s.add_argument("--d", type=int, required=True, help="tensor rank")
    s.set_defaults(func=cmd_wick)

    s = sub.add_parser("counts", help="connected graphs of order 2p per G-degree")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--all", action="store_true", help="include non-bipartite graphs")
    s.add_argument("--mode", choices=["canonical", "labeled"], default="canonical")
    s.set_defaults(func=cmd_counts)

    s = sub.add_parser("from-triangulation", help="colored graph of a closed pseudocomplex")
    s.add_argument("file")
    s.add_argument("--cap", action="store_true", help="cone off boundary components first")
    s.set_defaults(func=cmd_from_triangulation)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (IntegralityViolation, AssertionError) as exc:
        log.error("internal invariant violated: %s", exc)
        return EXIT_INTERNAL
    except (InputError, GraphError, ValueError, IncompleteCatalog, BudgetExceeded,
            PairingBudgetExceeded) as exc:
        log.error("%s", exc)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
