"""Command-line surface: table builds and distribution exports, distance
queries, graph analyses, and the invariant verification suites.

Exit codes: 0 success, 1 usage, 2 resource budget, 3 falsification, 4 I/O.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .core import Permutation, check_kind
from .distance import (
    DEFAULT_BUDGET,
    DistanceTable,
    cache_path,
    distance,
    export_distribution_csv,
    load_or_build,
    pair_distance,
    sorting_sequence,
)
from .errors import PermLabError, UsageError
from .verify import SUITES, run_suite

_ANALYSES = ("regularity", "cliques", "hamilton", "aut", "partition")


def default_cache_dir(flag_value: str | None) -> Path:
    if flag_value:
        return Path(flag_value)
    env = os.environ.get("PERMLAB_CACHE")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "permlab"


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--kind", default="bt", choices=("bt", "rev", "cap"),
                     help="generator family: block transpositions, reversals, cut-and-paste")
    sub.add_argument("--cache-dir", default=None, help="table cache directory "
                     "(default: $PERMLAB_CACHE or ~/.cache/permlab)")
    sub.add_argument("--workers", type=int, default=1, help="worker count hint; results never depend on it")
    sub.add_argument("--budget-bytes", type=int, default=DEFAULT_BUDGET,
                     help="memory budget for table builds (default 2 GiB)")
    sub.add_argument("--format", default="text", choices=("text", "csv", "json", "dot"),
                     help="stdout format where the command supports several")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="permlab",
                                     description="Rearrangement distances, toric classes, and "
                                                 "block transposition graphs on symmetric groups.")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("distribution", help="build the exact distance table and print its distribution")
    p.add_argument("--n", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_distribution)

    p = subs.add_parser("distance", help="exact distance of a permutation (or between two)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--pi", required=True, help='permutation, e.g. "4 1 6 2 5 7 3"')
    p.add_argument("--nu", default=None, help="optional second permutation for a pair distance")
    p.add_argument("--witness", action="store_true", help="also print a minimum-length sorting sequence")
    _add_common(p)
    p.set_defaults(func=cmd_distance)

    p = subs.add_parser("graph", help="analyze the block transposition graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--analysis", required=True, choices=_ANALYSES)
    _add_common(p)
    p.set_defaults(func=cmd_graph)

    p = subs.add_parser("verify", help="run invariant suites; exit 3 on any falsification")
    p.add_argument("--suite", default="all", choices=SUITES + ("all",))
    p.add_argument("--max-n", type=int, default=6)
    _add_common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def cmd_distribution(args: argparse.Namespace) -> int:
    check_kind(args.kind)
    cache = default_cache_dir(args.cache_dir)
    table = load_or_build(args.n, args.kind, cache_dir=cache,
                          budget_bytes=args.budget_bytes, workers=args.workers)
    csv_text = export_distribution_csv(table)
    artifact = cache / "distributions" / f"{args.kind}-n{args.n:02d}.csv"
    artifact.parent.mkdir(parents=True, exist_ok=True)
    artifact.write_text(csv_text)
    if args.format == "csv":
        sys.stdout.write(csv_text)
    elif args.format == "json":
        print(json.dumps({"n": table.n, "kind": table.kind,
                          "distribution": table.distribution()}))
    else:
        for k, count in table.distribution():
            print(f"{k}: {count}")
    print(f"table cached at {cache_path(cache, args.n, args.kind)}", file=sys.stderr)
    return 0


def _maybe_table(args: argparse.Namespace) -> DistanceTable | None:
    cache = default_cache_dir(args.cache_dir)
    path = cache_path(cache, args.n, args.kind)
    if path.exists():
        return DistanceTable.load(path)
    return None


def cmd_distance(args: argparse.Namespace) -> int:
    pi = Permutation.parse(args.pi)
    if pi.n != args.n:
        raise UsageError(f"--pi has size {pi.n}, --n says {args.n}")
    table = _maybe_table(args)
    if args.nu is not None:
        nu = Permutation.parse(args.nu)
        if nu.n != args.n:
            raise UsageError(f"--nu has size {nu.n}, --n says {args.n}")
        target = nu.inverse() * pi
        d = pair_distance(pi, nu, args.kind, table=table)
    else:
        target = pi
        d = distance(pi, args.kind, table=table)
    print(d)
    if args.witness:
        if table is None:
            table = load_or_build(args.n, args.kind, cache_dir=default_cache_dir(args.cache_dir),
                                  budget_bytes=args.budget_bytes, workers=args.workers)
        moves = sorting_sequence(target, args.kind, table=table)
        print(" ".join(str(m) for m in moves) if moves else "(already sorted)")
    return 0


def cmd_graph(args: argparse.Namespace) -> int:
    from .btgraph import (
        build_bt_graph,
        check_regularity,
        gamma_v,
        graph_automorphisms,
        hamiltonian_cycle_gamma_v,
        maximal_2_cliques,
        partition,
    )

    graph = build_bt_graph(args.n)
    if args.analysis == "regularity":
        degree = check_regularity(graph)
        payload = {"n": args.n, "vertices": graph.vertex_count, "degree": degree}
        text = f"{degree}" if degree is not None else "not regular"
    elif args.analysis == "cliques":
        fam = maximal_2_cliques(graph, args.n)
        payload = {"n": args.n,
                   "edges": [[str(a), str(b)] for a, b in fam.moves]}
        text = f"{len(fam.edges)} maximal 2-clique edges: " + ", ".join(
            "{%s, %s}" % (a, b) for a, b in fam.moves)
    elif args.analysis == "hamilton":
        cycle = hamiltonian_cycle_gamma_v(args.n)
        payload = {"n": args.n, "cycle": [str(bt) for bt in cycle]}
        text = f"Hamiltonian cycle of length {len(cycle)}: " + " -> ".join(str(bt) for bt in cycle)
    elif args.analysis == "aut":
        aut = graph_automorphisms(graph)
        dihedral = aut.order == 2 * (args.n + 1)
        payload = {"n": args.n, "order": aut.order, "dihedral": dihedral,
                   "generators": [list(g) for g in aut.generators]}
        text = f"order {aut.order}" + (", dihedral" if dihedral else "")
    else:
        part = partition(args.n)
        payload = {"n": args.n, "B": list(part.b), "L": list(part.l),
                   "F": list(part.f), "S": list(part.s)}
        text = (f"|B|={len(part.b)} |L|={len(part.l)} |F|={len(part.f)} |S|={len(part.s)}")

    if args.format == "dot":
        classes = None
        if args.analysis == "partition":
            part = partition(args.n)
            classes = {v: name for name, cell in
                       (("B", part.b), ("L", part.l), ("F", part.f), ("S", part.s)) for v in cell}
        target = graph
        if args.analysis == "hamilton":
            target = gamma_v(graph, maximal_2_cliques(graph, args.n))
        sys.stdout.write(target.to_dot(classes))
    elif args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    results = run_suite(args.suite, args.max_n,
                        budget_bytes=args.budget_bytes,
                        cache_dir=default_cache_dir(args.cache_dir),
                        workers=args.workers)
    failed = [r for r in results if not r.ok]
    for r in results:
        mark = "ok  " if r.ok else "FAIL"
        line = f"{mark} {r.suite}/{r.name}"
        if r.detail:
            line += f": {r.detail}"
        print(line)
    print(f"{len(results) - len(failed)}/{len(results)} checks passed (max n = {args.max_n})")
    return 3 if failed else 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except PermLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    raise SystemExit(main())
