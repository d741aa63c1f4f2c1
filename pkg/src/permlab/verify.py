"""Named invariant suites behind the `verify` CLI command.

Each check scans in increasing size and lexicographic order and stops at the
first violation, so a failure always reports a minimal counterexample. A
failed structural claim is a falsification, distinct from bad input.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Iterable

from .core import (
    BlockTransposition,
    GammaMove,
    LambdaMove,
    Permutation,
    Reversal,
    block_transpositions,
    count_bonds,
    count_parity_adjacencies,
    enumerate_generators,
)
from .distance import DEFAULT_BUDGET, load_or_build
from .errors import FalsificationError, UsageError
from .toric import (
    ExtendedPermutation,
    alpha_power,
    embed,
    euler_phi,
    linearize,
    reverse_map,
    shift_block_transposition,
    toric_class,
    toric_map,
)

SUITES = ("algebra", "toric", "bounds", "graph")


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    ok: bool
    detail: str = ""


def _perms(n: int) -> Iterable[Permutation]:
    return (Permutation(p) for p in itertools.permutations(range(1, n + 1)))


def _fail(suite: str, name: str, detail: str) -> CheckResult:
    return CheckResult(suite=suite, name=name, ok=False, detail=detail)


def _ok(suite: str, name: str) -> CheckResult:
    return CheckResult(suite=suite, name=name, ok=True)


# -- algebra ----------------------------------------------------------------


def _check_generator_sets(max_n: int) -> CheckResult:
    for n in range(2, max_n + 1):
        for kind in ("bt", "rev", "cap"):
            gens = enumerate_generators(n, kind)
            words = gens.word_set()
            if kind == "bt" and len(gens) != n * (n + 1) * (n - 1) // 6:
                return _fail("algebra", "generator-count", f"|S_{n}| = {len(gens)}")
            ident = Permutation.identity(n).values
            if ident in words:
                return _fail("algebra", "generator-count", f"identity inside {kind} set at n={n}")
            for move, perm in gens:
                if perm.inverse().values not in words:
                    return _fail("algebra", "generator-count",
                                 f"{move} at n={n} ({kind}): inverse not in set")
    return _ok("algebra", "generator-count")


def _check_powers(max_n: int) -> CheckResult:
    for n in range(2, max_n + 1):
        for bt in block_transpositions(n):
            base = bt.as_permutation(n)
            acc = Permutation.identity(n)
            for m in range(1, 2 * (bt.k - bt.i) + 1):
                acc = acc * base
                power = bt.power(m)
                want = Permutation.identity(n) if power is None else power.as_permutation(n)
                if acc.values != want.values:
                    return _fail("algebra", "powers", f"{bt}^{m} at n={n}")
            inv = bt.inverse().as_permutation(n)
            if (base * inv).values != Permutation.identity(n).values:
                return _fail("algebra", "powers", f"{bt} inverse at n={n}")
    return _ok("algebra", "powers")


def _check_conjugation(max_n: int) -> CheckResult:
    for n in range(3, max_n + 1):
        beta = BlockTransposition(0, 1, n).as_permutation(n)
        binv = beta.inverse()
        for bt in block_transpositions(n):
            if bt.k == n:
                continue
            lhs = beta * bt.as_permutation(n) * binv
            rhs = BlockTransposition(bt.i + 1, bt.j + 1, bt.k + 1).as_permutation(n)
            if lhs.values != rhs.values:
                return _fail("algebra", "beta-conjugation", f"{bt} at n={n}")
    return _ok("algebra", "beta-conjugation")


def _check_factorizations(max_n: int) -> CheckResult:
    for n in range(3, max_n + 1):
        for i, j, k in itertools.combinations(range(n + 1), 3):
            word = BlockTransposition(i, j, k).as_permutation(n)
            for kp in range(j + 1, k):
                split = (BlockTransposition(i, j, kp).as_permutation(n)
                         * BlockTransposition(kp - j + i, kp, k).as_permutation(n))
                if split.values != word.values:
                    return _fail("algebra", "factorizations",
                                 f"sigma({i},{j},{k}) != sigma({i},{j},{kp}) o sigma({kp - j + i},{kp},{k})")
    return _ok("algebra", "factorizations")


def _check_cut_paste_products(max_n: int) -> CheckResult:
    for n in range(3, max_n + 1):
        for i, j, k in itertools.combinations(range(n + 1), 3):
            sig = BlockTransposition(i, j, k).as_permutation(n)
            lam = LambdaMove(i, j, k).as_permutation(n)
            gam = GammaMove(i, j, k).as_permutation(n)
            if lam.values != (sig * Reversal(i, k - j + i).as_permutation(n)).values:
                return _fail("algebra", "cut-paste-products", f"lambda({i},{j},{k}) at n={n}")
            if gam.values != (sig * Reversal(k - j + i, k).as_permutation(n)).values:
                return _fail("algebra", "cut-paste-products", f"gamma({i},{j},{k}) at n={n}")
            if LambdaMove(i, j, k).inverse().as_permutation(n).values != lam.inverse().values:
                return _fail("algebra", "cut-paste-products", f"lambda({i},{j},{k}) inverse at n={n}")
            if GammaMove(i, j, k).inverse().as_permutation(n).values != gam.inverse().values:
                return _fail("algebra", "cut-paste-products", f"gamma({i},{j},{k}) inverse at n={n}")
    return _ok("algebra", "cut-paste-products")


def _check_stat_extremes(max_n: int) -> CheckResult:
    for n in range(1, max_n + 1):
        ident = Permutation.identity(n)
        if count_bonds(ident) != n + 1 or count_parity_adjacencies(ident) != n + 1:
            return _fail("algebra", "identity-statistics", f"n={n}")
        if n >= 2 and count_bonds(Permutation.reverse(n)) != 0:
            return _fail("algebra", "identity-statistics", f"reverse bonds at n={n}")
    return _ok("algebra", "identity-statistics")


# -- toric ------------------------------------------------------------------


def _check_toric_group_laws(max_n: int) -> CheckResult:
    for n in range(2, max_n + 1):
        for pi in _perms(n):
            for r in range(n + 1):
                fr = toric_map(pi, r)
                for s in range(n + 1):
                    if toric_map(fr, s).values != toric_map(pi, (r + s) % (n + 1)).values:
                        return _fail("toric", "group-laws", f"f_{s} f_{r} at {pi}")
                if reverse_map(toric_map(reverse_map(pi), r)).values != toric_map(pi, (n + 1 - r) % (n + 1)).values:
                    return _fail("toric", "group-laws", f"g f_{r} g at {pi}")
                pr = ((0,) + pi.values)[r]
                if fr.inverse().values != toric_map(pi.inverse(), pr).values:
                    return _fail("toric", "group-laws", f"(f_{r} {pi})^-1")
            if reverse_map(reverse_map(pi)).values != pi.values:
                return _fail("toric", "group-laws", f"g g at {pi}")
    return _ok("toric", "group-laws")


def _check_toric_classes(max_n: int) -> CheckResult:
    for n in range(1, max_n + 1):
        singles = 0
        for pi in _perms(n):
            cls = toric_class(pi)
            if (n + 1) % len(cls) != 0:
                return _fail("toric", "class-sizes", f"|class({pi})| = {len(cls)}")
            if len(cls) == 1:
                singles += 1
            if linearize(embed(pi)).values != pi.values:
                return _fail("toric", "class-sizes", f"embed/linearize roundtrip at {pi}")
        if singles != euler_phi(n + 1):
            return _fail("toric", "class-sizes", f"{singles} singleton classes at n={n}")
    return _ok("toric", "class-sizes")


def _check_shifting_lemma(max_n: int) -> CheckResult:
    for n in range(2, max_n + 1):
        for bt in block_transpositions(n):
            lhs0 = embed(bt.as_permutation(n))
            for r in range(n + 1):
                s, bt2 = shift_block_transposition(bt, r, n)
                lhs = lhs0 * alpha_power(n, r)
                rhs = alpha_power(n, s) * embed(bt2.as_permutation(n))
                if lhs.values != rhs.values:
                    return _fail("toric", "shifting-lemma", f"{bt}, r={r}, n={n}")
                if toric_map(bt.as_permutation(n), r).values != bt2.as_permutation(n).values:
                    return _fail("toric", "shifting-lemma", f"case table at {bt}, r={r}, n={n}")
    return _ok("toric", "shifting-lemma")


# -- bounds -----------------------------------------------------------------


def _check_bpl(max_n: int, budget: int, cache_dir, workers: int) -> CheckResult:
    from .bounds import bpl_lower_bound

    for n in range(2, max_n + 1):
        table = load_or_build(n, "bt", cache_dir=cache_dir, budget_bytes=budget, workers=workers)
        for pi in _perms(n):
            if bpl_lower_bound(pi) > table.lookup(pi):
                return _fail("bounds", "cycle-graph-bound", f"bound exceeds distance at {pi}")
    return _ok("bounds", "cycle-graph-bound")


def _check_reverse_sort(max_n: int) -> CheckResult:
    from .bounds import sort_reverse_permutation

    for n in range(3, max(4, max_n + 1)):
        moves = sort_reverse_permutation(n)
        if len(moves) != (n + 2) // 2:
            return _fail("bounds", "reverse-sort", f"{len(moves)} moves at n={n}")
        cur = Permutation.reverse(n)
        for bt in moves:
            cur = cur * bt.as_permutation(n)
        if not cur.is_identity:
            return _fail("bounds", "reverse-sort", f"replay fails at n={n}")
    return _ok("bounds", "reverse-sort")


def _check_labarre(max_n: int) -> CheckResult:
    from .bounds import extended_three_cycle, labarre_p

    for n in range(2, max_n + 1):
        for bt in block_transpositions(n):
            if labarre_p(bt.as_permutation(n)).values != extended_three_cycle(n, bt.i, bt.k, bt.j).values:
                return _fail("bounds", "three-cycle-image", f"{bt} at n={n}")
    return _ok("bounds", "three-cycle-image")


def _check_two_moves(max_n: int) -> CheckResult:
    from .bounds import two_move_left, two_move_right

    for n in range(2, min(max_n, 6) + 1):
        for pi in _perms(n):
            ext = embed(pi)
            right = two_move_right(ext)
            if right is not None and ext.apply_right(right).bonds() - ext.bonds() < 2:
                return _fail("bounds", "two-moves", f"right move at {pi}")
            left = two_move_left(ext)
            if left is not None:
                mover = ExtendedPermutation(
                    tuple(v - 1 for v in left.move.as_permutation(n + 1).values))
                if (mover * ext).bonds() - ext.bonds() < 2:
                    return _fail("bounds", "two-moves", f"left move at {pi}")
    return _ok("bounds", "two-moves")


def _check_three_bonds(max_n: int) -> CheckResult:
    from .bounds import find_three_bond_pair

    if max_n >= 5:
        for pi in _perms(5):
            if pi.values == Permutation.reverse(5).values:
                continue
            find_three_bond_pair(pi)  # raises FalsificationError on exhaustion
    if max_n >= 6:
        rng = random.Random(2024)
        pool = list(itertools.permutations(range(1, 7)))
        for p in rng.sample(pool, 100):
            pi = Permutation(p)
            if pi.values != Permutation.reverse(6).values:
                find_three_bond_pair(pi)
    return _ok("bounds", "three-bond-pairs")


def _check_cut_paste_bounds(max_n: int, budget: int, cache_dir, workers: int) -> CheckResult:
    from .bounds import cut_paste_bounds, gollan

    for n in range(4, max_n + 1):
        table = load_or_build(n, "cap", cache_dir=cache_dir, budget_bytes=budget, workers=workers)
        report = cut_paste_bounds(n)
        if not report.lower <= table.diameter <= report.upper:
            return _fail("bounds", "cut-paste-bracket",
                         f"n={n}: diameter {table.diameter} outside [{report.lower}, {report.upper}]")
    for n in range(2, max_n + 1):
        table = load_or_build(n, "rev", cache_dir=cache_dir, budget_bytes=budget, workers=workers)
        if table.lookup(gollan(n)) != n - 1 or table.lookup(gollan(n).inverse()) != n - 1:
            return _fail("bounds", "cut-paste-bracket", f"gollan distance at n={n}")
    return _ok("bounds", "cut-paste-bracket")


# -- graph ------------------------------------------------------------------


def _check_graph_structure(max_n: int) -> CheckResult:
    from .btgraph import build_bt_graph, check_regularity, maximal_2_cliques, partition

    for n in range(4, max_n + 1):
        graph = build_bt_graph(n)
        degree = check_regularity(graph)
        if degree != 2 * (n - 2):
            return _fail("graph", "regularity", f"degree {degree} at n={n}")
        part = partition(n)
        if not (len(part.b) == n - 1 and len(part.l) == len(part.f) == (n - 1) * (n - 2) // 2
                and len(part.s) == (n - 1) * (n - 2) * (n - 3) // 6):
            return _fail("graph", "regularity", f"partition sizes at n={n}")
        bset, sset = set(part.b), set(part.s)
        for u in part.b:
            if graph.adjacency[u] & sset:
                return _fail("graph", "regularity", f"B-S edge at vertex {u}, n={n}")
            if len(graph.adjacency[u] & bset) != n - 2:
                return _fail("graph", "regularity", f"B not complete at n={n}")
        lf = set(part.l) | set(part.f)
        for u in lf:
            if len(graph.adjacency[u] & bset) != 1:
                return _fail("graph", "regularity", f"L/F vertex {u} degree in B at n={n}")
        for u in part.l:
            if len(graph.adjacency[u] & set(part.f)) != 1:
                return _fail("graph", "regularity", f"L-F matching fails at {u}, n={n}")
        maximal_2_cliques(graph, n)  # falsifies internally on mismatch
    return _ok("graph", "regularity")


def _check_graph_symmetries(max_n: int) -> CheckResult:
    from .btgraph import (
        build_bt_graph,
        gamma_v,
        graph_automorphisms,
        hamiltonian_cycle_gamma_v,
        maximal_2_cliques,
        partition,
        toric_reverse_action,
    )
    from .toric import reverse_map_bt

    for n in range(5, max_n + 1):
        hamiltonian_cycle_gamma_v(n)
        toric_reverse_action(n)
        graph = build_bt_graph(n)
        fam = maximal_2_cliques(graph, n)
        gv = gamma_v(graph, fam)
        if gv.regularity() != 3:
            return _fail("graph", "symmetries", f"gamma_v degree at n={n}")
        part = partition(n)
        bts = block_transpositions(n)
        gimg = {v: bts.index(reverse_map_bt(bts[v], n)) for v in range(len(bts))}
        if {gimg[v] for v in part.l} != set(part.f) or {gimg[v] for v in part.b} != set(part.b):
            return _fail("graph", "symmetries", f"reverse map classes at n={n}")
        if n <= 6:
            aut = graph_automorphisms(graph)
            if aut.order != 2 * (n + 1):
                return _fail("graph", "symmetries", f"Aut order {aut.order} at n={n}")
    return _ok("graph", "symmetries")


def run_suite(suite: str, max_n: int = 6, *, budget_bytes: int = DEFAULT_BUDGET,
              cache_dir=None, workers: int = 1) -> list[CheckResult]:
    """Run one named suite (or 'all'); results in a fixed deterministic order."""
    if suite != "all" and suite not in SUITES:
        raise UsageError(f"unknown suite {suite!r}; expected one of {SUITES + ('all',)}")
    if max_n < 2:
        raise UsageError(f"--max-n must be at least 2, got {max_n}")
    checks: dict[str, list[Callable[[], CheckResult]]] = {
        "algebra": [
            lambda: _check_generator_sets(max_n),
            lambda: _check_powers(max_n),
            lambda: _check_conjugation(max_n),
            lambda: _check_factorizations(max_n),
            lambda: _check_cut_paste_products(max_n),
            lambda: _check_stat_extremes(max_n),
        ],
        "toric": [
            lambda: _check_toric_group_laws(min(max_n, 6)),
            lambda: _check_toric_classes(min(max_n, 7)),
            lambda: _check_shifting_lemma(max_n),
        ],
        "bounds": [
            lambda: _check_bpl(max_n, budget_bytes, cache_dir, workers),
            lambda: _check_reverse_sort(max_n),
            lambda: _check_labarre(max_n),
            lambda: _check_two_moves(max_n),
            lambda: _check_three_bonds(max_n),
            lambda: _check_cut_paste_bounds(max_n, budget_bytes, cache_dir, workers),
        ],
        "graph": [
            lambda: _check_graph_structure(max_n),
            lambda: _check_graph_symmetries(max_n),
        ],
    }
    selected = SUITES if suite == "all" else (suite,)
    out: list[CheckResult] = []
    for name in selected:
        for check in checks[name]:
            try:
                out.append(check())
            except FalsificationError as exc:
                out.append(CheckResult(suite=name, name="falsification", ok=False, detail=str(exc)))
    return out
