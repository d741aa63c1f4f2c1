import itertools
import random

import pytest

from permlab.bounds import (
    BoundReport,
    bpl_lower_bound,
    bt_diameter_bounds,
    cut_paste_bounds,
    cycle_graph,
    eh_family_distance,
    eh_lower_bound,
    eh_witness,
    eriksson_upper_bound,
    extended_three_cycle,
    find_three_bond_pair,
    gollan,
    known_bt_diameter,
    labarre_p,
    sort_reverse_permutation,
    two_move_left,
    two_move_right,
)
from permlab.core import Permutation, block_transpositions
from permlab.errors import UsageError
from permlab.toric import ExtendedPermutation, alpha_power, embed, toric_map


def all_perms(n):
    return [Permutation(p) for p in itertools.permutations(range(1, n + 1))]


def left_apply(move, ext):
    mover = ExtendedPermutation(tuple(v - 1 for v in move.as_permutation(ext.n + 1).values))
    return mover * ext


def test_cycle_graph_structure():
    g = cycle_graph(Permutation((4, 1, 6, 2, 5, 7, 3)))
    assert len(g.cycles) == 2
    assert sorted(g.cycle_lengths) == [3, 5]
    assert len(g.black_edges) == len(g.gray_edges) == 8
    assert sum(g.cycle_lengths) == 8

    ident = cycle_graph(Permutation.identity(6))
    assert ident.cycle_lengths == (1,) * 7
    assert ident.c_odd == 7

    two = cycle_graph(Permutation((2, 1)))
    assert sum(two.cycle_lengths) == 3
    assert two.c_odd == 1  # one 3-cycle through the whole graph... traced below
    assert two.cycle_lengths == (3,)
    dot = g.to_dot()
    assert "color=black" in dot and "color=gray" in dot


def test_cycle_graph_partitions_all_black_edges():
    for n in range(1, 7):
        for pi in all_perms(n):
            g = cycle_graph(pi)
            assert sum(g.cycle_lengths) == n + 1
            assert (n + 1 - g.c_odd) % 2 == 0  # parity invariant behind the halved bound


def test_bpl_lower_bound_sound(tables):
    assert bpl_lower_bound(Permutation.identity(7)) == 0
    pi = Permutation((4, 1, 6, 2, 5, 7, 3))
    assert bpl_lower_bound(pi) == 3 == tables.get(7, "bt").lookup(pi)
    for n in range(2, 8):
        table = tables.get(n, "bt")
        for q in all_perms(n):
            assert bpl_lower_bound(q) <= table.lookup(q), q


def test_labarre_p_three_cycles():
    for n in range(2, 11):
        for bt in block_transpositions(n):
            got = labarre_p(bt.as_permutation(n))
            assert got.values == extended_three_cycle(n, bt.i, bt.k, bt.j).values
    assert labarre_p(Permutation.identity(6)).values == tuple(range(7))


def test_labarre_p_composition_laws():
    rng = random.Random(41)
    for _ in range(250):
        n = rng.randint(2, 7)
        words = list(itertools.permutations(range(1, n + 1)))
        nu, pi = Permutation(rng.choice(words)), Permutation(rng.choice(words))
        em = embed(nu)
        lhs = labarre_p(nu * pi)
        rhs = (em * labarre_p(pi) * em.inverse()) * labarre_p(nu)
        assert lhs.values == rhs.values
        r = rng.randint(0, n)
        s = ((0,) + pi.values)[r]
        conj = alpha_power(n, (n + 1 - s) % (n + 1)) * labarre_p(pi) * alpha_power(n, s)
        assert labarre_p(toric_map(pi, r)).values == conj.values


def test_reverse_sort_construction(tables):
    for n in range(3, 13):
        moves = sort_reverse_permutation(n)
        assert len(moves) == (n + 2) // 2
        cur = Permutation.reverse(n)
        for bt in moves:
            cur = cur * bt.as_permutation(n)
        assert cur.is_identity
    for n in range(3, 8):
        assert tables.get(n, "bt").lookup(Permutation.reverse(n)) == (n + 2) // 2
    with pytest.raises(UsageError):
        sort_reverse_permutation(2)


def test_two_move_right_patterns():
    assert two_move_right(embed(Permutation.identity(5))) is None
    # pattern (ii): ... x ... x-1 x+1 ... gains two bonds
    ext = ExtendedPermutation((0, 3, 1, 2, 4))
    move = two_move_right(ext)
    assert move is not None
    assert ext.apply_right(move).bonds() - ext.bonds() >= 2


def test_two_move_gains_exhaustive():
    for n in range(2, 7):
        for pi in all_perms(n):
            ext = embed(pi)
            before = ext.bonds()
            right = two_move_right(ext)
            if right is not None:
                assert ext.apply_right(right).bonds() - before >= 2
            left = two_move_left(ext)
            if left is not None:
                assert left_apply(left.move, ext).bonds() - before >= 2
                fixes = left_apply(left.move, ext).values[0] == ext.values[0]
                assert left.fixes_zero == (left.move.i >= 1)
                if left.fixes_zero:
                    assert fixes


def test_two_move_gains_on_arbitrary_representatives():
    # circular-class representatives need not lead with 0
    rng = random.Random(7)
    n = 6
    for _ in range(1500):
        vals = list(range(n + 1))
        rng.shuffle(vals)
        ext = ExtendedPermutation(tuple(vals))
        before = ext.bonds()
        right = two_move_right(ext)
        if right is not None:
            assert ext.apply_right(right).bonds() - before >= 2
        left = two_move_left(ext)
        if left is not None:
            assert left_apply(left.move, ext).bonds() - before >= 2


def test_two_move_left_case_formulas():
    # one probe per case branch; frozen moves confirm the formula each case
    # prescribes, and the one cut that reaches past the leading position is
    # flagged as not fixing 0
    probes = {
        (0, 3, 1, 2, 4): ("sigma(1,2,4)", True),    # pair x y x+1, x < y
        (2, 1, 3, 0, 4): ("sigma(1,2,3)", True),    # pair x y x+1, y < x
        (0, 2, 4, 1, 3): ("sigma(1,4,5)", True),    # triple, x < y < z
        (3, 0, 2, 4, 1): ("sigma(0,1,4)", False),   # triple, y < z < x
        (2, 4, 1, 3, 0): ("sigma(2,3,4)", True),    # triple, z < x < y
    }
    for vals, (move_str, fixes) in probes.items():
        ext = ExtendedPermutation(vals)
        got = two_move_left(ext)
        assert got is not None
        assert str(got.move) == move_str and got.fixes_zero == fixes
        assert left_apply(got.move, ext).bonds() >= ext.bonds() + 2


def test_three_bond_witnesses_exhaustive_n5():
    w5 = Permutation.reverse(5)
    with pytest.raises(UsageError):
        find_three_bond_pair(w5)
    for pi in all_perms(5):
        if pi.values == w5.values:
            continue
        wit = find_three_bond_pair(pi)
        assert wit.bonds >= 3
        assert wit.placement in ("right", "middle", "left")
        assert wit.representative.values[0] == 0


def test_three_bond_search_is_deterministic():
    pins = {
        (2, 1, 3, 4, 5): ("right", "sigma(0,1,2)", "sigma(0,1,2)", (0, 2, 1, 3, 4, 5)),
        (3, 1, 4, 5, 2): ("middle", "sigma(0,1,2)", "sigma(0,1,2)", (0, 3, 1, 4, 5, 2)),
        (2, 4, 1, 5, 3): ("left", "sigma(0,1,2)", "sigma(0,3,4)", (0, 2, 4, 1, 5, 3)),
    }
    for word, (placement, sig, tau, rep) in pins.items():
        wit = find_three_bond_pair(Permutation(word))
        assert (wit.placement, str(wit.sigma), str(wit.tau), wit.representative.values) == \
            (placement, sig, tau, rep)


def test_three_bond_witness_products_check_out():
    rng = random.Random(99)
    words = list(itertools.permutations(range(1, 7)))
    w6 = Permutation.reverse(6).values
    for word in rng.sample(words, 50):
        if word == w6:
            continue
        pi = Permutation(word)
        wit = find_three_bond_pair(pi)
        s = embed(wit.sigma.as_permutation(6))
        t = embed(wit.tau.as_permutation(6))
        rep = wit.representative
        product = {"right": rep * s * t, "middle": s * rep * t, "left": s * t * rep}[wit.placement]
        assert product.bonds() == wit.bonds >= 3


def test_eriksson_and_eh_bounds():
    assert eriksson_upper_bound(9) == 5
    assert eriksson_upper_bound(17) == 10
    assert eh_lower_bound(17) == 10
    assert eh_family_distance(17) == 10
    with pytest.raises(UsageError):
        eriksson_upper_bound(8)
    with pytest.raises(UsageError):
        eh_lower_bound(15)
    with pytest.raises(UsageError):
        eh_witness(16)
    assert eh_witness(17).values == (0, 4, 3, 2, 1, 5, 13, 12, 11, 10, 9, 8, 7, 6, 14, 17, 16, 15)
    assert eh_witness(19).values == (0, 4, 3, 2, 1, 5, 15, 14, 13, 12, 11, 10, 9, 8, 7, 6, 16, 19, 18, 17)
    for n in (21, 23, 25, 31):
        assert len(eh_witness(n).values) == n + 1  # valid member of the family at every odd size


def test_diameter_bounds_bracket_tables(tables):
    for n in range(3, 8):
        report = bt_diameter_bounds(n)
        d = tables.get(n, "bt").diameter
        assert report.lower <= d <= report.upper
        assert known_bt_diameter(n) == d
    assert known_bt_diameter(13) == 8
    assert known_bt_diameter(15) == 9
    assert bt_diameter_bounds(17).lower == bt_diameter_bounds(17).upper == 10


def test_cut_paste_bounds_bracket(tables):
    for n in range(4, 8):
        report = cut_paste_bounds(n)
        d = tables.get(n, "cap").diameter
        assert report.lower <= d <= report.upper, (n, report, d)
    r10 = cut_paste_bounds(10)
    assert r10.lower == 5 and r10.upper >= 5
    assert cut_paste_bounds(4).lower == 2
    with pytest.raises(UsageError):
        cut_paste_bounds(3)


@pytest.mark.slow
def test_eriksson_brackets_built_diameters(tables):
    for n in (9, 10):
        d = tables.get(n, "bt").diameter
        assert d <= eriksson_upper_bound(n)
        assert d >= (n + 2) // 2  # attained by the reverse permutation


@pytest.mark.slow
def test_cut_paste_bracket_full_range(tables):
    for n in range(8, 11):
        report = cut_paste_bounds(n)
        assert report.lower <= tables.get(n, "cap").diameter <= report.upper


def test_bound_report_json():
    report = BoundReport(n=10, kind="cap", lower=5, upper=6, exact=5)
    assert report.to_json() == '{"exact": 5, "kind": "cap", "lower": 5, "n": 10, "upper": 6}'


def test_gollan_attains_reversal_diameter(tables):
    assert gollan(2).values == (2, 1)
    assert gollan(3).values == (3, 1, 2)
    for n in range(3, 8):
        table = tables.get(n, "rev")
        g = gollan(n)
        assert table.lookup(g) == n - 1
        assert table.lookup(g.inverse()) == n - 1
        assert g.values != g.inverse().values
        assert table.level_counts[n - 1] == 2
