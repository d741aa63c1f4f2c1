"""Lower and upper bounds on rearrangement distances, and the move searches
behind them: cycle graphs, the 3-cycle image map, the reverse-permutation
sorting construction, 2-move criteria, and the exhaustive three-bond search.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Literal, Optional

from .core import BlockTransposition, Permutation, block_transpositions
from .errors import FalsificationError, UsageError
from .toric import (
    ExtendedPermutation,
    embed,
    extended_block_transposition,
    toric_map,
)


@dataclass(frozen=True)
class CycleGraph:
    """The bicolored graph on {0,...,n+1} whose alternating cycles control
    the block transposition lower bound.

    Black edges run (pi_i, pi_{i-1}) over the extended word 0 pi (n+1); gray
    edges run (i, i+1). Each cycle is recorded as the tuple of its black
    edges in traversal order; cycles are sorted by their smallest vertex.
    """

    n: int
    black_edges: tuple[tuple[int, int], ...]
    gray_edges: tuple[tuple[int, int], ...]
    cycles: tuple[tuple[tuple[int, int], ...], ...]

    @property
    def cycle_lengths(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.cycles)

    @property
    def c_odd(self) -> int:
        return sum(1 for c in self.cycles if len(c) % 2 == 1)

    def to_dot(self) -> str:
        lines = [f"digraph cycle_graph_{self.n} {{"]
        for u, v in self.black_edges:
            lines.append(f'  {u} -> {v} [color=black];')
        for u, v in self.gray_edges:
            lines.append(f'  {u} -> {v} [color=gray, style=dashed];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def cycle_graph(pi: Permutation) -> CycleGraph:
    n = pi.n
    ext = (0,) + pi.values + (n + 1,)
    pos = [0] * (n + 2)
    for idx, v in enumerate(ext):
        pos[v] = idx
    black = tuple((ext[i], ext[i - 1]) for i in range(1, n + 2))
    gray = tuple((i, i + 1) for i in range(n + 1))
    # Alternate black (pi_i, pi_{i-1}) then gray (pi_{i-1}, pi_{i-1}+1); the
    # next black edge is the one leaving the vertex pi_{i-1}+1, i.e. the edge
    # at the position holding that value.
    seen = [False] * (n + 2)
    cycles = []
    for start in range(1, n + 2):
        if seen[start]:
            continue
        edges = []
        i = start
        while not seen[i]:
            seen[i] = True
            edges.append((ext[i], ext[i - 1]))
            i = pos[ext[i - 1] + 1]
        cycles.append(tuple(edges))
    cycles.sort(key=lambda c: min(min(e) for e in c))
    return CycleGraph(n=n, black_edges=black, gray_edges=gray, cycles=tuple(cycles))


def bpl_lower_bound(pi: Permutation) -> int:
    """(n + 1 - c_odd) / 2, never exceeding the exact distance."""
    g = cycle_graph(pi)
    return (pi.n + 1 - g.c_odd) // 2


def labarre_p(pi: Permutation) -> ExtendedPermutation:
    """The product of the full backward cycle (0, pi_n, ..., pi_1) with the
    rotation alpha; sends every block transposition sigma(i,j,k) to the
    3-cycle (i,k,j) and the identity to the identity."""
    n = pi.n
    cyc = (0,) + tuple(reversed(pi.values))
    phi = [0] * (n + 1)
    for idx, v in enumerate(cyc):
        phi[v] = cyc[(idx + 1) % (n + 1)]
    return ExtendedPermutation(tuple(phi[(x + 1) % (n + 1)] for x in range(n + 1)))


def extended_three_cycle(n: int, a: int, b: int, c: int) -> ExtendedPermutation:
    """The cycle (a,b,c) on {0,...,n}: a -> b -> c -> a."""
    word = list(range(n + 1))
    word[a], word[b], word[c] = b, c, a
    return ExtendedPermutation(tuple(word))


def _cut_block(p: int, q: int, s: int) -> BlockTransposition:
    """Move the 1-based positions p..q so the block lands right after
    position s (s outside [p-1, q])."""
    if s < p - 1:
        return BlockTransposition(s, p - 1, q)
    if s > q:
        return BlockTransposition(p - 1, q, s)
    raise UsageError(f"cannot paste block [{p},{q}] after position {s}")


def sort_reverse_permutation(n: int) -> list[BlockTransposition]:
    """The explicit floor((n+2)/2)-move sort of the reverse permutation.

    Odd n, with r = (n+1)/2: bring the pair r, r-1 to the front; for each
    k = 2..r-1 tuck the pair r+k-1, r-k between r+k-2 and r-k+1; finally
    slide the run r..n-1 in front of n. Even n runs the odd procedure one
    size down (shifted one slot right), then cuts n from the front to the
    back. Moves replay right-to-left: w o m_1 o ... o m_k = identity.
    """
    if n < 3:
        raise UsageError(f"the construction needs n >= 3, got {n}")
    cur = Permutation.reverse(n)
    moves: list[BlockTransposition] = []

    def do(p: int, q: int, s: int) -> None:
        nonlocal cur
        bt = _cut_block(p, q, s)
        moves.append(bt)
        cur = cur * bt.as_permutation(n)

    def pos(v: int) -> int:
        return cur.values.index(v) + 1

    def sort_odd(m: int, offset: int) -> None:
        r = (m + 1) // 2
        do(pos(r), pos(r) + 1, offset)
        for k in range(2, r):
            do(pos(r + k - 1), pos(r + k - 1) + 1, pos(r + k - 2))
        if r >= 2:
            p = pos(r)
            do(p, p + (m - 1 - r), pos(r - 1))

    if n % 2 == 1:
        sort_odd(n, offset=0)
    else:
        sort_odd(n - 1, offset=1)
        do(1, 1, n)
    if not cur.is_identity:
        raise FalsificationError(f"reverse sort construction left {cur}")
    return moves


def _ext_move_fixes_zero(move: BlockTransposition) -> bool:
    # The move fixes the value 0 under left application iff it fixes position 1.
    return move.i >= 1


def _bond_gain_right(ext: ExtendedPermutation, move: BlockTransposition) -> int:
    return ext.apply_right(move).bonds() - ext.bonds()


def _bond_gain_left(ext: ExtendedPermutation, move: BlockTransposition, n: int) -> int:
    mover = ExtendedPermutation(tuple(v - 1 for v in move.as_permutation(n + 1).values))
    return (mover * ext).bonds() - ext.bonds()


def two_move_right(ext: ExtendedPermutation) -> Optional[BlockTransposition]:
    """A block transposition of the extended word whose right application
    adds at least two bonds, or None.

    Patterns searched, in scan order over the position of x:
    (i)  ... x ... y x+1 ... y+1 ...   cut x | ... y | x+1 ... | y+1
    (ii) ... x ... x-1 x+1 ...         cut | x | ... x-1 | x+1
    y+1 may be the cap n+1 (cut at the right edge). Returned cut points
    address the extended word's n+1 positions.
    """
    vals = ext.values
    n = ext.n
    pos = {v: idx for idx, v in enumerate(vals)}
    for a in range(n + 1):
        x = vals[a]
        if x + 1 <= n:
            b = pos[x + 1]
            if b >= a + 2:
                y = vals[b - 1]
                c = n + 1 if y == n else pos[y + 1]
                if c > b:
                    move = BlockTransposition(a + 1, b, c)
                    if _bond_gain_right(ext, move) >= 2:
                        return move
        if 1 <= x <= n - 1:
            d = pos.get(x - 1, -1)
            if d > a and d + 1 <= n and vals[d + 1] == x + 1:
                move = BlockTransposition(a, a + 1, d + 1)
                if _bond_gain_right(ext, move) >= 2:
                    return move
    return None


@dataclass(frozen=True)
class LeftTwoMove:
    move: BlockTransposition
    fixes_zero: bool


def two_move_left(ext: ExtendedPermutation) -> Optional[LeftTwoMove]:
    """A block transposition whose left application adds at least two bonds.

    Triggers on an adjacent pair x y with x+1 right after y (cases IV/V) or
    on a positively oriented triple x y ... z x+1 (cases I-III); the returned
    cut points follow the case formulas, shifted onto the extended word's
    positions. Reports whether the move fixes the value 0, since callers
    chaining moves through the leading 0 need to filter on that.
    """
    vals = ext.values
    n = ext.n
    for a in range(n):
        x, y = vals[a], vals[a + 1]
        if a + 2 <= n and vals[a + 2] == x + 1:
            cuts = (x, x + 1, y) if x < y else (y - 1, x - 1, x)
            candidate = _validated_left(ext, cuts, n)
            if candidate is not None:
                return candidate
        for c in range(a + 2, n):
            z = vals[c]
            if vals[c + 1] != x + 1:
                continue
            if x < y < z:
                cuts = (x, x + z - y + 1, z)
            elif y < z < x:
                cuts = (y - 1, y - 1 + x - z, x)
            elif z < x < y:
                cuts = (z, z + y - 1 - x, y - 1)
            else:
                continue
            candidate = _validated_left(ext, cuts, n)
            if candidate is not None:
                return candidate
    return None


def _validated_left(ext: ExtendedPermutation, cuts: tuple[int, int, int], n: int) -> Optional[LeftTwoMove]:
    a, b, c = cuts
    if not (-1 <= a < b < c <= n):
        return None
    move = extended_block_transposition(a, b, c)
    if _bond_gain_left(ext, move, n) < 2:
        return None
    return LeftTwoMove(move=move, fixes_zero=_ext_move_fixes_zero(move))


Placement = Literal["right", "middle", "left"]


@dataclass(frozen=True)
class ThreeBondWitness:
    placement: Placement
    sigma: BlockTransposition
    tau: BlockTransposition
    representative: ExtendedPermutation
    bonds: int


def find_three_bond_pair(pi: Permutation) -> ThreeBondWitness:
    """Brute-force a pair of embedded block transpositions giving a product
    with at least three bonds, over the zero-leading toric representatives.

    Search order is fixed: representatives by rotation index, then (sigma,
    tau) lexicographic, then the three placements rep o s o t, s o rep o t,
    s o t o rep. The reverse permutation is excluded by hypothesis; an
    exhausted search raises FalsificationError since it would contradict
    the structural claim this implements.
    """
    n = pi.n
    if pi.values == Permutation.reverse(n).values:
        raise UsageError("the reverse permutation admits no three-bond pair; excluded by hypothesis")
    bts = block_transpositions(n)
    ext_words = [tuple(embed(bt.as_permutation(n)).values) for bt in bts]
    cap = n + 1
    idx = range(n + 1)

    def bonds_of(word: tuple[int, ...]) -> int:
        count = 1 if word[-1] + 1 == cap else 0
        return count + sum(1 for t in range(n) if word[t + 1] == word[t] + 1)

    def comp(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(a[b[t]] for t in idx)

    for r in range(n + 1):
        rep = tuple(embed(toric_map(pi, r)).values)
        tau_rep = [comp(t, rep) for t in ext_words]
        for si, s in enumerate(ext_words):
            rep_s = comp(rep, s)
            s_rep = comp(s, rep)
            for ti, t in enumerate(ext_words):
                for placement, word in (("right", comp(rep_s, t)),
                                        ("middle", comp(s_rep, t)),
                                        ("left", comp(s, tau_rep[ti]))):
                    b = bonds_of(word)
                    if b >= 3:
                        return ThreeBondWitness(
                            placement=placement, sigma=bts[si], tau=bts[ti],  # type: ignore[arg-type]
                            representative=ExtendedPermutation(rep), bonds=b)
    raise FalsificationError(f"no three-bond pair exists for {pi}; this contradicts the two-move analysis")


def eriksson_upper_bound(n: int) -> int:
    """floor((2n-2)/3), valid from n = 9 on."""
    if n < 9:
        raise UsageError(f"the upper bound needs n >= 9, got {n}")
    return (2 * n - 2) // 3


def eh_lower_bound(n: int) -> int:
    """ceil((n+2)/2), valid past n = 15."""
    if n <= 15:
        raise UsageError(f"the lower bound needs n > 15, got {n}")
    return (n + 3) // 2


def eh_witness(n: int) -> ExtendedPermutation:
    """The explicit zero-leading permutation attaining distance (n+3)/2 for
    odd n > 15: a 4 3 2 1 5 head, a descending run, then reversed 4-blocks."""
    if n <= 15 or n % 2 == 0:
        raise UsageError(f"witnesses exist for odd n > 15, got {n}")
    m = 13 if n % 4 == 1 else 15
    word = [0, 4, 3, 2, 1, 5] + list(range(m, 5, -1))
    for i in range((n - m) // 2 // 2):
        base = m + 4 * i
        word += [base + 1, base + 4, base + 3, base + 2]
    return ExtendedPermutation(tuple(word))


def eh_family_distance(n: int) -> int:
    if n <= 15 or n % 2 == 0:
        raise UsageError(f"the family covers odd n > 15, got {n}")
    return (n + 3) // 2


_BT_DIAMETERS = (0, 1, 2, 3, 3, 4, 4, 5, 5, 6, 6, 7, 8, 8, 9)  # n = 1..15


def known_bt_diameter(n: int) -> int:
    """Exact block transposition diameter where known (n <= 15)."""
    if not 1 <= n <= 15:
        raise UsageError(f"exact diameters cover 1 <= n <= 15, got {n}")
    return _BT_DIAMETERS[n - 1]


def _cut_paste_upper_via_bt(n: int) -> int:
    # Cut-and-paste distance never exceeds block transposition distance.
    if 3 <= n <= 12 or n == 14:
        return (n + 2) // 2
    if n == 13 or n >= 15:
        return (2 * n - 2) // 3
    raise UsageError(f"needs n >= 3, got {n}")


@dataclass(frozen=True)
class BoundReport:
    n: int
    kind: str
    lower: int
    upper: int
    exact: Optional[int] = None
    witness: tuple[str, ...] = field(default=())

    def to_json(self) -> str:
        payload: dict = {"n": self.n, "kind": self.kind, "lower": self.lower, "upper": self.upper}
        if self.exact is not None:
            payload["exact"] = self.exact
        if self.witness:
            payload["witness"] = list(self.witness)
        return json.dumps(payload, sort_keys=True)


def cut_paste_bounds(n: int) -> BoundReport:
    """Bracket the cut-and-paste diameter: bond and parity counting from
    below, monotone-substring insertion and the block transposition
    diameter from above."""
    if n < 4:
        raise UsageError(f"the parity bound needs n >= 4, got {n}")
    lower = max(-(-(n + 1) // 3), n // 2)
    sqrt_ceil = math.isqrt(n - 1) + 1
    upper = min(n - sqrt_ceil + 1, _cut_paste_upper_via_bt(n))
    return BoundReport(n=n, kind="cap", lower=lower, upper=upper)


def bt_diameter_bounds(n: int) -> BoundReport:
    """Bracket the block transposition diameter from the closed forms alone."""
    if n < 3:
        raise UsageError(f"needs n >= 3, got {n}")
    lower = known_bt_diameter(n) if n <= 15 else (n + 3) // 2
    upper = known_bt_diameter(n) if n <= 15 else eriksson_upper_bound(n)
    return BoundReport(n=n, kind="bt", lower=lower, upper=upper)


def gollan(n: int) -> Permutation:
    """The permutation attaining reversal distance n-1 (with its inverse)."""
    if n < 1:
        raise UsageError(f"needs n >= 1, got {n}")
    if n == 1:
        return Permutation.identity(1)
    odds = list(range(1, n + 1, 2))
    if n % 2 == 0:
        cyc = odds + list(range(n, 1, -2))
    else:
        cyc = odds + list(range(n - 1, 1, -2))
    from .core import permutation_from_cycle

    return permutation_from_cycle(n, cyc)
