"""Extended permutations on {0,...,n}, circular and toric equivalence.

A permutation pi on [n] embeds as the extended word [0 pi] on {0,...,n}.
Cyclic index shifts of the extended word give the circular class; adding
cyclic value shifts gives the toric class. The toric map f_r and the reverse
map g realize those equivalences as concrete bijections of Sym_n:

    f_r(pi)_t = pi_{r+t} - pi_r   (indices and values mod n+1, pi_0 = 0)
    g(pi)_t   = n+1 - pi_{n+1-t}

f generates a cyclic group of order n+1; together with the involution g it
generates a dihedral group of order 2(n+1), the toric-reverse group.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import BlockTransposition, Permutation
from .errors import UsageError


@dataclass(frozen=True)
class ExtendedPermutation:
    """A bijection on {0,...,n}, position-indexed 0..n."""

    values: tuple[int, ...]

    def __post_init__(self) -> None:
        vals = tuple(self.values)
        object.__setattr__(self, "values", vals)
        m = len(vals)
        if m == 0 or sorted(vals) != list(range(m)):
            raise UsageError(f"{vals!r} is not a permutation of 0..{m - 1}")

    @property
    def n(self) -> int:
        return len(self.values) - 1

    @classmethod
    def parse(cls, text: str) -> "ExtendedPermutation":
        try:
            vals = tuple(int(tok) for tok in text.split())
        except ValueError as exc:
            raise UsageError(f"cannot parse extended permutation from {text!r}") from exc
        return cls(vals)

    def __str__(self) -> str:
        return " ".join(str(v) for v in self.values)

    def __mul__(self, other: "ExtendedPermutation") -> "ExtendedPermutation":
        if not isinstance(other, ExtendedPermutation):
            return NotImplemented
        if self.n != other.n:
            raise UsageError(f"size mismatch: {self.n} vs {other.n}")
        sv, ov = self.values, other.values
        return ExtendedPermutation(tuple(sv[ov[t]] for t in range(self.n + 1)))

    def inverse(self) -> "ExtendedPermutation":
        inv = [0] * (self.n + 1)
        for t, v in enumerate(self.values):
            inv[v] = t
        return ExtendedPermutation(tuple(inv))

    def bonds(self) -> int:
        """Adjacent pairs x, x+1 in the word followed by the cap n+1."""
        seq = self.values + (self.n + 1,)
        return sum(1 for a, b in zip(seq, seq[1:]) if b == a + 1)

    def apply_right(self, bt: BlockTransposition) -> "ExtendedPermutation":
        """Swap the position blocks (i,j] and (j,k] of the extended word.

        Cut points address the n+1 positions, so 0 <= i < j < k <= n+1.
        """
        word = bt.as_permutation(self.n + 1).values
        return ExtendedPermutation(tuple(self.values[p - 1] for p in word))

    def to_permutation(self) -> Permutation:
        """View on [n+1] with every value shifted up by one."""
        return Permutation(tuple(v + 1 for v in self.values))


def embed(pi: Permutation) -> ExtendedPermutation:
    """[0 pi]: insert 0 in front of the word."""
    return ExtendedPermutation((0,) + pi.values)


def parse_extended(text: str) -> ExtendedPermutation:
    """Parse an extended word; a missing leading 0 means "embed this"."""
    try:
        vals = tuple(int(tok) for tok in text.split())
    except ValueError as exc:
        raise UsageError(f"cannot parse extended permutation from {text!r}") from exc
    if vals and 0 not in vals:
        return embed(Permutation(vals))
    return ExtendedPermutation(vals)


def linearize(ext: ExtendedPermutation) -> Permutation:
    """Rotate the representative so 0 leads, then drop it.

    >>> str(linearize(ExtendedPermutation((7, 3, 0, 5, 1, 4, 6, 2))))
    '5 1 4 6 2 7 3'
    """
    z = ext.values.index(0)
    rotated = ext.values[z:] + ext.values[:z]
    return Permutation(rotated[1:])


def embed_move(bt: BlockTransposition) -> BlockTransposition:
    """[0 sigma(i,j,k)] as a block transposition of the extended word."""
    return BlockTransposition(bt.i + 1, bt.j + 1, bt.k + 1)


def extended_block_transposition(i: int, j: int, k: int) -> BlockTransposition:
    """The move written sigma-bar(i,j,k), -1 <= i < j < k <= n, as cut points
    on the extended word (shifted up by one so the leading position counts)."""
    if not -1 <= i < j < k:
        raise UsageError(f"extended cut points must satisfy -1 <= i < j < k, got ({i},{j},{k})")
    return BlockTransposition(i + 1, j + 1, k + 1)


def alpha(n: int) -> ExtendedPermutation:
    """The rotation [1 2 ... n 0] generating the circular shifts."""
    return alpha_power(n, 1)


def alpha_power(n: int, r: int) -> ExtendedPermutation:
    return ExtendedPermutation(tuple((t + r) % (n + 1) for t in range(n + 1)))


def toric_map(pi: Permutation, r: int) -> Permutation:
    """f_r(pi): rotate the extended word to start at position r, then shift
    values so the leading entry becomes 0 again."""
    n = pi.n
    if not 0 <= r <= n:
        raise UsageError(f"rotation index {r} outside 0..{n}")
    ext = (0,) + pi.values
    base = ext[r]
    word = tuple((ext[(r + t) % (n + 1)] - base) % (n + 1) for t in range(1, n + 1))
    return Permutation(word)


def toric_class(pi: Permutation) -> tuple[Permutation, ...]:
    """The set {f_r(pi)}, deduplicated and sorted; its size divides n+1."""
    members = {toric_map(pi, r).values for r in range(pi.n + 1)}
    return tuple(Permutation(w) for w in sorted(members))


def toric_representative(pi: Permutation) -> Permutation:
    """Canonical class member: the lexicographically least one."""
    return toric_class(pi)[0]


def are_torically_equivalent(a: Permutation, b: Permutation) -> bool:
    if a.n != b.n:
        raise UsageError(f"size mismatch: {a.n} vs {b.n}")
    return any(toric_map(a, r).values == b.values for r in range(a.n + 1))


def reverse_map(pi: Permutation) -> Permutation:
    """g(pi)_t = n+1 - pi_{n+1-t}; an involution."""
    n = pi.n
    return Permutation(tuple(n + 1 - pi.values[n - t] for t in range(1, n + 1)))


def reverse_map_bt(bt: BlockTransposition, n: int) -> BlockTransposition:
    """g carries sigma(i,j,k) to sigma(n-k, n-j, n-i)."""
    if bt.k > n:
        raise UsageError(f"{bt} does not fit size {n}")
    return BlockTransposition(n - bt.k, n - bt.j, n - bt.i)


def shift_block_transposition(bt: BlockTransposition, r: int, n: int) -> tuple[int, BlockTransposition]:
    """Push a rotation through an embedded block transposition.

    Returns (s, sigma') with [0 sigma] o alpha^r = alpha^s o [0 sigma'],
    where s is the value of [0 sigma] at position r and sigma' = f_r(sigma).
    The cut points of sigma' come from a four-way case split on r.
    """
    i, j, k = bt.i, bt.j, bt.k
    if k > n:
        raise UsageError(f"{bt} does not fit size {n}")
    if not 0 <= r <= n:
        raise UsageError(f"rotation index {r} outside 0..{n}")
    if r <= i:
        cuts = (i - r, j - r, k - r)
    elif r <= k - j + i:
        cuts = (k - j + i - r, n + 1 + 2 * i - j - r, n + 1 + i - r)
    elif r <= k:
        cuts = (k - r, 2 * k - j - r, n + 1 + k - j + i - r)
    else:
        cuts = (n + 1 + i - r, n + 1 + j - r, n + 1 + k - r)
    s = embed(bt.as_permutation(n)).values[r]
    return s, BlockTransposition(*cuts)


def adapted_toric_map(pi: Permutation, r: int = 1) -> Permutation:
    """The toric map conjugated by inversion, the symmetry natural to the
    right-invariant Cayley graph: f-bar_r(pi) = (f_r(pi^-1))^-1."""
    return toric_map(pi.inverse(), r).inverse()


def adapted_toric_map_bt(bt: BlockTransposition, n: int, r: int = 1) -> BlockTransposition:
    """f-bar^r on block transpositions, stepped through cut points:
    sigma(i,j,k) -> sigma(i-1,j-1,k-1) for i > 0, else sigma(j-1,k-1,n)."""
    if bt.k > n:
        raise UsageError(f"{bt} does not fit size {n}")
    cur = bt
    for _ in range(r % (n + 1)):
        if cur.i > 0:
            cur = BlockTransposition(cur.i - 1, cur.j - 1, cur.k - 1)
        else:
            cur = BlockTransposition(cur.j - 1, cur.k - 1, n)
    return cur


@dataclass(frozen=True)
class ToricReverseElement:
    """f_r o g^e, an element of the toric-reverse group D_{n+1}."""

    n: int
    r: int
    reflected: bool

    def __post_init__(self) -> None:
        if not 0 <= self.r <= self.n:
            raise UsageError(f"rotation index {self.r} outside 0..{self.n}")

    def apply(self, pi: Permutation) -> Permutation:
        if pi.n != self.n:
            raise UsageError(f"size mismatch: {pi.n} vs {self.n}")
        if self.reflected:
            pi = reverse_map(pi)
        return toric_map(pi, self.r)

    def compose(self, other: "ToricReverseElement") -> "ToricReverseElement":
        """self o other (other acts first)."""
        if self.n != other.n:
            raise UsageError(f"size mismatch: {self.n} vs {other.n}")
        m = self.n + 1
        if not self.reflected:
            return ToricReverseElement(self.n, (self.r + other.r) % m, other.reflected)
        # g o f_r = f_{-r} o g
        return ToricReverseElement(self.n, (self.r - other.r) % m, not other.reflected)

    def inverse(self) -> "ToricReverseElement":
        if self.reflected:
            return self
        return ToricReverseElement(self.n, (-self.r) % (self.n + 1), False)

    def __str__(self) -> str:
        return f"f^{self.r}" + (" g" if self.reflected else "")


def toric_reverse_group(n: int) -> tuple[ToricReverseElement, ...]:
    """All 2(n+1) elements of D_{n+1}, rotations first."""
    rotations = [ToricReverseElement(n, r, False) for r in range(n + 1)]
    reflections = [ToricReverseElement(n, r, True) for r in range(n + 1)]
    return tuple(rotations + reflections)


def euler_phi(m: int) -> int:
    """Euler's totient; counts the singleton toric classes of Sym_{m-1}."""
    if m < 1:
        raise UsageError(f"phi needs a positive argument, got {m}")
    result, rest, p = m, m, 2
    while p * p <= rest:
        if rest % p == 0:
            while rest % p == 0:
                rest //= p
            result -= result // p
        p += 1
    if rest > 1:
        result -= result // rest
    return result
