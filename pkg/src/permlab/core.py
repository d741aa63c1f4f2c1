"""Permutations on [n] = {1,...,n} and the three rearrangement move families.

Permutations are stored in word form: ``Permutation((4, 1, 3, 2))`` is the map
t -> values[t-1]. All public surfaces speak 1-based values; zero-based arrays
appear only inside the distance machinery.

Moves exist in two forms. The symbolic form (cut points plus kind) is
authoritative and is what gets serialized; ``as_permutation(n)`` materializes
a move as the word it multiplies on the right of a permutation.

>>> str(BlockTransposition(2, 4, 6).as_permutation(8))
'1 2 5 6 3 4 7 8'
>>> str(BlockTransposition(2, 4, 6).inverse())
'sigma(2,4,6)'
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Literal, Sequence, Union

from .errors import UsageError

Kind = Literal["bt", "rev", "cap"]
KINDS: tuple[Kind, ...] = ("bt", "rev", "cap")

KIND_NAMES = {"bt": "block-transpositions", "rev": "reversals", "cap": "cut-and-paste"}


def check_kind(kind: str) -> Kind:
    if kind not in KINDS:
        raise UsageError(f"unknown generator kind {kind!r}; expected one of {KINDS}")
    return kind  # type: ignore[return-value]


@dataclass(frozen=True)
class Permutation:
    """A bijection on {1,...,n} in word form."""

    values: tuple[int, ...]

    def __post_init__(self) -> None:
        vals = tuple(self.values)
        object.__setattr__(self, "values", vals)
        n = len(vals)
        seen = 0
        for v in vals:
            if not 1 <= v <= n:
                raise UsageError(f"value {v} out of range for a permutation of [{n}]")
            bit = 1 << v
            if seen & bit:
                raise UsageError(f"value {v} repeats; not a permutation")
            seen |= bit

    @property
    def n(self) -> int:
        return len(self.values)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def reverse(cls, n: int) -> "Permutation":
        return cls(tuple(range(n, 0, -1)))

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        try:
            vals = tuple(int(tok) for tok in text.split())
        except ValueError as exc:
            raise UsageError(f"cannot parse permutation from {text!r}") from exc
        if not vals:
            raise UsageError("empty permutation string")
        return cls(vals)

    def __str__(self) -> str:
        return " ".join(str(v) for v in self.values)

    def __call__(self, t: int) -> int:
        if not 1 <= t <= self.n:
            raise UsageError(f"argument {t} outside [{self.n}]")
        return self.values[t - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition self o other: (self*other)(t) = self(other(t))."""
        if not isinstance(other, Permutation):
            return NotImplemented
        if self.n != other.n:
            raise UsageError(f"size mismatch: {self.n} vs {other.n}")
        sv, ov = self.values, other.values
        return Permutation(tuple(sv[ov[t] - 1] for t in range(self.n)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for t, v in enumerate(self.values, start=1):
            inv[v - 1] = t
        return Permutation(tuple(inv))

    @property
    def is_identity(self) -> bool:
        return all(v == t for t, v in enumerate(self.values, start=1))

    def zero_based(self) -> tuple[int, ...]:
        return tuple(v - 1 for v in self.values)


@dataclass(frozen=True, order=True)
class BlockTransposition:
    """sigma(i,j,k): swap the adjacent blocks (i,j] and (j,k], order preserved."""

    i: int
    j: int
    k: int

    def __post_init__(self) -> None:
        if not 0 <= self.i < self.j < self.k:
            raise UsageError(f"cut points must satisfy 0 <= i < j < k, got {self}")

    def as_permutation(self, n: int) -> Permutation:
        i, j, k = self.i, self.j, self.k
        if k > n:
            raise UsageError(f"{self} does not fit size {n}")
        word = tuple(range(1, i + 1)) + tuple(range(j + 1, k + 1)) \
            + tuple(range(i + 1, j + 1)) + tuple(range(k + 1, n + 1))
        return Permutation(word)

    def inverse(self) -> "BlockTransposition":
        return BlockTransposition(self.i, self.k - self.j + self.i, self.k)

    def power(self, m: int) -> Union["BlockTransposition", None]:
        """sigma(i,j,k)^m, or None when the power is the identity.

        The blocks cut at i and k form a cyclic group of order k-i, so the
        exponent only matters mod k-i.
        """
        if m < 0:
            return self.inverse().power(-m)
        t = (m * (self.j - self.i)) % (self.k - self.i)
        if t == 0:
            return None
        return BlockTransposition(self.i, self.i + t, self.k)

    def __str__(self) -> str:
        return f"sigma({self.i},{self.j},{self.k})"


@dataclass(frozen=True, order=True)
class Reversal:
    """rho(i,k): reverse the block (i,k]. Every reversal is an involution."""

    i: int
    k: int

    def __post_init__(self) -> None:
        if not 0 <= self.i < self.k:
            raise UsageError(f"cut points must satisfy 0 <= i < k, got {self}")

    def as_permutation(self, n: int) -> Permutation:
        i, k = self.i, self.k
        if k > n:
            raise UsageError(f"{self} does not fit size {n}")
        word = tuple(range(1, i + 1)) + tuple(range(k, i, -1)) + tuple(range(k + 1, n + 1))
        return Permutation(word)

    def inverse(self) -> "Reversal":
        return self

    def __str__(self) -> str:
        return f"rho({self.i},{self.k})"


@dataclass(frozen=True, order=True)
class LambdaMove:
    """lambda(i,j,k): swap blocks (i,j] and (j,k], reversing the second one."""

    i: int
    j: int
    k: int

    def __post_init__(self) -> None:
        if not 0 <= self.i < self.j < self.k:
            raise UsageError(f"cut points must satisfy 0 <= i < j < k, got {self}")

    def as_permutation(self, n: int) -> Permutation:
        i, j, k = self.i, self.j, self.k
        if k > n:
            raise UsageError(f"{self} does not fit size {n}")
        word = tuple(range(1, i + 1)) + tuple(range(k, j, -1)) \
            + tuple(range(i + 1, j + 1)) + tuple(range(k + 1, n + 1))
        return Permutation(word)

    def inverse(self) -> "GammaMove":
        return GammaMove(self.i, self.k - self.j + self.i, self.k)

    def __str__(self) -> str:
        return f"lambda({self.i},{self.j},{self.k})"


@dataclass(frozen=True, order=True)
class GammaMove:
    """gamma(i,j,k): swap blocks (i,j] and (j,k], reversing the first one."""

    i: int
    j: int
    k: int

    def __post_init__(self) -> None:
        if not 0 <= self.i < self.j < self.k:
            raise UsageError(f"cut points must satisfy 0 <= i < j < k, got {self}")

    def as_permutation(self, n: int) -> Permutation:
        i, j, k = self.i, self.j, self.k
        if k > n:
            raise UsageError(f"{self} does not fit size {n}")
        word = tuple(range(1, i + 1)) + tuple(range(j + 1, k + 1)) \
            + tuple(range(j, i, -1)) + tuple(range(k + 1, n + 1))
        return Permutation(word)

    def inverse(self) -> "LambdaMove":
        return LambdaMove(self.i, self.k - self.j + self.i, self.k)

    def __str__(self) -> str:
        return f"gamma({self.i},{self.j},{self.k})"


Move = Union[BlockTransposition, Reversal, LambdaMove, GammaMove]

_MOVE_RE = re.compile(r"^\s*(sigma|rho|lambda|gamma)\(\s*(-?\d+)\s*,\s*(-?\d+)\s*(?:,\s*(-?\d+)\s*)?\)\s*$")


def parse_move(text: str) -> Move:
    """Parse "sigma(i,j,k)", "rho(i,k)", "lambda(i,j,k)", or "gamma(i,j,k)"."""
    m = _MOVE_RE.match(text)
    if m is None:
        raise UsageError(f"cannot parse move from {text!r}")
    name, a, b, c = m.group(1), int(m.group(2)), int(m.group(3)), m.group(4)
    if name == "rho":
        if c is not None:
            raise UsageError("rho takes two cut points")
        return Reversal(a, b)
    if c is None:
        raise UsageError(f"{name} takes three cut points")
    cls = {"sigma": BlockTransposition, "lambda": LambdaMove, "gamma": GammaMove}[name]
    return cls(a, b, int(c))


def apply_block_transposition(pi: Permutation, bt: BlockTransposition) -> Permutation:
    """Right action pi o sigma(i,j,k): swap the blocks of pi at the cut points."""
    return pi * bt.as_permutation(pi.n)


def apply_move(pi: Permutation, move: Move) -> Permutation:
    return pi * move.as_permutation(pi.n)


@dataclass(frozen=True)
class GeneratorSet:
    """An inverse-closed, identity-free rearrangement set in canonical order.

    Moves are kept both symbolically and as materialized permutations;
    ``permutations[t]`` realizes ``moves[t]``.
    """

    n: int
    kind: Kind
    moves: tuple[Move, ...]
    permutations: tuple[Permutation, ...]

    def __len__(self) -> int:
        return len(self.moves)

    def __iter__(self) -> Iterator[tuple[Move, Permutation]]:
        return iter(zip(self.moves, self.permutations))

    def word_set(self) -> frozenset[tuple[int, ...]]:
        return frozenset(p.values for p in self.permutations)


def block_transpositions(n: int) -> list[BlockTransposition]:
    """All sigma(i,j,k) with 0 <= i < j < k <= n, in cut-point order."""
    return [BlockTransposition(i, j, k)
            for i in range(n - 1) for j in range(i + 1, n) for k in range(j + 1, n + 1)]


def reversals(n: int) -> list[Reversal]:
    # k = i+1 reverses a single entry, which is the identity; skipped.
    return [Reversal(i, k) for i in range(n - 1) for k in range(i + 2, n + 1)]


def cut_and_paste_moves(n: int) -> list[Move]:
    """The cut-and-paste set T as distinct permutations, canonical order.

    Lambda and gamma moves whose reversed block has length one collapse to
    sigma or rho forms, and rho(i,i+2) equals sigma(i,i+1,i+2); duplicates
    keep their earliest symbolic form (kinds ordered sigma < lambda < gamma
    < rho, cut points lexicographic within a kind).
    """
    moves: list[Move] = list(block_transpositions(n))
    moves += [LambdaMove(i, j, k)
              for i in range(n - 3) for j in range(i + 2, n - 1) for k in range(j + 2, n + 1)]
    moves += [GammaMove(i, j, k)
              for i in range(n - 3) for j in range(i + 2, n - 1) for k in range(j + 2, n + 1)]
    moves += reversals(n)
    seen: set[tuple[int, ...]] = set()
    out: list[Move] = []
    for mv in moves:
        word = mv.as_permutation(n).values
        if word not in seen:
            seen.add(word)
            out.append(mv)
    return out


def enumerate_generators(n: int, kind: Kind) -> GeneratorSet:
    """Enumerate the full rearrangement set of the given kind on [n]."""
    check_kind(kind)
    if n < 2:
        raise UsageError(f"generator sets need n >= 2, got {n}")
    if kind == "bt":
        moves: list[Move] = list(block_transpositions(n))
    elif kind == "rev":
        moves = list(reversals(n))
    else:
        moves = cut_and_paste_moves(n)
    perms = tuple(mv.as_permutation(n) for mv in moves)
    return GeneratorSet(n=n, kind=kind, moves=tuple(moves), permutations=perms)


def count_bonds(pi: Permutation) -> int:
    """Adjacent pairs x, x+1 (in that order) in the sequence 0 pi_1 ... pi_n n+1.

    >>> count_bonds(Permutation.identity(4))
    5
    >>> count_bonds(Permutation.reverse(4))
    0
    """
    seq = (0,) + pi.values + (pi.n + 1,)
    return sum(1 for a, b in zip(seq, seq[1:]) if b == a + 1)


def count_parity_adjacencies(pi: Permutation) -> int:
    """Adjacent opposite-parity pairs in the sequence 0 pi_1 ... pi_n n+1."""
    seq = (0,) + pi.values + (pi.n + 1,)
    return sum(1 for a, b in zip(seq, seq[1:]) if (a ^ b) & 1)


def cycle_decomposition(pi: Permutation) -> tuple[tuple[int, ...], ...]:
    """Disjoint cycles of the moved points, each rotated to start at its
    smallest element, sorted by smallest element. The identity yields ().

    >>> cycle_decomposition(Permutation((2, 1, 4, 3)))
    ((1, 2), (3, 4))
    """
    seen = [False] * (pi.n + 1)
    cycles: list[tuple[int, ...]] = []
    for start in range(1, pi.n + 1):
        if seen[start] or pi(start) == start:
            continue
        cyc = []
        t = start
        while not seen[t]:
            seen[t] = True
            cyc.append(t)
            t = pi(t)
        cycles.append(tuple(cyc))
    return tuple(cycles)


def permutation_from_cycle(n: int, cycle: Sequence[int]) -> Permutation:
    """The permutation of [n] acting as the given cycle and fixing the rest."""
    word = list(range(1, n + 1))
    for idx, v in enumerate(cycle):
        if not 1 <= v <= n:
            raise UsageError(f"cycle entry {v} outside [{n}]")
        word[v - 1] = cycle[(idx + 1) % len(cycle)]
    return Permutation(tuple(word))
