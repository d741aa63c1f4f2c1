"""Exact rearrangement distances over Sym_n by exhaustive breadth-first search.

States are permutations encoded through the factorial number system: a
Lehmer-code rank/unrank bijection between Sym_n and {0,...,n!-1}. Distances
from the identity live in one byte per state (255 = unvisited), so the full
Sym_11 table under block transpositions needs about 40 MB.

The search is level-synchronous: each round scans either the current
frontier (forward relaxation) or the unvisited states (backward relaxation,
cheaper once most states are settled; valid because generator sets are
inverse closed). All relaxations are vectorized with numpy. The resulting
table is the distance function itself, so it is identical however the work
is chunked.
"""

from __future__ import annotations

import math
import os
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import GeneratorSet, Kind, Move, Permutation, check_kind, enumerate_generators
from .errors import ArtifactIOError, FalsificationError, ResourceError, UsageError

UNVISITED = 255
DEFAULT_BUDGET = 2 * 1024 ** 3

_MAGIC = b"PRLB"
_VERSION = 1
_KIND_CODES: dict[str, int] = {"bt": 0, "rev": 1, "cap": 2}
_CODE_KINDS = {code: kind for kind, code in _KIND_CODES.items()}

_CHUNK = 1 << 19

_CODECS: dict[int, "RankCodec"] = {}


def get_codec(n: int) -> "RankCodec":
    if n not in _CODECS:
        _CODECS[n] = RankCodec(n)
    return _CODECS[n]


class RankCodec:
    """Lexicographic Lehmer-code bijection Sym_n <-> {0,...,n!-1}.

    Words are zero-based tuples; the identity ranks 0.
    """

    def __init__(self, n: int):
        if n < 0:
            raise UsageError(f"size must be nonnegative, got {n}")
        self.n = n
        self.factorials = [math.factorial(i) for i in range(n + 1)]

    @property
    def size(self) -> int:
        return self.factorials[self.n]

    def rank(self, word: tuple[int, ...]) -> int:
        n = self.n
        r = 0
        for i in range(n - 1):
            c = sum(1 for j in range(i + 1, n) if word[j] < word[i])
            r = r * (n - i) + c
        return r

    def unrank(self, r: int) -> tuple[int, ...]:
        n = self.n
        digits = []
        for i in range(n):
            f = self.factorials[n - 1 - i]
            digits.append(r // f)
            r %= f
        for i in range(n - 2, -1, -1):
            for j in range(i + 1, n):
                if digits[j] >= digits[i]:
                    digits[j] += 1
        return tuple(digits)

    def rank_batch(self, words: np.ndarray) -> np.ndarray:
        m, n = words.shape
        r = np.zeros(m, dtype=np.int64)
        for i in range(n - 1):
            c = (words[:, i + 1:] < words[:, i:i + 1]).sum(axis=1, dtype=np.int64)
            r *= n - i
            r += c
        return r

    def unrank_batch(self, ranks: np.ndarray) -> np.ndarray:
        return _unrank_block(self, ranks)


def required_bytes(n: int) -> int:
    """Worst-case working set: one distance byte plus one frontier index
    (8 bytes) per state, plus a fixed chunk workspace."""
    return math.factorial(n) * 9 + (1 << 26)


@dataclass(frozen=True)
class DistanceTable:
    """Distances from the identity for every element of Sym_n."""

    n: int
    kind: Kind
    dist: np.ndarray
    level_counts: tuple[int, ...]
    generator_count: int

    @property
    def diameter(self) -> int:
        return len(self.level_counts) - 1

    def lookup(self, pi: Permutation) -> int:
        if pi.n != self.n:
            raise UsageError(f"size mismatch: table is for n={self.n}, got n={pi.n}")
        return int(self.dist[get_codec(self.n).rank(pi.zero_based())])

    def distribution(self) -> list[tuple[int, int]]:
        return list(enumerate(self.level_counts))

    def checksum(self) -> int:
        import zlib

        return zlib.crc32(self.dist.tobytes())

    def save(self, path: str | Path) -> None:
        path = Path(path)
        header = _MAGIC + bytes([_VERSION, _KIND_CODES[self.kind], self.n]) + b"\x00" * 9
        footer = struct.pack(f"<{len(self.level_counts)}Q", *self.level_counts)
        tmp = path.with_suffix(path.suffix + ".tmp")
        try:
            with open(tmp, "wb") as fh:
                fh.write(header)
                fh.write(self.dist.tobytes())
                fh.write(footer)
            os.replace(tmp, path)
        except OSError as exc:
            raise ArtifactIOError(f"cannot write table cache {path}: {exc}") from exc

    @classmethod
    def load(cls, path: str | Path) -> "DistanceTable":
        path = Path(path)
        try:
            raw = path.read_bytes()
        except OSError as exc:
            raise ArtifactIOError(f"cannot read table cache {path}: {exc}") from exc
        if len(raw) < 16 or raw[:4] != _MAGIC:
            raise ArtifactIOError(f"{path} is not a distance table cache")
        version, kind_code, n = raw[4], raw[5], raw[6]
        if version != _VERSION:
            raise ArtifactIOError(f"{path}: unsupported cache version {version}")
        if kind_code not in _CODE_KINDS:
            raise ArtifactIOError(f"{path}: unknown kind code {kind_code}")
        size = math.factorial(n)
        body_end = 16 + size
        if len(raw) < body_end or (len(raw) - body_end) % 8 != 0:
            raise ArtifactIOError(f"{path}: truncated or misaligned cache")
        counts = struct.unpack(f"<{(len(raw) - body_end) // 8}Q", raw[body_end:])
        if sum(counts) != size:
            raise ArtifactIOError(f"{path}: level counts sum to {sum(counts)}, expected {size}")
        dist = np.frombuffer(raw, dtype=np.uint8, count=size, offset=16).copy()
        kind = _CODE_KINDS[kind_code]
        gens = 0 if n < 2 else len(enumerate_generators(n, kind))  # type: ignore[arg-type]
        return cls(n=n, kind=kind, dist=dist, level_counts=tuple(int(c) for c in counts),  # type: ignore[arg-type]
                   generator_count=gens)


def _generator_index_arrays(gens: GeneratorSet) -> np.ndarray:
    return np.array([p.zero_based() for p in gens.permutations], dtype=np.intp)


def _bfs_fill(dist: np.ndarray, codec: RankCodec, gen_idx: np.ndarray) -> list[int]:
    size = dist.shape[0]
    counts = [1]
    level = 0
    remaining = size - 1
    while remaining > 0:
        if level + 1 >= UNVISITED:
            raise ResourceError("distance exceeds the one-byte encoding")
        frontier = np.flatnonzero(dist == level)
        if frontier.size == 0:
            raise FalsificationError(
                f"{remaining} states unreachable at level {level}; set does not generate Sym_n")
        if remaining < frontier.size:
            candidates = np.flatnonzero(dist == UNVISITED)
            for lo in range(0, candidates.size, _CHUNK):
                chunk = candidates[lo:lo + _CHUNK]
                words = _unrank_block(codec, chunk)
                hit = np.zeros(chunk.size, dtype=bool)
                for g in gen_idx:
                    neighbors = codec.rank_batch(words[:, g])
                    np.logical_or(hit, dist[neighbors] == level, out=hit)
                dist[chunk[hit]] = level + 1
        else:
            for lo in range(0, frontier.size, _CHUNK):
                chunk = frontier[lo:lo + _CHUNK]
                words = _unrank_block(codec, chunk)
                for g in gen_idx:
                    neighbors = codec.rank_batch(words[:, g])
                    fresh = dist[neighbors] == UNVISITED
                    if fresh.any():
                        dist[neighbors[fresh]] = level + 1
        found = int(np.count_nonzero(dist == level + 1))
        counts.append(found)
        remaining -= found
        level += 1
    return counts


def _unrank_block(codec: RankCodec, ranks: np.ndarray) -> np.ndarray:
    n = codec.n
    rem = ranks.astype(np.int64, copy=True)
    digits = np.empty((rem.shape[0], n), dtype=np.uint8)
    for i in range(n):
        f = codec.factorials[n - 1 - i]
        digits[:, i] = rem // f
        rem %= f
    for i in range(n - 2, -1, -1):
        tail = digits[:, i + 1:]
        tail += tail >= digits[:, i:i + 1]
    return digits


def build_distance_table(n: int, kind: Kind, *, budget_bytes: int = DEFAULT_BUDGET,
                         workers: int = 1) -> DistanceTable:
    """Exact BFS distance table from the identity under right multiplication.

    The result is deterministic and independent of chunking or worker count.
    Raises ResourceError naming the required bytes when n! does not fit the
    budget.
    """
    check_kind(kind)
    if n < 0:
        raise UsageError(f"size must be nonnegative, got {n}")
    if workers < 1:
        raise UsageError(f"worker count must be >= 1, got {workers}")
    need = required_bytes(n)
    if need > budget_bytes:
        raise ResourceError(
            f"n={n} needs {need} bytes ({need / 2**20:.0f} MiB) but the budget is {budget_bytes}")
    if n < 2:
        # Degenerate sizes have an empty rearrangement set and only the identity.
        dist = np.zeros(math.factorial(n), dtype=np.uint8)
        return DistanceTable(n=n, kind=kind, dist=dist, level_counts=(1,), generator_count=0)
    gens = enumerate_generators(n, kind)
    codec = RankCodec(n)
    dist = np.full(codec.size, UNVISITED, dtype=np.uint8)
    dist[0] = 0
    counts = _bfs_fill(dist, codec, _generator_index_arrays(gens))
    return DistanceTable(n=n, kind=kind, dist=dist, level_counts=tuple(counts),
                         generator_count=len(gens))


def cache_path(cache_dir: str | Path, n: int, kind: Kind) -> Path:
    return Path(cache_dir) / f"{kind}-n{n:02d}-v{_VERSION}.prlb"


def load_or_build(n: int, kind: Kind, *, cache_dir: str | Path | None = None,
                  budget_bytes: int = DEFAULT_BUDGET, workers: int = 1) -> DistanceTable:
    """Fetch a cached table when present, otherwise build and cache it."""
    if cache_dir is None:
        return build_distance_table(n, kind, budget_bytes=budget_bytes, workers=workers)
    path = cache_path(cache_dir, n, kind)
    if path.exists():
        table = DistanceTable.load(path)
        if table.n != n or table.kind != kind:
            raise ArtifactIOError(f"{path} holds n={table.n} kind={table.kind}, expected n={n} {kind}")
        return table
    table = build_distance_table(n, kind, budget_bytes=budget_bytes, workers=workers)
    Path(cache_dir).mkdir(parents=True, exist_ok=True)
    table.save(path)
    return table


def distribution(table: DistanceTable) -> list[tuple[int, int]]:
    """Counts of permutations per distance; the top k is the diameter."""
    return table.distribution()


def diameter(n: int, kind: Kind, *, table: DistanceTable | None = None,
             cache_dir: str | Path | None = None, budget_bytes: int = DEFAULT_BUDGET) -> int:
    if table is not None:
        if table.n != n or table.kind != kind:
            raise UsageError("supplied table does not match n and kind")
        return table.diameter
    return load_or_build(n, kind, cache_dir=cache_dir, budget_bytes=budget_bytes).diameter


def distance(pi: Permutation, kind: Kind = "bt", *, table: DistanceTable | None = None) -> int:
    """Exact d(pi): table lookup when a table is supplied, otherwise
    bidirectional BFS between the identity and pi."""
    check_kind(kind)
    if table is not None:
        if table.kind != kind:
            raise UsageError(f"table holds {table.kind} distances, asked for {kind}")
        return table.lookup(pi)
    if pi.n < 2 or pi.is_identity:
        if not pi.is_identity:
            raise UsageError(f"no generators exist for n={pi.n}")
        return 0
    return _bidirectional_distance(pi, kind)


def pair_distance(pi: Permutation, nu: Permutation, kind: Kind = "bt", *,
                  table: DistanceTable | None = None) -> int:
    """d(pi, nu) = d(nu^-1 o pi) by left invariance."""
    if pi.n != nu.n:
        raise UsageError(f"size mismatch: {pi.n} vs {nu.n}")
    return distance(nu.inverse() * pi, kind, table=table)


def _expand_level(codec: RankCodec, frontier: np.ndarray, gen_idx: np.ndarray,
                  known: dict[int, int], depth: int) -> np.ndarray:
    """One BFS level by right multiplication; returns the new frontier ranks."""
    pieces = []
    for lo in range(0, frontier.size, _CHUNK):
        words = _unrank_block(codec, frontier[lo:lo + _CHUNK])
        for g in gen_idx:
            pieces.append(codec.rank_batch(words[:, g]))
    if not pieces:
        return np.empty(0, dtype=np.int64)
    candidates = np.unique(np.concatenate(pieces))
    fresh = [int(r) for r in candidates if int(r) not in known]
    for r in fresh:
        known[r] = depth
    return np.asarray(fresh, dtype=np.int64)


def _bidirectional_distance(pi: Permutation, kind: Kind) -> int:
    """Meet-in-the-middle BFS from the identity and from pi.

    Both searches multiply on the right, which is sound because the
    generator sets are inverse closed. For block transpositions the
    cycle-graph lower bound certifies early exit once an equal-length
    path appears.
    """
    n = pi.n
    gens = enumerate_generators(n, kind)
    gen_idx = _generator_index_arrays(gens)
    codec = RankCodec(n)
    lower = 1
    if kind == "bt":
        from .bounds import bpl_lower_bound

        lower = max(lower, bpl_lower_bound(pi))
    target = codec.rank(pi.zero_based())
    sides: list[dict[int, int]] = [{0: 0}, {target: 0}]
    frontiers = [np.array([0], dtype=np.int64), np.array([target], dtype=np.int64)]
    depths = [0, 0]
    best: int | None = None

    def scan_meet() -> None:
        nonlocal best
        a, b = sides
        small, big = (a, b) if len(a) <= len(b) else (b, a)
        for r, d in small.items():
            if r in big:
                total = d + big[r]
                if best is None or total < best:
                    best = total

    scan_meet()
    while True:
        if best is not None and (best <= lower or depths[0] + depths[1] + 1 >= best):
            return best
        side = 0 if frontiers[0].size <= frontiers[1].size else 1
        depths[side] += 1
        frontiers[side] = _expand_level(codec, frontiers[side], gen_idx, sides[side], depths[side])
        if frontiers[side].size == 0 and best is None:
            raise FalsificationError("searches exhausted without meeting; set does not generate")
        scan_meet()


def sorting_sequence(pi: Permutation, kind: Kind = "bt", *,
                     table: DistanceTable | None = None,
                     budget_bytes: int = DEFAULT_BUDGET) -> list[Move]:
    """A minimum-length move sequence sorting pi: pi o m_1 o ... o m_k = identity.

    Deterministic: at each step the first generator (canonical order) that
    decreases the table distance is taken.
    """
    check_kind(kind)
    if pi.is_identity:
        return []
    if table is None:
        table = build_distance_table(pi.n, kind, budget_bytes=budget_bytes)
    if table.n != pi.n or table.kind != kind:
        raise UsageError("supplied table does not match the permutation and kind")
    gens = enumerate_generators(pi.n, kind)
    out: list[Move] = []
    cur = pi
    d = table.lookup(cur)
    while d > 0:
        for move, gperm in gens:
            nxt = cur * gperm
            if table.lookup(nxt) == d - 1:
                out.append(move)
                cur = nxt
                d -= 1
                break
        else:
            raise FalsificationError(f"no descending neighbor at distance {d}; table corrupt")
    return out


def export_distribution_csv(table: DistanceTable) -> str:
    lines = ["n,k,count"]
    lines += [f"{table.n},{k},{c}" for k, c in table.distribution()]
    return "\n".join(lines) + "\n"
