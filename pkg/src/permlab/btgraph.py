"""The block transposition graph: the subgraph of the Cayley graph induced
on the generator set itself, its four-way partition, its maximal 2-cliques,
the cubic subgraph on the clique vertices with its explicit Hamiltonian
cycle, and automorphism groups.

Vertices are indexed by the canonical cut-point order of block
transpositions; labels carry the "sigma(i,j,k)" form. Two moves are adjacent
exactly when one is reachable from the other by right-multiplying a third
move, which matches the published small-n edge lists.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .core import (
    BlockTransposition,
    Kind,
    Permutation,
    block_transpositions,
    enumerate_generators,
)
from .distance import RankCodec
from .errors import FalsificationError, ResourceError, UsageError
from .toric import adapted_toric_map, adapted_toric_map_bt, reverse_map, reverse_map_bt


@dataclass(frozen=True)
class UndirectedGraph:
    """A finite simple undirected graph with stable vertex labels."""

    labels: tuple[str, ...]
    adjacency: tuple[frozenset[int], ...]

    @property
    def vertex_count(self) -> int:
        return len(self.adjacency)

    def edges(self) -> list[tuple[int, int]]:
        return sorted((u, v) for u in range(self.vertex_count) for v in self.adjacency[u] if u < v)

    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def regularity(self) -> Optional[int]:
        degrees = {len(a) for a in self.adjacency}
        return degrees.pop() if len(degrees) == 1 else None

    def induced(self, vertices: Sequence[int]) -> "UndirectedGraph":
        keep = sorted(vertices)
        index = {v: i for i, v in enumerate(keep)}
        adj = tuple(frozenset(index[u] for u in self.adjacency[v] if u in index) for v in keep)
        return UndirectedGraph(labels=tuple(self.labels[v] for v in keep), adjacency=adj)

    def is_connected(self) -> bool:
        if self.vertex_count == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            for u in self.adjacency[stack.pop()]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == self.vertex_count

    def to_dot(self, classes: dict[int, str] | None = None) -> str:
        palette = {"B": "gold", "L": "skyblue", "F": "salmon", "S": "palegreen"}
        lines = ["graph g {"]
        for v, label in enumerate(self.labels):
            attrs = [f'label="{label}"']
            if classes and v in classes:
                attrs.append(f'fillcolor={palette.get(classes[v], "white")}, style=filled')
            lines.append(f"  {v} [{', '.join(attrs)}];")
        for u, v in self.edges():
            lines.append(f"  {u} -- {v};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_bt_graph(n: int) -> UndirectedGraph:
    """Vertices are the block transpositions of [n] in cut-point order;
    {u, v} is an edge iff u^-1 o v is itself a block transposition."""
    if n < 2:
        raise UsageError(f"needs n >= 2, got {n}")
    bts = block_transpositions(n)
    words = [bt.as_permutation(n) for bt in bts]
    member = {w.values for w in words}
    adj: list[set[int]] = [set() for _ in bts]
    for u in range(len(bts)):
        inv_u = words[u].inverse()
        for v in range(u + 1, len(bts)):
            if (inv_u * words[v]).values in member:
                adj[u].add(v)
                adj[v].add(u)
    return UndirectedGraph(labels=tuple(str(bt) for bt in bts),
                           adjacency=tuple(frozenset(a) for a in adj))


def check_regularity(graph: UndirectedGraph) -> Optional[int]:
    """The uniform degree, or None when degrees differ."""
    return graph.regularity()


@dataclass(frozen=True)
class Partition4:
    """B: sigma(0,j,n); L: sigma(0,j,k), k<n; F: sigma(i,j,n), i>0;
    S: neither end touched. Disjoint union is the whole generator set."""

    n: int
    b: tuple[int, ...]
    l: tuple[int, ...]
    f: tuple[int, ...]
    s: tuple[int, ...]

    def class_of(self, v: int) -> str:
        for name, cell in (("B", self.b), ("L", self.l), ("F", self.f), ("S", self.s)):
            if v in cell:
                return name
        raise UsageError(f"vertex {v} outside the partition")


def partition(n: int) -> Partition4:
    if n < 4:
        raise UsageError(f"the partition needs n >= 4, got {n}")
    cells: dict[str, list[int]] = {"B": [], "L": [], "F": [], "S": []}
    for v, bt in enumerate(block_transpositions(n)):
        if bt.i == 0 and bt.k == n:
            cells["B"].append(v)
        elif bt.i == 0:
            cells["L"].append(v)
        elif bt.k == n:
            cells["F"].append(v)
        else:
            cells["S"].append(v)
    return Partition4(n=n, b=tuple(cells["B"]), l=tuple(cells["L"]),
                      f=tuple(cells["F"]), s=tuple(cells["S"]))


def clique_edge_family(n: int) -> list[tuple[BlockTransposition, BlockTransposition]]:
    """The closed-form edges e_0 ... e_n of the maximal 2-cliques."""
    if n < 4:
        raise UsageError(f"the clique family needs n >= 4, got {n}")
    fam = [(BlockTransposition(l, l + 1, l + 3), BlockTransposition(l, l + 2, l + 3))
           for l in range(n - 2)]
    fam.append((BlockTransposition(0, n - 2, n - 1), BlockTransposition(0, n - 2, n)))
    fam.append((BlockTransposition(1, n - 1, n), BlockTransposition(0, 1, n - 1)))
    fam.append((BlockTransposition(0, 2, n), BlockTransposition(1, 2, n)))
    return fam


@dataclass(frozen=True)
class CliqueEdgeFamily:
    n: int
    edges: tuple[tuple[int, int], ...]          # vertex index pairs, sorted
    moves: tuple[tuple[BlockTransposition, BlockTransposition], ...]

    def vertex_set(self) -> tuple[int, ...]:
        return tuple(sorted({v for e in self.edges for v in e}))


def maximal_2_cliques(graph: UndirectedGraph, n: int) -> CliqueEdgeFamily:
    """All edges whose endpoints share no neighbor; checked against the
    closed-form family, raising FalsificationError on any mismatch."""
    bts = block_transpositions(n)
    index = {bt: v for v, bt in enumerate(bts)}
    computed = {(u, v) for u, v in graph.edges() if not (graph.adjacency[u] & graph.adjacency[v])}
    family = clique_edge_family(n)
    closed = {tuple(sorted((index[a], index[b]))) for a, b in family}
    if computed != closed:
        raise FalsificationError(
            f"maximal 2-clique edges {sorted(computed)} differ from the closed form {sorted(closed)}")
    edges = tuple(sorted(computed))
    moves = tuple((bts[u], bts[v]) for u, v in edges)
    return CliqueEdgeFamily(n=n, edges=edges, moves=moves)


def gamma_v(graph: UndirectedGraph, family: CliqueEdgeFamily) -> UndirectedGraph:
    """The subgraph induced on the clique-edge endpoints; cubic for n >= 5."""
    return graph.induced(family.vertex_set())


def hamiltonian_cycle_gamma_v(n: int) -> list[BlockTransposition]:
    """The explicit Hamiltonian cycle through the clique vertices: a zigzag
    along the e_l ladder followed by a fixed eight-vertex return path.
    Validated against the built graph; any defect raises FalsificationError.
    """
    if n < 5:
        raise UsageError(f"the construction needs n >= 5, got {n}")
    cycle: list[BlockTransposition] = []
    for l in range(n - 3):
        cycle.append(BlockTransposition(l, l + 2, l + 3))
        cycle.append(BlockTransposition(l, l + 1, l + 3))
    cycle += [
        BlockTransposition(n - 3, n - 1, n),
        BlockTransposition(n - 3, n - 2, n),
        BlockTransposition(0, n - 2, n),
        BlockTransposition(0, n - 2, n - 1),
        BlockTransposition(0, 1, n - 1),
        BlockTransposition(1, n - 1, n),
        BlockTransposition(1, 2, n),
        BlockTransposition(0, 2, n),
    ]
    graph = build_bt_graph(n)
    family = maximal_2_cliques(graph, n)
    index = {bt: v for v, bt in enumerate(block_transpositions(n))}
    verts = [index[bt] for bt in cycle]
    if len(set(verts)) != len(verts) or set(verts) != set(family.vertex_set()):
        raise FalsificationError("constructed cycle does not visit the clique vertices exactly once")
    for a, b in zip(verts, verts[1:] + verts[:1]):
        if b not in graph.adjacency[a]:
            raise FalsificationError(f"constructed cycle uses the non-edge {a}-{b}")
    return cycle


@dataclass(frozen=True)
class ToricReverseAction:
    """The dihedral group of order 2(n+1) acting on the generator vertices:
    powers of the adapted toric map, then each power composed with the
    reverse map. vertex_images[t] gives element t as a vertex permutation."""

    n: int
    vertex_images: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.vertex_images)


def toric_reverse_action(n: int) -> ToricReverseAction:
    """Build and verify the action: every element permutes the vertex set
    preserving edges, the action is regular on the 2(n+1) clique vertices,
    and the adapted toric map cycles the clique edges e_n -> ... -> e_0 -> e_n.
    """
    if n < 5:
        raise UsageError(f"the verified action needs n >= 5, got {n}")
    graph = build_bt_graph(n)
    bts = block_transpositions(n)
    index = {bt: v for v, bt in enumerate(bts)}

    fbar = tuple(index[adapted_toric_map_bt(bt, n)] for bt in bts)
    gmap = tuple(index[reverse_map_bt(bt, n)] for bt in bts)

    images = []
    current = tuple(range(len(bts)))
    for _ in range(n + 1):
        images.append(current)
        current = tuple(fbar[v] for v in current)
    if current != tuple(range(len(bts))):
        raise FalsificationError("adapted toric map does not have order n+1 on the vertices")
    images += [tuple(rot[gmap[v]] for v in range(len(bts))) for rot in images[: n + 1]]

    edge_set = {frozenset(e) for e in graph.edges()}
    for img in images:
        if sorted(img) != list(range(len(bts))):
            raise FalsificationError("a toric-reverse element fails to permute the vertices")
        for e in edge_set:
            u, v = tuple(e)
            if frozenset((img[u], img[v])) not in edge_set:
                raise FalsificationError(f"a toric-reverse element breaks the edge {u}-{v}")
    if len(set(images)) != 2 * (n + 1):
        raise FalsificationError("toric-reverse elements are not pairwise distinct")

    family = maximal_2_cliques(graph, n)
    verts = family.vertex_set()
    v0 = verts[0]
    hits = [img[v0] for img in images]
    if sorted(hits) != list(verts):
        raise FalsificationError("the toric-reverse group is not regular on the clique vertices")

    # Index the clique edges by their construction order e_0 ... e_n; the
    # adapted toric map must step that index down cyclically.
    ordered = clique_edge_family(n)
    edge_of: dict[int, int] = {}
    for m, (a, b) in enumerate(ordered):
        edge_of[index[a]] = m
        edge_of[index[b]] = m
    for m, (a, b) in enumerate(ordered):
        u, v = index[a], index[b]
        want = (m - 1) % (n + 1)
        if {edge_of.get(fbar[u]), edge_of.get(fbar[v])} != {want}:
            raise FalsificationError(f"clique edge {m} does not map to edge {want}")
    return ToricReverseAction(n=n, vertex_images=tuple(images))


# ---------------------------------------------------------------------------
# Automorphism search: equitable refinement plus individualization, counting
# through the orbit-stabilizer chain. Sizes here stay tiny (budget <= 200
# vertices), so clarity wins over canonical-form tricks.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AutomorphismGroup:
    order: int
    generators: tuple[tuple[int, ...], ...]


def _refine(adj: tuple[tuple[int, ...], ...], colors: Sequence[int]) -> tuple[int, ...]:
    current = list(colors)
    while True:
        sigs = [(current[v], tuple(sorted(current[u] for u in adj[v]))) for v in range(len(adj))]
        mapping = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [mapping[s] for s in sigs]
        if new == current:
            return tuple(new)
        current = new


def _refine_pair(adj, ca, cb):
    ca, cb = list(ca), list(cb)
    while True:
        sa = [(ca[v], tuple(sorted(ca[u] for u in adj[v]))) for v in range(len(adj))]
        sb = [(cb[v], tuple(sorted(cb[u] for u in adj[v]))) for v in range(len(adj))]
        mapping = {s: i for i, s in enumerate(sorted(set(sa) | set(sb)))}
        na = [mapping[s] for s in sa]
        nb = [mapping[s] for s in sb]
        if sorted(na) != sorted(nb):
            return None
        if na == ca and nb == cb:
            return tuple(na), tuple(nb)
        ca, cb = na, nb


def _cells(colors: Sequence[int]) -> dict[int, list[int]]:
    cells: dict[int, list[int]] = defaultdict(list)
    for v, c in enumerate(colors):
        cells[c].append(v)
    return cells


def _find_color_iso(adj, adjsets, ca, cb) -> Optional[tuple[int, ...]]:
    refined = _refine_pair(adj, ca, cb)
    if refined is None:
        return None
    ca, cb = refined
    cells_a, cells_b = _cells(ca), _cells(cb)
    split = None
    for color in sorted(cells_a):
        if len(cells_a[color]) != len(cells_b.get(color, ())):
            return None
        if split is None and len(cells_a[color]) > 1:
            split = color
    if split is None:
        mapping = [0] * len(adj)
        for color, verts in cells_a.items():
            mapping[verts[0]] = cells_b[color][0]
        for v in range(len(adj)):
            if {mapping[u] for u in adj[v]} != adjsets[mapping[v]]:
                return None
        return tuple(mapping)
    fresh = len(adj) + max(ca) + 1
    v = cells_a[split][0]
    for u in cells_b[split]:
        ca2 = list(ca)
        cb2 = list(cb)
        ca2[v] = fresh
        cb2[u] = fresh
        result = _find_color_iso(adj, adjsets, ca2, cb2)
        if result is not None:
            return result
    return None


def _aut_order(adj, adjsets, colors) -> tuple[int, list[tuple[int, ...]]]:
    cells = _cells(colors)
    target = next((c for c in sorted(cells) if len(cells[c]) > 1), None)
    if target is None:
        return 1, []
    cell = sorted(cells[target])
    fresh = len(adj) + max(colors) + 1
    v = cell[0]
    stab = list(colors)
    stab[v] = fresh
    sub_order, gens = _aut_order(adj, adjsets, _refine(adj, stab))
    orbit = 1
    for u in cell[1:]:
        ca = list(colors)
        cb = list(colors)
        ca[v] = fresh
        cb[u] = fresh
        found = _find_color_iso(adj, adjsets, ca, cb)
        if found is not None:
            orbit += 1
            gens.append(found)
    return orbit * sub_order, gens


def graph_automorphisms(graph: UndirectedGraph, budget: int = 200) -> AutomorphismGroup:
    """Full automorphism group order and generators by backtracking over an
    equitable partition refinement, one orbit-stabilizer level at a time."""
    if graph.vertex_count > budget:
        raise ResourceError(
            f"automorphism search budget is {budget} vertices, graph has {graph.vertex_count}")
    adj = tuple(tuple(sorted(a)) for a in graph.adjacency)
    adjsets = tuple(set(a) for a in adj)
    base = _refine(adj, [0] * len(adj))
    order, gens = _aut_order(adj, adjsets, base)
    identity = tuple(range(len(adj)))
    gens = [g for g in gens if g != identity]
    gens.sort(key=lambda g: (min((v for v in range(len(g)) if g[v] != v), default=0), g))
    return AutomorphismGroup(order=order, generators=tuple(gens))


def cayley_graph(n: int, kind: Kind = "bt", budget_vertices: int = 5040) -> UndirectedGraph:
    """The full Cayley graph of Sym_n under the chosen rearrangement set;
    vertices in rank order."""
    import math

    if math.factorial(n) > budget_vertices:
        raise ResourceError(f"Cayley graph for n={n} has {math.factorial(n)} vertices, "
                            f"budget is {budget_vertices}")
    gens = enumerate_generators(n, kind)
    codec = RankCodec(n)
    size = codec.size
    words = codec.unrank_batch(np.arange(size, dtype=np.int64))
    adj: list[set[int]] = [set() for _ in range(size)]
    for gperm in gens.permutations:
        g = np.asarray(gperm.zero_based(), dtype=np.intp)
        neighbors = codec.rank_batch(words[:, g])
        for v in range(size):
            adj[v].add(int(neighbors[v]))
    labels = tuple(" ".join(str(x + 1) for x in words[v]) for v in range(size))
    return UndirectedGraph(labels=labels, adjacency=tuple(frozenset(a) for a in adj))


def translation_toric_automorphism_count(n: int) -> int:
    """Count the distinct vertex maps h o d over the translation subgroup h
    and the toric-reverse elements d of the Cayley graph; every factor is
    verified to preserve edges, so each composite is an automorphism. The
    expected count is 2(n+1)!.

    The graph multiplies generators on the right, so its translations act on
    the left and its toric symmetries are the adapted maps.
    """
    import math

    codec = RankCodec(n)
    size = codec.size
    words = codec.unrank_batch(np.arange(size, dtype=np.int64))
    graph_edges = _cayley_edge_array(n, codec, words)

    def vertex_map(transform) -> np.ndarray:
        out = np.empty(size, dtype=np.int64)
        for v in range(size):
            pi = Permutation(tuple(int(x) + 1 for x in words[v]))
            out[v] = codec.rank(transform(pi).zero_based())
        return out

    fmap = vertex_map(adapted_toric_map)
    gmap = vertex_map(reverse_map)
    for name, m in (("adapted toric", fmap), ("reverse", gmap)):
        if not _preserves_edges(m, graph_edges):
            raise FalsificationError(f"the {name} map is not a Cayley graph automorphism")

    rotations = [np.arange(size, dtype=np.int64)]
    for _ in range(n):
        rotations.append(fmap[rotations[-1]])
    dihedral = rotations + [rot[gmap] for rot in rotations]
    if len({d.tobytes() for d in dihedral}) != 2 * (n + 1):
        raise FalsificationError("toric-reverse vertex maps are not pairwise distinct")

    seen: set[bytes] = set()
    for h in range(size):
        hword = words[h].astype(np.uint8)
        tmap = codec.rank_batch(hword[words])
        if not _preserves_edges(tmap, graph_edges):
            raise FalsificationError(f"translation by rank {h} is not an automorphism")
        for d in dihedral:
            seen.add(tmap[d].tobytes())
    expected = 2 * math.factorial(n + 1)
    if len(seen) != expected:
        raise FalsificationError(f"built {len(seen)} distinct maps, expected {expected}")
    return len(seen)


def _cayley_edge_array(n: int, codec: RankCodec, words: np.ndarray) -> np.ndarray:
    gens = enumerate_generators(n, "bt")
    pieces = []
    size = codec.size
    base = np.arange(size, dtype=np.int64)
    for gperm in gens.permutations:
        g = np.asarray(gperm.zero_based(), dtype=np.intp)
        pieces.append(np.stack([base, codec.rank_batch(words[:, g])], axis=1))
    edges = np.concatenate(pieces)
    edges.sort(axis=1)
    return np.unique(edges, axis=0)


def _preserves_edges(vmap: np.ndarray, edges: np.ndarray) -> bool:
    mapped = vmap[edges]
    mapped.sort(axis=1)
    mapped = np.unique(mapped, axis=0)
    return mapped.shape == edges.shape and bool(np.all(mapped == edges))
