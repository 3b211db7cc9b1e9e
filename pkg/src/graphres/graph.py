"""Simple undirected graphs, the four generator families, local complementation
and canonical labeling.

Nodes are numbered ``1..L`` at every public interface. Internally a graph is
also available as a tuple of 0-based neighbourhood bitmasks (``Graph.masks``),
which is what the canonical-labeling and orbit code works on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from graphres.errors import CapabilityError, DomainError

# Largest graph any generator will materialize.
MAX_GRAPH_NODES = 1_000_000
# Canonical labeling is exact up to this size.
MAX_CANONICAL_NODES = 12

Edge = tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on nodes ``1..node_count``.

    ``edges`` is normalized to a frozenset of ``(k, l)`` pairs with ``k < l``.
    Construction rejects self-loops, duplicate edges and out-of-range endpoints.
    """

    node_count: int
    edges: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        L = self.node_count
        if not isinstance(L, int) or L < 1:
            raise DomainError(f"node_count must be a positive integer, got {L!r}")
        normalized: set[Edge] = set()
        for edge in self.edges:
            k, l = edge
            if k == l:
                raise DomainError(f"self-loop at node {k}")
            if not (1 <= k <= L and 1 <= l <= L):
                raise DomainError(f"edge {edge} has an endpoint outside [1, {L}]")
            pair = (k, l) if k < l else (l, k)
            if pair in normalized:
                raise DomainError(f"duplicate edge {pair}")
            normalized.add(pair)
        object.__setattr__(self, "edges", frozenset(normalized))

    @classmethod
    def from_masks(cls, masks: Sequence[int]) -> Graph:
        n = len(masks)
        edges = [(i + 1, j + 1) for i in range(n) for j in range(i + 1, n) if masks[i] >> j & 1]
        return cls(n, frozenset(edges))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        adj = [0] * self.node_count
        for k, l in self.edges:
            adj[k - 1] |= 1 << (l - 1)
            adj[l - 1] |= 1 << (k - 1)
        return tuple(adj)

    def neighbors(self, v: int) -> list[int]:
        self._check_node(v)
        m = self.masks[v - 1]
        return [u + 1 for u in range(self.node_count) if m >> u & 1]

    def degree(self, v: int) -> int:
        self._check_node(v)
        return self.masks[v - 1].bit_count()

    def is_connected(self) -> bool:
        return _connected(self.masks)

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Return the graph with node ``k`` renamed to ``perm[k-1]`` (1-based)."""
        if sorted(perm) != list(range(1, self.node_count + 1)):
            raise DomainError("perm must be a permutation of 1..L")
        return Graph(self.node_count, frozenset((perm[k - 1], perm[l - 1]) for k, l in self.edges))

    def _check_node(self, v: int) -> None:
        if not (1 <= v <= self.node_count):
            raise DomainError(f"node {v} outside [1, {self.node_count}]")


@dataclass(frozen=True)
class CanonicalGraph:
    """A graph in canonical node order together with its isomorphism-invariant label.

    ``canonical_label`` is the graph6 encoding of ``graph``; two inputs receive
    the same label exactly when they are isomorphic.
    """

    graph: Graph
    canonical_label: bytes

    @property
    def node_count(self) -> int:
        return self.graph.node_count

    @property
    def edge_count(self) -> int:
        return self.graph.edge_count

    def sort_key(self) -> tuple[int, int, bytes]:
        return (self.graph.node_count, self.graph.edge_count, self.canonical_label)


@dataclass(frozen=True)
class TuranSpec:
    node_count: int
    group_count: int
    group_sizes: tuple[int, ...]

    @property
    def remainder(self) -> int:
        return self.node_count % self.group_count


# --------------------------------------------------------------------------
# generators


def make_star(L: int, p: int = 0) -> Graph:
    """Star on ``L`` nodes with hub 1 plus ``p`` consecutive corona edges.

    Corona edges are ``(2,3), (3,4), ...``; the last allowed value of ``p``
    closes the corona into a ring with the edge ``(L, 2)``. On three nodes the
    corona has a single possible edge, so ``p <= 1`` there.
    """
    if L < 2:
        raise DomainError(f"star needs L >= 2, got {L}")
    p_max = max_corona_edges(L)
    if not (0 <= p <= p_max):
        raise DomainError(f"p={p} outside [0, {p_max}] for a star on {L} nodes")
    _check_size(L)
    edges = [(1, k) for k in range(2, L + 1)]
    path = min(p, L - 2)
    edges += [(k, k + 1) for k in range(2, 2 + path)]
    if p == L - 1:
        edges.append((2, L))
    return Graph(L, frozenset(edges))


def max_corona_edges(L: int) -> int:
    """Largest corona edge count for a star on ``L`` nodes."""
    if L <= 3:
        return L - 2
    return L - 1


def turan_spec(L: int, K: int) -> TuranSpec:
    if K < 1:
        raise DomainError(f"K must be >= 1, got {K}")
    if K > L:
        raise DomainError(f"K={K} exceeds L={L}")
    q, s = divmod(L, K)
    sizes = tuple([q + 1] * s + [q] * (K - s))
    return TuranSpec(L, K, sizes)


def make_turan(L: int, K: int) -> tuple[Graph, TuranSpec]:
    """Complete multipartite graph on a balanced partition (larger groups first).

    Groups are contiguous blocks of node labels.
    """
    spec = turan_spec(L, K)
    _check_size(L)
    group = [g for g, size in enumerate(spec.group_sizes) for _ in range(size)]
    edges = [(a + 1, b + 1) for a, b in combinations(range(L), 2) if group[a] != group[b]]
    return Graph(L, frozenset(edges)), spec


def turan_edge_count(L: int, K: int) -> int:
    """Closed-form edge count (1 - 1/K)(L^2 - s^2)/2 + C(s, 2), s = L mod K."""
    s = L % K
    num = (K - 1) * (L * L - s * s)
    return num // (2 * K) + s * (s - 1) // 2


def tree_node_count(r: int, h: int) -> int:
    """Nodes in a perfect r-ary tree of depth h: (1 - r^(h+1)) / (1 - r)."""
    if r < 2 or h < 0:
        raise DomainError(f"need r >= 2 and h >= 0, got r={r}, h={h}")
    n = (r ** (h + 1) - 1) // (r - 1)
    if n >= 2**63:
        raise DomainError(f"tree node count overflows 64 bits for r={r}, h={h}")
    return n


def make_tree(r: int, h: int) -> Graph:
    """Perfect r-ary tree of depth h, root 1, nodes numbered breadth-first."""
    if h < 1:
        raise DomainError(f"tree depth must be >= 1, got {h}")
    L = tree_node_count(r, h)
    _check_size(L)
    # breadth-first numbering: the children of node v are r*(v-1)+2 .. r*(v-1)+r+1
    edges = [(v, r * (v - 1) + 1 + c) for v in range(1, L + 1) for c in range(1, r + 1)
             if r * (v - 1) + 1 + c <= L]
    return Graph(L, frozenset(edges))


def make_grid(m: int, n: int) -> Graph:
    """m x n square lattice, node (i, j) numbered i*n + j + 1 (row-major)."""
    if m < 1 or n < 1:
        raise DomainError(f"grid dimensions must be positive, got {m}x{n}")
    L = m * n
    _check_size(L)
    edges = []
    for i in range(m):
        for j in range(n):
            v = i * n + j + 1
            if j + 1 < n:
                edges.append((v, v + 1))
            if i + 1 < m:
                edges.append((v, v + n))
    return Graph(L, frozenset(edges))


def make_path(L: int) -> Graph:
    return Graph(L, frozenset((k, k + 1) for k in range(1, L)))


def make_complete(L: int) -> Graph:
    return Graph(L, frozenset(combinations(range(1, L + 1), 2)))


def random_graph(L: int, edge_prob: float, rng, *, connected: bool = False) -> Graph:
    """Erdos-Renyi sample; with ``connected`` it resamples until connected."""
    if not 0.0 <= edge_prob <= 1.0:
        raise DomainError(f"edge probability {edge_prob} outside [0, 1]")
    if connected and L > 1 and edge_prob == 0.0:
        raise DomainError("cannot sample a connected graph with edge probability 0")
    while True:
        edges = [e for e in combinations(range(1, L + 1), 2) if rng.random() < edge_prob]
        g = Graph(L, frozenset(edges))
        if not connected or g.is_connected():
            return g


def _check_size(L: int) -> None:
    if L > MAX_GRAPH_NODES:
        raise DomainError(f"graph with {L} nodes exceeds the generator bound {MAX_GRAPH_NODES}")


# --------------------------------------------------------------------------
# local complementation


def local_complement(G: Graph, v: int) -> Graph:
    """Complement the subgraph induced on the neighbourhood of ``v``."""
    G._check_node(v)
    return Graph.from_masks(lc_masks(G.masks, v - 1))


def lc_masks(masks: Sequence[int], v: int) -> tuple[int, ...]:
    """Local complementation on 0-based bitmask adjacency."""
    nb = masks[v]
    out = list(masks)
    u_bits = nb
    while u_bits:
        low = u_bits & -u_bits
        u = low.bit_length() - 1
        out[u] ^= nb & ~low
        u_bits ^= low
    return tuple(out)


def _connected(masks: Sequence[int]) -> bool:
    n = len(masks)
    if n == 0:
        return True
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        bits = frontier
        while bits:
            low = bits & -bits
            nxt |= masks[low.bit_length() - 1]
            bits ^= low
        frontier = nxt & ~seen
        seen |= nxt
    return seen == (1 << n) - 1


# --------------------------------------------------------------------------
# canonical labeling
#
# Individualization-refinement: refine an ordered partition to an equitable one,
# branch on every vertex of the first non-singleton cell, and keep the smallest
# adjacency code (graph6 bit order) over all discrete leaves. Vertices that are
# twins of an already explored vertex are skipped, since swapping two twins is an
# automorphism fixing everything individualized so far.


def _refine(masks: Sequence[int], cells: list[list[int]]) -> list[list[int]]:
    while True:
        cell_masks = []
        for cell in cells:
            m = 0
            for v in cell:
                m |= 1 << v
            cell_masks.append(m)
        out: list[list[int]] = []
        split = False
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            sigs = {}
            for v in cell:
                a = masks[v]
                sig = tuple((a & cm).bit_count() for cm in cell_masks)
                sigs.setdefault(sig, []).append(v)
            if len(sigs) == 1:
                out.append(cell)
            else:
                split = True
                out.extend(sigs[k] for k in sorted(sigs))
        cells = out
        if not split:
            return cells


def _code(masks: Sequence[int], order: Sequence[int]) -> int:
    code = 0
    n = len(order)
    for j in range(1, n):
        bj = order[j]
        for i in range(j):
            code = (code << 1) | (masks[order[i]] >> bj & 1)
    return code


def canonical_code(masks: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Return ``(code, order)``: the minimum leaf code and a vertex order achieving it.

    ``order[pos]`` is the original 0-based vertex placed at canonical position ``pos``.
    """
    n = len(masks)
    if n <= 1:
        return 0, tuple(range(n))
    best: list = [None, None]

    def search(cells: list[list[int]]) -> None:
        cells = _refine(masks, cells)
        for idx, cell in enumerate(cells):
            if len(cell) > 1:
                break
        else:
            order = [c[0] for c in cells]
            code = _code(masks, order)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, tuple(order)
            return
        explored: list[int] = []
        for v in cell:
            av = masks[v]
            if any((av & ~(1 << w)) == (masks[w] & ~(1 << v)) for w in explored):
                continue
            explored.append(v)
            rest = [w for w in cell if w != v]
            search(cells[:idx] + [[v], rest] + cells[idx + 1:])

    search([list(range(n))])
    return best[0], best[1]


def canonical_form(G: Graph) -> CanonicalGraph:
    """Canonical representative and label; exact for ``L <= 12``."""
    if G.node_count > MAX_CANONICAL_NODES:
        raise CapabilityError(
            f"canonical labeling supports at most {MAX_CANONICAL_NODES} nodes, got {G.node_count}")
    return _canonical_cached(G)


@lru_cache(maxsize=1 << 16)
def _canonical_cached(G: Graph) -> CanonicalGraph:
    from graphres.graphio import to_graph6

    _, order = canonical_code(G.masks)
    masks = G.masks
    pos = {v: i for i, v in enumerate(order)}
    new = [0] * len(order)
    for v, m in enumerate(masks):
        bits = m
        while bits:
            low = bits & -bits
            new[pos[v]] |= 1 << pos[low.bit_length() - 1]
            bits ^= low
    canon = Graph.from_masks(new)
    return CanonicalGraph(canon, to_graph6(canon).encode("ascii"))


def are_isomorphic(a: Graph, b: Graph) -> bool:
    return a.node_count == b.node_count and canonical_form(a).canonical_label == canonical_form(b).canonical_label


def all_graphs(L: int) -> Iterable[Graph]:
    """Every labeled graph on ``L`` nodes (2^C(L,2) of them)."""
    pairs = list(combinations(range(1, L + 1), 2))
    for bits in range(1 << len(pairs)):
        yield Graph(L, frozenset(p for i, p in enumerate(pairs) if bits >> i & 1))
