"""Loopless undirected multigraphs and the distance-2 identification operation.

Vertices are dense non-negative integer ids. A freshly built graph uses ids
0..order-1; identifying two vertices assigns the merged vertex a fresh id
(max id + 1), so ids stay unambiguous across a folding sequence. Graphs are
immutable after construction and safe to share between workers.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional


def _pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class Multigraph:
    """Immutable loopless multigraph: a vertex set plus pair multiplicities.

    Multiplicities are positive integers with no cap; they never affect
    distances, completeness (beyond presence) or canonical forms.
    """

    __slots__ = ("_vertices", "_mult", "_adj", "_labels", "_pos", "_rows")

    def __init__(
        self,
        vertices: Iterable[int],
        multiplicity: Mapping[tuple[int, int], int],
        labels: Optional[Mapping[int, str]] = None,
    ):
        vs = tuple(sorted(set(vertices)))
        if not vs:
            raise ValueError("a multigraph needs at least one vertex")
        if vs[0] < 0:
            raise ValueError("vertex ids must be non-negative")
        vset = frozenset(vs)
        mult: dict[tuple[int, int], int] = {}
        adj: dict[int, set[int]] = {v: set() for v in vs}
        for (u, v), m in multiplicity.items():
            if u == v:
                raise ValueError(f"loop edge on vertex {u} is not allowed")
            if u not in vset or v not in vset:
                raise ValueError(f"edge ({u},{v}) has an endpoint outside the vertex set")
            if m < 1:
                raise ValueError(f"multiplicity of ({u},{v}) must be >= 1, got {m}")
            key = _pair(u, v)
            mult[key] = mult.get(key, 0) + m
            adj[u].add(v)
            adj[v].add(u)
        self._vertices = vs
        self._mult = mult
        self._adj = {v: frozenset(nb) for v, nb in adj.items()}
        self._labels = dict(labels) if labels else None
        # positional bitmask adjacency, used by the solvers
        pos = {v: i for i, v in enumerate(vs)}
        rows = [0] * len(vs)
        for (u, v) in mult:
            rows[pos[u]] |= 1 << pos[v]
            rows[pos[v]] |= 1 << pos[u]
        self._pos = pos
        self._rows = tuple(rows)

    @property
    def vertices(self) -> tuple[int, ...]:
        return self._vertices

    @property
    def order(self) -> int:
        return len(self._vertices)

    @property
    def edge_count(self) -> int:
        """Number of distinct adjacent pairs (parallel edges counted once)."""
        return len(self._mult)

    @property
    def labels(self) -> Optional[dict[int, str]]:
        return dict(self._labels) if self._labels else None

    def multiplicity(self, u: int, v: int) -> int:
        """Edge count between u and v; 0 when non-adjacent."""
        return self._mult.get(_pair(u, v), 0)

    def has_edge(self, u: int, v: int) -> bool:
        return _pair(u, v) in self._mult

    def neighbours(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        """Simple degree: number of distinct neighbours."""
        return len(self._adj[v])

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """Yield (u, v, multiplicity) with u < v, in sorted pair order."""
        for (u, v) in sorted(self._mult):
            yield u, v, self._mult[(u, v)]

    def index_of(self, v: int) -> int:
        """Position of v in the sorted vertex tuple."""
        return self._pos[v]

    def adjacency_rows(self) -> tuple[int, ...]:
        """Neighbour bitmasks indexed by vertex position (sorted-id order)."""
        return self._rows

    def __contains__(self, v: int) -> bool:
        return v in self._pos

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self._vertices == other._vertices and self._mult == other._mult

    def __hash__(self) -> int:
        return hash((self._vertices, frozenset(self._mult.items())))

    def __repr__(self) -> str:
        return f"Multigraph(order={self.order}, edges={sorted(self._mult.items())})"

    def __reduce__(self):
        return (_rebuild_multigraph, (self._vertices, tuple(self._mult.items()), self._labels))


def _rebuild_multigraph(vertices, mult_items, labels):
    return Multigraph(vertices, dict(mult_items), labels)


@dataclass(frozen=True)
class Classification:
    """Structural summary of the underlying simple graph."""

    connected: bool
    bipartite: bool
    odd_cycle: bool
    complete: bool
    max_degree: int
    girth: float  # cycle length, math.inf for forests


def build_graph(order: int, edges: Iterable[tuple]) -> Multigraph:
    """Build a multigraph on vertices 0..order-1.

    Each edge is (u, v) or (u, v, multiplicity); repeated pairs accumulate.
    Loops and out-of-range endpoints are rejected.
    """
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    mult: dict[tuple[int, int], int] = {}
    for e in edges:
        if len(e) == 2:
            u, v = e
            m = 1
        elif len(e) == 3:
            u, v, m = e
        else:
            raise ValueError(f"edge {e!r} is not a pair or pair-with-multiplicity")
        if not (0 <= u < order and 0 <= v < order):
            raise ValueError(f"edge ({u},{v}) endpoint out of range 0..{order - 1}")
        if u == v:
            raise ValueError(f"loop edge on vertex {u} is not allowed")
        key = _pair(u, v)
        mult[key] = mult.get(key, 0) + m
    return Multigraph(range(order), mult)


def underlying_simple(g: Multigraph) -> Multigraph:
    """Copy of g with every multiplicity reduced to 1."""
    return Multigraph(g.vertices, {pair: 1 for pair in (e[:2] for e in g.edges())}, g.labels)


def is_complete(g: Multigraph) -> bool:
    """True iff every unordered vertex pair carries at least one edge."""
    n = g.order
    return g.edge_count == n * (n - 1) // 2


def is_connected(g: Multigraph) -> bool:
    rows = g.adjacency_rows()
    n = len(rows)
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        m = frontier
        while m:
            low = m & -m
            m ^= low
            nxt |= rows[low.bit_length() - 1]
        frontier = nxt & ~seen
        seen |= frontier
    return seen == (1 << n) - 1


def distance(g: Multigraph, u: int, v: int) -> float:
    """Shortest-path edge count in the underlying simple graph.

    Returns 0 for u = v and math.inf when v is unreachable from u.
    """
    if u not in g or v not in g:
        raise ValueError(f"vertex {u if u not in g else v} is not in the graph")
    if u == v:
        return 0
    rows = g.adjacency_rows()
    target = 1 << g.index_of(v)
    seen = 1 << g.index_of(u)
    frontier = seen
    d = 0
    while frontier:
        d += 1
        nxt = 0
        m = frontier
        while m:
            low = m & -m
            m ^= low
            nxt |= rows[low.bit_length() - 1]
        frontier = nxt & ~seen
        if frontier & target:
            return d
        seen |= frontier
    return math.inf


def distance2_pairs(g: Multigraph) -> set[tuple[int, int]]:
    """All unordered pairs at distance exactly 2 (non-adjacent, sharing a neighbour)."""
    rows = g.adjacency_rows()
    vs = g.vertices
    n = len(vs)
    out: set[tuple[int, int]] = set()
    for i in range(n):
        two = 0
        m = rows[i]
        while m:
            low = m & -m
            m ^= low
            two |= rows[low.bit_length() - 1]
        two &= ~rows[i] & ~((1 << (i + 1)) - 1)
        while two:
            low = two & -two
            two ^= low
            out.add((vs[i], vs[low.bit_length() - 1]))
    return out


def common_neighbours(g: Multigraph, u: int, v: int) -> int:
    """Number of distinct vertices adjacent to both u and v (unweighted)."""
    if u == v:
        raise ValueError("common_neighbours needs two distinct vertices")
    if u not in g or v not in g:
        raise ValueError(f"vertex {u if u not in g else v} is not in the graph")
    rows = g.adjacency_rows()
    return (rows[g.index_of(u)] & rows[g.index_of(v)]).bit_count()


def identify(g: Multigraph, u: int, v: int) -> Multigraph:
    """Identify two vertices at distance exactly 2 into a fresh vertex.

    The merged vertex gets id max(vertices)+1 and inherits both endpoints'
    edges; multiplicities towards shared neighbours add up, creating
    parallel edges. The result is loopless and one vertex smaller.
    """
    if u == v:
        raise ValueError("cannot identify a vertex with itself")
    if u not in g or v not in g:
        raise ValueError(f"vertex {u if u not in g else v} is not in the graph")
    if g.has_edge(u, v):
        raise ValueError(f"vertices {u} and {v} are adjacent, not at distance 2")
    if not (g.adjacency_rows()[g.index_of(u)] & g.adjacency_rows()[g.index_of(v)]):
        raise ValueError(f"vertices {u} and {v} share no neighbour, so their distance exceeds 2")
    merged = g.vertices[-1] + 1
    mult: dict[tuple[int, int], int] = {}
    for a, b, m in g.edges():
        if a in (u, v):
            a = merged
        if b in (u, v):
            b = merged
        key = _pair(a, b)
        mult[key] = mult.get(key, 0) + m
    vertices = [w for w in g.vertices if w not in (u, v)]
    vertices.append(merged)
    labels = g.labels
    if labels is not None:
        lu = labels.pop(u, None)
        lv = labels.pop(v, None)
        if lu is not None or lv is not None:
            labels[merged] = f"{lu or u}+{lv or v}"
    return Multigraph(vertices, mult, labels)


def max_degree(g: Multigraph) -> int:
    return max(g.degree(v) for v in g.vertices)


def girth(g: Multigraph) -> float:
    """Length of a shortest cycle in the underlying simple graph; inf for forests."""
    rows = g.adjacency_rows()
    n = len(rows)
    best = math.inf
    for s in range(n):
        dist = {s: 0}
        parent = {s: -1}
        q = deque([s])
        while q:
            x = q.popleft()
            if 2 * dist[x] >= best - 1:
                break
            m = rows[x]
            while m:
                low = m & -m
                m ^= low
                y = low.bit_length() - 1
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    q.append(y)
                elif y != parent[x]:
                    best = min(best, dist[x] + dist[y] + 1)
    return best


def classify(g: Multigraph) -> Classification:
    """Flags and invariants of the underlying simple graph."""
    connected = is_connected(g)
    rows = g.adjacency_rows()
    n = len(rows)
    # BFS 2-colouring over every component
    colour = [-1] * n
    bipartite = True
    for s in range(n):
        if colour[s] != -1:
            continue
        colour[s] = 0
        q = deque([s])
        while q and bipartite:
            x = q.popleft()
            m = rows[x]
            while m:
                low = m & -m
                m ^= low
                y = low.bit_length() - 1
                if colour[y] == -1:
                    colour[y] = colour[x] ^ 1
                    q.append(y)
                elif colour[y] == colour[x]:
                    bipartite = False
                    break
    odd_cycle = connected and n >= 3 and n % 2 == 1 and all(r.bit_count() == 2 for r in rows)
    return Classification(
        connected=connected,
        bipartite=bipartite,
        odd_cycle=odd_cycle,
        complete=is_complete(g),
        max_degree=max_degree(g),
        girth=girth(g),
    )
