"""Exact and heuristic vertex colouring, independent of the folding machinery.

All operations read the underlying simple graph; parallel edges are
irrelevant to properness. The exact solver is a DSATUR-guided branch and
bound with a clique lower bound, so results carry an exhausted-search
certificate for optimality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .graph import Multigraph, distance2_pairs, is_complete, is_connected


class TheoremViolationError(RuntimeError):
    """No optimal colouring of a connected non-complete graph has a
    monochromatic distance-2 pair. Firing means the folding=colouring
    identity failed; test suites treat it as a hard failure."""

    def __init__(self, g: Multigraph):
        super().__init__(
            f"no {'':.0}optimal colouring of the given {g.order}-vertex graph "
            "contains a monochromatic distance-2 pair"
        )
        self.graph = g


@dataclass(frozen=True)
class Colouring:
    """Assignment of colour indices 0..k-1 to vertices; every index is used."""

    colour_of: Mapping[int, int]
    k: int

    def __post_init__(self):
        used = set(self.colour_of.values())
        if used != set(range(self.k)):
            raise ValueError(f"colours {sorted(used)} do not cover 0..{self.k - 1} exactly")

    def __getitem__(self, v: int) -> int:
        return self.colour_of[v]


@dataclass(frozen=True)
class ChiResult:
    """Exact chromatic number with a witness and search statistics."""

    chi: int
    witness: Colouring
    nodes_explored: int


def verify_proper(g: Multigraph, c: Colouring) -> bool:
    """True iff no edge joins two same-coloured vertices.

    Every vertex of g must be assigned; a missing assignment is an error,
    not an improper colouring.
    """
    missing = [v for v in g.vertices if v not in c.colour_of]
    if missing:
        raise ValueError(f"colouring misses vertices {missing}")
    return all(c.colour_of[u] != c.colour_of[v] for u, v, _ in g.edges())


def greedy_colouring(g: Multigraph, order: Sequence[int]) -> Colouring:
    """Colour vertices in the given order, each with the least unused colour.

    `order` must be a permutation of g's vertices.
    """
    if sorted(order) != list(g.vertices):
        raise ValueError("order is not a permutation of the graph's vertices")
    colour: dict[int, int] = {}
    for v in order:
        taken = {colour[u] for u in g.neighbours(v) if u in colour}
        c = 0
        while c in taken:
            c += 1
        colour[v] = c
    return Colouring(colour, max(colour.values()) + 1)


def dsatur(g: Multigraph) -> Colouring:
    """Saturation-degree greedy colouring.

    Tie-breaking: highest saturation, then highest degree, then smallest id.
    """
    colour: dict[int, int] = {}
    adjacent_colours: dict[int, set[int]] = {v: set() for v in g.vertices}
    for _ in range(g.order):
        v = max(
            (v for v in g.vertices if v not in colour),
            key=lambda v: (len(adjacent_colours[v]), g.degree(v), -v),
        )
        c = 0
        while c in adjacent_colours[v]:
            c += 1
        colour[v] = c
        for u in g.neighbours(v):
            adjacent_colours[u].add(c)
    return Colouring(colour, max(colour.values()) + 1)


def _iter_bits(mask: int):
    while mask:
        low = mask & -mask
        mask ^= low
        yield low.bit_length() - 1


def _max_clique_size(n: int, rows: tuple[int, ...]) -> int:
    best = 0

    def expand(cand: int, size: int) -> None:
        nonlocal best
        if not cand:
            if size > best:
                best = size
            return
        if size + cand.bit_count() <= best:
            return
        pivot = max(_iter_bits(cand), key=lambda v: (rows[v] & cand).bit_count())
        ext = cand & ~rows[pivot]
        for v in _iter_bits(ext):
            expand(cand & rows[v], size + 1)
            cand &= ~(1 << v)

    expand((1 << n) - 1, 0)
    return best


def clique_number(g: Multigraph) -> int:
    """Exact maximum clique size of the underlying simple graph."""
    return _max_clique_size(g.order, g.adjacency_rows())


def chromatic_number(g: Multigraph) -> ChiResult:
    """Exact chromatic number by branch and bound.

    DSATUR supplies the incumbent and the dynamic branching order; the
    clique number is the lower bound; colour symmetry is broken by allowing
    at most one previously unused colour per branching vertex.
    """
    rows = g.adjacency_rows()
    ids = g.vertices
    n = len(ids)
    incumbent = dsatur(g)
    best_k = incumbent.k
    best_assign = [incumbent.colour_of[v] for v in ids]
    lower = _max_clique_size(n, rows)
    nodes = 0
    if best_k > lower:
        colour = [-1] * n
        sat_count: list[dict[int, int]] = [{} for _ in range(n)]
        degree = [rows[v].bit_count() for v in range(n)]

        def pick() -> int:
            best_v = -1
            key = (-1, -1, 0)
            for v in range(n):
                if colour[v] != -1:
                    continue
                cand = (len(sat_count[v]), degree[v], -v)
                if cand > key:
                    key = cand
                    best_v = v
            return best_v

        def descend(assigned: int, used: int) -> None:
            nonlocal best_k, best_assign, nodes
            if used >= best_k or best_k == lower:
                return
            if assigned == n:
                best_k = used
                best_assign = colour.copy()
                return
            v = pick()
            nodes += 1
            forbidden = sat_count[v]
            for c in range(min(used + 1, best_k - 1)):
                if c in forbidden:
                    continue
                colour[v] = c
                touched = []
                for u in _iter_bits(rows[v]):
                    sat_count[u][c] = sat_count[u].get(c, 0) + 1
                    touched.append(u)
                descend(assigned + 1, max(used, c + 1))
                for u in touched:
                    if sat_count[u][c] == 1:
                        del sat_count[u][c]
                    else:
                        sat_count[u][c] -= 1
                colour[v] = -1

        descend(0, 0)
    witness = Colouring({ids[i]: best_assign[i] for i in range(n)}, best_k)
    return ChiResult(chi=best_k, witness=witness, nodes_explored=nodes)


def optimal_colouring_with_mono_pair(
    g: Multigraph,
) -> tuple[Colouring, tuple[int, int]]:
    """Find an optimal colouring in which some distance-2 pair shares a colour.

    Enumerates chromatic-number colourings in canonical colour-class order
    (no permutation duplicates) until one contains a monochromatic pair at
    distance exactly 2, and returns that colouring with the smallest such
    pair. Exhausting the search raises TheoremViolationError.
    """
    if not is_connected(g):
        raise ValueError("graph must be connected")
    if is_complete(g):
        raise ValueError("graph must not be complete")
    chi = chromatic_number(g).chi
    rows = g.adjacency_rows()
    ids = g.vertices
    n = len(ids)
    pos = {v: i for i, v in enumerate(ids)}
    d2 = sorted(distance2_pairs(g))
    d2_pos = [(pos[u], pos[v]) for u, v in d2]
    colour = [-1] * n

    def enumerate_colourings(v: int, used: int) -> Optional[tuple[int, int]]:
        if v == n:
            for idx, (i, j) in enumerate(d2_pos):
                if colour[i] == colour[j]:
                    return d2[idx]
            return None
        forbidden = 0
        for u in _iter_bits(rows[v]):
            if colour[u] != -1:
                forbidden |= 1 << colour[u]
        for c in range(min(used + 1, chi)):
            if (forbidden >> c) & 1:
                continue
            colour[v] = c
            found = enumerate_colourings(v + 1, max(used, c + 1))
            if found is not None:
                return found
            colour[v] = -1
        return None

    pair = enumerate_colourings(0, 0)
    if pair is None:
        raise TheoremViolationError(g)
    witness = Colouring({ids[i]: colour[i] for i in range(n)}, chi)
    return witness, pair
