"""Relabelling-invariant keys for the underlying simple graph.

Keys are exact (one key per isomorphism class) up to EXACT_ORDER_LIMIT
vertices, computed by minimizing the upper-triangular adjacency bitmap over
label permutations, pruned with iterated-degree colour classes. Beyond the
limit the key degrades to a refinement fingerprint: still equal for
isomorphic graphs, but distinct classes may collide, so callers needing
exactness there must confirm collisions with is_isomorphic.
"""

from __future__ import annotations

import hashlib
from functools import lru_cache

from .graph import Multigraph

EXACT_ORDER_LIMIT = 11

_INF = 1 << 62


def _iter_bits(mask: int):
    while mask:
        low = mask & -mask
        mask ^= low
        yield low.bit_length() - 1


def _refine_colours(n: int, rows: tuple[int, ...]) -> list[int]:
    """Iterated-degree colouring: stable, invariant under relabelling."""
    colour = [rows[v].bit_count() for v in range(n)]
    for _ in range(n):
        sig = [
            (colour[v], tuple(sorted(colour[u] for u in _iter_bits(rows[v]))))
            for v in range(n)
        ]
        order = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [order[s] for s in sig]
        if new == colour:
            break
        colour = new
    return colour


def _refined_cells(n: int, rows: tuple[int, ...]) -> list[list[int]]:
    colour = _refine_colours(n, rows)
    cells: dict[int, list[int]] = {}
    for v in range(n):
        cells.setdefault(colour[v], []).append(v)
    return [cells[c] for c in sorted(cells)]


@lru_cache(maxsize=1 << 18)
def canonical_mask(n: int, rows: tuple[int, ...]) -> int:
    """Minimum upper-triangle adjacency bitmap over refinement-respecting labellings.

    Bit for pair (i, j), i < j, sits at index j*(j-1)//2 + i. Exact canonical
    form: equal masks iff isomorphic.
    """
    if n <= 1:
        return 0
    cells = _refined_cells(n, rows)
    pos_cell: list[list[int]] = []
    for cell in cells:
        pos_cell.extend([cell] * len(cell))
    best = [_INF] * n
    chosen: list[int] = []
    used = [False] * n
    all_mask = (1 << n) - 1

    def dfs(depth: int) -> None:
        if depth == n:
            return
        scored = []
        for v in pos_cell[depth]:
            if used[v]:
                continue
            val = 0
            rv = rows[v]
            for u in chosen:
                val = (val << 1) | ((rv >> u) & 1)
            scored.append((val, v))
        scored.sort()
        unchosen = all_mask
        for v in chosen:
            unchosen &= ~(1 << v)
        reps: list[tuple[int, int]] = []
        for val, v in scored:
            if val > best[depth]:
                break
            # interchangeable with an explored sibling: identical prefix bits
            # and identical adjacency to the rest, so the subtree repeats
            skip = False
            for rval, r in reps:
                if rval == val and not (
                    (rows[v] ^ rows[r]) & unchosen & ~(1 << v) & ~(1 << r)
                ):
                    skip = True
                    break
            if skip:
                continue
            reps.append((val, v))
            if val < best[depth]:
                best[depth] = val
                for t in range(depth + 1, n):
                    best[t] = _INF
            used[v] = True
            chosen.append(v)
            dfs(depth + 1)
            chosen.pop()
            used[v] = False

    dfs(0)
    mask = 0
    base = 0
    for k in range(n):
        val = best[k]
        for i in range(k):
            if (val >> (k - 1 - i)) & 1:
                mask |= 1 << (base + i)
        base += k
    return mask


def _fingerprint(n: int, rows: tuple[int, ...]) -> bytes:
    colour = _refine_colours(n, rows)
    per_vertex = sorted(
        (colour[v], tuple(sorted(colour[u] for u in _iter_bits(rows[v]))))
        for v in range(n)
    )
    payload = repr((n, sum(r.bit_count() for r in rows) // 2, per_vertex))
    return hashlib.sha256(payload.encode("ascii")).digest()


def canonical_key(g: Multigraph) -> bytes:
    """Opaque key of g's underlying simple graph, invariant under relabelling.

    Equal keys are guaranteed for isomorphic graphs; distinct keys imply
    non-isomorphic graphs. Exact up to EXACT_ORDER_LIMIT vertices.
    """
    rows = g.adjacency_rows()
    n = len(rows)
    if n <= EXACT_ORDER_LIMIT:
        mask = canonical_mask(n, rows)
        nbytes = max(1, (n * (n - 1) // 2 + 7) // 8)
        return b"C" + bytes([n]) + mask.to_bytes(nbytes, "big")
    return b"F" + n.to_bytes(4, "big") + _fingerprint(n, rows)


def _isomorphic_rows(n: int, rows_a: tuple[int, ...], rows_b: tuple[int, ...]) -> bool:
    if sorted(r.bit_count() for r in rows_a) != sorted(r.bit_count() for r in rows_b):
        return False
    ca = _refine_colours(n, rows_a)
    cb = _refine_colours(n, rows_b)
    if sorted(ca) != sorted(cb):
        return False
    order = sorted(range(n), key=lambda v: (ca[v], v))
    cand: list[list[int]] = [[u for u in range(n) if cb[u] == ca[v]] for v in order]
    mapping = [-1] * n
    used = [False] * n

    def backtrack(k: int) -> bool:
        if k == n:
            return True
        v = order[k]
        rv = rows_a[v]
        for u in cand[k]:
            if used[u]:
                continue
            ok = True
            for j in range(k):
                w = order[j]
                if ((rv >> w) & 1) != ((rows_b[u] >> mapping[w]) & 1):
                    ok = False
                    break
            if ok:
                mapping[v] = u
                used[u] = True
                if backtrack(k + 1):
                    return True
                used[u] = False
                mapping[v] = -1
        return False

    return backtrack(0)


def is_isomorphic(g: Multigraph, h: Multigraph) -> bool:
    """Whether the underlying simple graphs are isomorphic (multiplicities ignored)."""
    if g.order != h.order or g.edge_count != h.edge_count:
        return False
    n = g.order
    if n <= EXACT_ORDER_LIMIT:
        return canonical_mask(n, g.adjacency_rows()) == canonical_mask(n, h.adjacency_rows())
    return _isomorphic_rows(n, g.adjacency_rows(), h.adjacency_rows())
