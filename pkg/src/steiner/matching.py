"""Perfect matchings in small general graphs.

Graphs here are adjacency bitmasks over vertices ``0..n-1``: bit ``j`` of
``adj[i]`` is set iff ``{i, j}`` is an edge.  The allowed-edge graphs that
show up in extension search are not bipartite, so existence is decided with
Edmonds' blossom algorithm rather than a bipartite method.
"""

from __future__ import annotations

import random
from collections import deque
from typing import Iterator, Sequence


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _augment(adj: Sequence[int], mate: list[int], root: int) -> bool:
    """Grow an alternating tree from ``root``; flip the first augmenting path found."""
    n = len(adj)
    parent = [-1] * n
    base = list(range(n))
    used = [False] * n
    used[root] = True
    queue = deque([root])

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if mate[a] == -1:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[mate[b]]

    def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
        while base[v] != b:
            blossom[base[v]] = blossom[base[mate[v]]] = True
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    while queue:
        v = queue.popleft()
        for to in bits(adj[v]):
            if base[v] == base[to] or mate[v] == to:
                continue
            if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                # odd cycle: contract the blossom onto its base
                cur = lca(v, to)
                blossom = [False] * n
                mark_path(v, cur, to, blossom)
                mark_path(to, cur, v, blossom)
                for i in range(n):
                    if blossom[base[i]]:
                        base[i] = cur
                        if not used[i]:
                            used[i] = True
                            queue.append(i)
            elif parent[to] == -1:
                parent[to] = v
                if mate[to] == -1:
                    while to != -1:
                        pv = parent[to]
                        nxt = mate[pv]
                        mate[to], mate[pv] = pv, to
                        to = nxt
                    return True
                used[mate[to]] = True
                queue.append(mate[to])
    return False


def maximum_matching(adj: Sequence[int]) -> list[int]:
    """Maximum-cardinality matching as a ``mate`` list (-1 = unmatched)."""
    n = len(adj)
    mate = [-1] * n
    for u in range(n):
        if mate[u] == -1:
            for w in bits(adj[u] & ~(1 << u)):
                if mate[w] == -1:
                    mate[u], mate[w] = w, u
                    break
    for root in range(n):
        if mate[root] == -1:
            _augment(adj, mate, root)
    return mate


def has_perfect_matching(adj: Sequence[int]) -> bool:
    n = len(adj)
    if n % 2:
        return False
    if any(a == 0 for a in adj):
        return False
    return all(m != -1 for m in maximum_matching(adj))


def iter_perfect_matchings(
    adj: Sequence[int],
    rng: random.Random | None = None,
) -> Iterator[list[tuple[int, int]]]:
    """Yield every perfect matching of the graph as a list of ``(u, w)`` with ``u < w``.

    The next vertex to match is the unmatched one with the fewest available
    partners (ties to the lowest index); partners are tried in ascending order
    unless ``rng`` is given, in which case they are shuffled.
    """
    n = len(adj)
    if n % 2:
        return
    full = (1 << n) - 1
    chosen: list[tuple[int, int]] = []

    def rec(free: int) -> Iterator[list[tuple[int, int]]]:
        if not free:
            yield list(chosen)
            return
        best, best_opts, best_cnt = -1, 0, n + 1
        for u in bits(free):
            opts = adj[u] & free & ~(1 << u)
            cnt = opts.bit_count()
            if cnt < best_cnt:
                best, best_opts, best_cnt = u, opts, cnt
                if cnt <= 1:
                    break
        if best_cnt == 0:
            return
        partners = list(bits(best_opts))
        if rng is not None:
            rng.shuffle(partners)
        rest = free & ~(1 << best)
        for w in partners:
            chosen.append((best, w) if best < w else (w, best))
            yield from rec(rest & ~(1 << w))
            chosen.pop()

    yield from rec(full)


def adjacency_from_edges(n: int, edges: Sequence[tuple[int, int]]) -> list[int]:
    adj = [0] * n
    for a, b in edges:
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    return adj
