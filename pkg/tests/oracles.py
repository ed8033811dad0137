"""Slow, obviously-correct reference implementations used only by tests."""

from __future__ import annotations

from itertools import combinations, permutations
from typing import Iterator, Sequence


def set_partitions(items: Sequence[int]) -> Iterator[list[list[int]]]:
    """Every set partition of ``items`` (restricted growth strings)."""
    n = len(items)
    labels = [0] * n

    def rec(i: int, top: int) -> Iterator[list[list[int]]]:
        if i == n:
            groups: list[list[int]] = [[] for _ in range(top)]
            for x, g in zip(items, labels):
                groups[g].append(x)
            yield groups
            return
        for g in range(top + 1):
            labels[i] = g
            yield from rec(i + 1, max(top, g + 1))

    yield from rec(0, 0)


def spectrum_by_partitions(order: int, blocks: Sequence[Sequence[int]]) -> tuple[set[int], int]:
    """Feasible class counts over all partitions of 1..order; also the number of partitions seen."""
    feasible = set()
    seen = 0
    for groups in set_partitions(list(range(1, order + 1))):
        seen += 1
        col = {}
        for c, g in enumerate(groups):
            for p in g:
                col[p] = c
        if all(len({col[a], col[b], col[c]}) == 2 for a, b, c in blocks):
            feasible.add(len(groups))
    return feasible, seen


def pairs_covered_once(order: int, blocks: Sequence[Sequence[int]]) -> bool:
    count = {p: 0 for p in combinations(range(1, order + 1), 2)}
    for b in blocks:
        if len(set(b)) != 3:
            return False
        for p in combinations(sorted(b), 2):
            if p not in count:
                return False
            count[p] += 1
    return all(c == 1 for c in count.values())


def perfect_matchings(points: Sequence[int]) -> list[tuple[tuple[int, int], ...]]:
    """All perfect matchings of the complete graph on ``points``."""
    if not points:
        return [()]
    first, rest = points[0], points[1:]
    out = []
    for j, partner in enumerate(rest):
        for m in perfect_matchings(rest[:j] + rest[j + 1 :]):
            out.append(((first, partner),) + m)
    return out


def ordered_one_factorizations(points: Sequence[int]) -> tuple[list[tuple[tuple[int, int], ...]], list[tuple[int, ...]]]:
    """All perfect matchings, and every sequence of ``len(points) - 1`` edge-disjoint
    ones (all orders) as tuples of indices into that list."""
    ms = perfect_matchings(list(points))
    need = len(points) - 1
    out = []

    def rec(chosen: list[int], used: set[tuple[int, int]]) -> None:
        if len(chosen) == need:
            out.append(tuple(chosen))
            return
        for i, m in enumerate(ms):
            if i not in chosen and not used.intersection(m):
                rec(chosen + [i], used | set(m))

    rec([], set())
    return ms, out


def extension_exists(
    v: int,
    color: dict[int, int],
    matchings: Sequence[Sequence[tuple[int, int]]],
    factorizations: Sequence[Sequence[int]],
) -> bool:
    """Try every ordered factorization against the two-color condition, no pruning.

    ``ok[i][m]`` just tabulates the condition for old point ``i`` and matching ``m``.
    """
    ok = [
        [all(len({color[i], color[a], color[b]}) == 2 for a, b in m) for m in matchings]
        for i in range(1, v + 1)
    ]
    return any(all(ok[i][m] for i, m in enumerate(f)) for f in factorizations)
