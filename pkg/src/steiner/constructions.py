"""Concrete triple systems, one-factorizations, and the doubling construction."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .design import (
    MalformedInputError,
    Pair,
    TripleSystem,
    VerificationReport,
    is_admissible,
    make_pair,
    validate_sts,
)


class ConstructionError(ValueError):
    """Parameters that a construction refuses before building anything."""


# --------------------------------------------------------------------------
# Triple systems


def cyclic_sts(v: int, base_blocks: Iterable[Sequence[int]]) -> TripleSystem:
    """Develop ``base_blocks`` modulo ``v`` and relabel residue ``x`` as point ``x + 1``.

    Blocks that repeat under development (short orbits such as ``{0, v/3, 2v/3}``)
    are kept once.  The result is not checked; run :func:`validate_sts` on it.
    """
    if not is_admissible(v):
        raise ConstructionError(f"order {v} is not admissible (need v = 1 or 3 mod 6)")
    blocks: set[tuple[int, int, int]] = set()
    for base in base_blocks:
        if len(set(x % v for x in base)) != 3:
            raise ConstructionError(f"base block {tuple(base)} does not have 3 distinct residues mod {v}")
        for shift in range(v):
            a, b, c = sorted((x + shift) % v + 1 for x in base)
            blocks.add((a, b, c))
    return TripleSystem(v, blocks)


def bose(v: int) -> TripleSystem:
    """Bose construction for ``v = 6n + 3``.

    Uses the idempotent commutative quasigroup ``x o y = (n + 1)(x + y) mod 2n + 1``
    on ``Z_{2n+1}``.  Point ``(x, i)`` with ``x`` in ``Z_{2n+1}`` and level ``i`` in
    ``{0, 1, 2}`` gets label ``x + i(2n + 1) + 1``.
    """
    if v < 3 or v % 6 != 3:
        raise ConstructionError(f"bose needs v = 3 mod 6, got {v} (= {v % 6} mod 6)")
    m = v // 3
    half = (m + 1) // 2

    def label(x: int, i: int) -> int:
        return x + (i % 3) * m + 1

    blocks = [(label(x, 0), label(x, 1), label(x, 2)) for x in range(m)]
    for i in range(3):
        for x, y in combinations(range(m), 2):
            blocks.append((label(x, i), label(y, i), label(half * (x + y) % m, i + 1)))
    return TripleSystem(v, blocks)


def skolem(v: int) -> TripleSystem:
    """Skolem construction for ``v = 6n + 1``.

    Uses the half-idempotent commutative quasigroup on ``Z_{2n}`` obtained from
    addition mod ``2n`` by renaming ``2k -> k`` and ``2k + 1 -> n + k``.  Point
    ``(x, i)`` gets label ``x + 2n*i + 1`` and the extra point is ``v``.
    """
    if v < 7 or v % 6 != 1:
        raise ConstructionError(f"skolem needs v = 1 mod 6 with v >= 7, got {v} (= {v % 6} mod 6)")
    n = (v - 1) // 6
    m = 2 * n
    inf = v

    def label(x: int, i: int) -> int:
        return x + (i % 3) * m + 1

    def op(x: int, y: int) -> int:
        s = (x + y) % m
        return s // 2 if s % 2 == 0 else n + s // 2

    blocks = [(label(x, 0), label(x, 1), label(x, 2)) for x in range(n)]
    for i in range(3):
        for x in range(n):
            blocks.append((inf, label(x + n, i), label(x, i + 1)))
        for x, y in combinations(range(m), 2):
            blocks.append((label(x, i), label(y, i), label(op(x, y), i + 1)))
    return TripleSystem(v, blocks)


# --------------------------------------------------------------------------
# One-factorizations


@dataclass(frozen=True)
class OneFactorization:
    """One factor of ``K_{hi-lo+1}`` on ``lo..hi`` per old point.

    ``factors[i - 1]`` is the factor joined to old point ``i``.  Edges are stored
    as ascending pairs, each factor sorted; nothing beyond point range is
    checked here, see :func:`validate_one_factorization`.
    """

    lo: int
    hi: int
    factors: tuple[tuple[Pair, ...], ...]

    def __init__(self, lo: int, hi: int, factors: Iterable[Iterable[Sequence[int]]]):
        if hi < lo:
            raise MalformedInputError(f"empty point range {lo}..{hi}")
        canon = []
        for idx, factor in enumerate(factors, start=1):
            edges = []
            for e in factor:
                a, b = e
                if a == b:
                    raise MalformedInputError(f"factor {idx} has a loop at {a}", idx)
                if not (lo <= a <= hi and lo <= b <= hi):
                    raise MalformedInputError(f"factor {idx} edge {a}-{b} leaves {lo}..{hi}", idx)
                edges.append(make_pair(a, b))
            canon.append(tuple(sorted(edges)))
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "factors", tuple(canon))

    @property
    def points(self) -> range:
        return range(self.lo, self.hi + 1)

    @property
    def v(self) -> int:
        return len(self.factors)

    def factor(self, i: int) -> tuple[Pair, ...]:
        """Factor joined to old point ``i`` (1-based)."""
        return self.factors[i - 1]

    def edges(self) -> Iterable[tuple[int, Pair]]:
        for i, factor in enumerate(self.factors, start=1):
            for e in factor:
                yield i, e


def round_robin_factorization(lo: int, hi: int) -> OneFactorization:
    """Circle-method factorization of ``K_m`` on ``lo..hi`` (``m`` even).

    Point ``hi`` stays fixed; in round ``r`` it meets ``lo + r`` and the other
    points pair up as ``r + j, r - j`` modulo ``m - 1``.  Round ``r`` becomes
    factor ``r + 1``.
    """
    m = hi - lo + 1
    if m < 2 or m % 2:
        raise ConstructionError(f"round robin needs an even number of points, {lo}..{hi} has {m}")
    ring = m - 1
    factors = []
    for r in range(ring):
        edges = [(lo + r, hi)]
        for j in range(1, m // 2):
            edges.append((lo + (r + j) % ring, lo + (r - j) % ring))
        factors.append(edges)
    return OneFactorization(lo, hi, factors)


def validate_one_factorization(f: OneFactorization) -> VerificationReport:
    """Every factor a perfect matching, factors edge-disjoint, all edges covered."""
    pts = set(f.points)
    not_perfect = []
    owners: dict[Pair, list[int]] = {}
    for i, factor in enumerate(f.factors, start=1):
        hits = Counter(p for e in factor for p in e)
        repeated = sorted(p for p, c in hits.items() if c > 1)
        missed = sorted(pts - hits.keys())
        if repeated or missed:
            not_perfect.append({"factor": i, "repeated": repeated, "missing": missed})
        for e in factor:
            owners.setdefault(e, []).append(i)
    duplicated = sorted((e, fs) for e, fs in owners.items() if len(fs) > 1)
    missing = [e for e in combinations(f.points, 2) if e not in owners]
    m = len(pts)
    return VerificationReport.from_issues(
        f"one-factorization {f.lo}..{f.hi}",
        {
            "wrong_factor_count": [] if f.v == m - 1 else [(f.v, m - 1)],
            "not_perfect": not_perfect,
            "duplicated_edges": duplicated,
            "missing_edges": missing,
        },
        factors=f.v,
        edges=sum(len(x) for x in f.factors),
        expected_edges=m * (m - 1) // 2,
    )


# --------------------------------------------------------------------------
# Doubling


def doubling(base: TripleSystem, f: OneFactorization) -> TripleSystem:
    """STS(2v+1) from an STS(v) on ``1..v`` and a factorization on ``v+1..2v+1``.

    Adds the triple ``{i, a, b}`` for every edge ``{a, b}`` of the factor of old
    point ``i``.
    """
    v = base.order
    if f.v != v:
        raise ConstructionError(f"factorization has {f.v} factors, base order is {v}")
    if (f.lo, f.hi) != (v + 1, 2 * v + 1):
        raise ConstructionError(f"factorization lives on {f.lo}..{f.hi}, expected {v + 1}..{2 * v + 1}")
    rep = validate_sts(base)
    if not rep:
        raise ConstructionError(f"base is not a Steiner triple system: {rep.summary()}")
    rep = validate_one_factorization(f)
    if not rep:
        raise ConstructionError(f"not a one-factorization: {rep.summary()}")
    induced = [(i, a, b) for i, (a, b) in f.edges()]
    return TripleSystem(2 * v + 1, list(base.blocks) + induced)
