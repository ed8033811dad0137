from __future__ import annotations

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import pairs_covered_once
from steiner import (
    FOUND,
    ColorPartition,
    ExtensionProblem,
    OneFactorization,
    TripleSystem,
    bose,
    check_bicoloring,
    doubling,
    format_classes,
    format_factorization,
    format_sts,
    parse_classes,
    parse_factorization,
    parse_sts,
    round_robin_factorization,
    search_extension,
    skolem,
    validate_one_factorization,
    validate_sts,
    verify_extension,
)

BASES = {3: bose(3), 7: skolem(7), 9: bose(9), 13: skolem(13)}


def _perm(n: int, seed: int) -> list[int]:
    p = list(range(1, n + 1))
    random.Random(seed).shuffle(p)
    return p


@st.composite
def doubling_inputs(draw):
    v = draw(st.sampled_from(sorted(BASES)))
    perm = _perm(v, draw(st.integers(0, 10**6)))
    base = BASES[v].relabel({i + 1: p for i, p in enumerate(perm)})
    rr = round_robin_factorization(v + 1, 2 * v + 1)
    rng = random.Random(draw(st.integers(0, 10**6)))
    pts = list(rr.points)
    img = pts[:]
    rng.shuffle(img)
    mp = dict(zip(pts, img))
    factors = [[(mp[a], mp[b]) for a, b in f] for f in rr.factors]
    rng.shuffle(factors)
    return base, OneFactorization(v + 1, 2 * v + 1, factors)


@settings(max_examples=60, deadline=None)
@given(doubling_inputs())
def test_doubling_always_valid(inputs):
    base, f = inputs
    assert validate_one_factorization(f)
    big = doubling(base, f)
    assert validate_sts(big)
    assert pairs_covered_once(big.order, big.blocks)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(sorted(BASES)), st.integers(0, 10**6))
def test_validation_agrees_with_oracle_after_block_swap(v, seed):
    rng = random.Random(seed)
    blocks = [list(b) for b in BASES[v].blocks]
    # perturb one block by one point; validity must match the brute-force oracle
    b = rng.randrange(len(blocks))
    slot = rng.randrange(3)
    cand = rng.randint(1, v)
    if cand not in blocks[b]:
        blocks[b][slot] = cand
    if len({tuple(sorted(x)) for x in blocks}) != len(blocks):
        return
    ts = TripleSystem(v, blocks)
    assert validate_sts(ts).passed == pairs_covered_once(v, ts.blocks)


@st.composite
def partitions(draw, max_n=30):
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(1, n))
    colors = list(range(1, k + 1)) + draw(st.lists(st.integers(1, k), min_size=n - k, max_size=n - k))
    random.Random(draw(st.integers(0, 10**6))).shuffle(colors)
    return ColorPartition.from_colors(colors)


@settings(max_examples=80, deadline=None)
@given(partitions())
def test_classes_round_trip(p):
    assert parse_classes(format_classes(p)) == p


@settings(max_examples=40, deadline=None)
@given(doubling_inputs())
def test_sts_and_fac_round_trip(inputs):
    base, f = inputs
    assert parse_sts(format_sts(base)) == base
    assert parse_factorization(format_factorization(f)) == f


@settings(max_examples=40, deadline=None)
@given(partitions(max_n=13), st.integers(0, 10**6))
def test_bicoloring_invariant_under_relabeling(p, seed):
    if p.order not in (3, 7, 9, 13):
        return
    ts = BASES[p.order]
    perm = _perm(p.order, seed)
    mp = {i + 1: q for i, q in enumerate(perm)}
    assert check_bicoloring(ts, p).passed == check_bicoloring(ts.relabel(mp), p.relabel(mp)).passed
    reordered = ColorPartition(p.order, reversed(p.classes))
    assert check_bicoloring(ts, p).passed == check_bicoloring(ts, reordered).passed


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.integers(0, 10**6), st.integers(0, 5))
def test_search_certificates_are_sound(k, seed, search_seed):
    rng = random.Random(seed)
    v = 7
    colors = list(range(1, k + 1)) + [rng.randint(1, k) for _ in range(v - k)]
    rng.shuffle(colors)
    base = ColorPartition.from_colors(colors)
    problem = ExtensionProblem(v, base, tuple(rng.randint(1, k) for _ in range(v + 1)))
    res = search_extension(problem, budget=20_000, seed=search_seed)
    if res.status == FOUND:
        assert verify_extension(res.certificate)
    else:
        assert res.certificate is None
