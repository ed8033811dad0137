"""Extending a bicoloring of STS(v) to the doubled STS(2v+1) without new colors.

An extension problem fixes the colors of the old points ``1..v`` and of the
new points ``v+1..2v+1``.  A certificate is a one-factorization of the new
points in which every edge ``{a, b}`` of the factor joined to old point ``i``
makes ``{i, a, b}`` two-colored.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .coloring import DEFAULT_BUDGET, ColorPartition, color_profile
from .constructions import OneFactorization, validate_one_factorization
from .design import Pair, TripleSystem, VerificationReport, is_admissible
from .matching import bits, has_perfect_matching, iter_perfect_matchings

FOUND = "found"
INFEASIBLE = "infeasible"
UNKNOWN = "unknown"


class ExtensionError(ValueError):
    pass


@dataclass(frozen=True)
class ExtensionProblem:
    """A colored STS(v) base plus colors for the ``v + 1`` new points.

    ``new_colors[j]`` is the class index (1-based, one of the base classes) of
    new point ``v + 1 + j``.
    """

    v: int
    base_coloring: ColorPartition
    new_colors: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.base_coloring.order != self.v:
            raise ExtensionError(f"base coloring has order {self.base_coloring.order}, expected {self.v}")
        if len(self.new_colors) != self.v + 1:
            raise ExtensionError(f"need colors for {self.v + 1} new points, got {len(self.new_colors)}")
        k = self.base_coloring.k
        bad = [self.v + 1 + j for j, c in enumerate(self.new_colors) if not 1 <= c <= k]
        if bad:
            raise ExtensionError(f"new points {bad} use a class outside 1..{k}")
        object.__setattr__(self, "new_colors", tuple(self.new_colors))

    @classmethod
    def from_merged(cls, merged: ColorPartition, v: int) -> "ExtensionProblem":
        """Split a partition of ``1..2v+1`` into base coloring and new-point colors."""
        if merged.order != 2 * v + 1:
            raise ExtensionError(f"partition has order {merged.order}, expected {2 * v + 1} for v={v}")
        empty = [i for i, c in enumerate(merged.classes, start=1) if c[0] > v]
        if empty:
            raise ExtensionError(f"classes {empty} contain no old point; extensions may not add colors")
        base = ColorPartition(v, ([p for p in c if p <= v] for c in merged.classes))
        return cls(v, base, tuple(merged.color_of[v + 1 :]))

    @property
    def k(self) -> int:
        return self.base_coloring.k

    @property
    def new_points(self) -> range:
        return range(self.v + 1, 2 * self.v + 2)

    def merged(self) -> ColorPartition:
        classes = [list(c) for c in self.base_coloring.classes]
        for j, c in enumerate(self.new_colors):
            classes[c - 1].append(self.v + 1 + j)
        return ColorPartition(2 * self.v + 1, classes)

    def color(self, point: int) -> int:
        if point <= self.v:
            return self.base_coloring.color(point)
        return self.new_colors[point - self.v - 1]


@dataclass(frozen=True)
class ExtensionCertificate:
    problem: ExtensionProblem
    factorization: OneFactorization


@dataclass
class ExtensionResult:
    status: str
    certificate: ExtensionCertificate | None
    nodes: int

    @property
    def found(self) -> bool:
        return self.status == FOUND


def _two_colored(c: int, ca: int, cb: int) -> bool:
    return len({c, ca, cb}) == 2


def allowed_edges(c: int, problem: ExtensionProblem) -> set[Pair]:
    """New-point pairs ``{a, b}`` that may sit in a factor joined to a class-``c`` point."""
    if not 1 <= c <= problem.k:
        raise ExtensionError(f"class {c} is outside 1..{problem.k}")
    col = problem.color
    return {(a, b) for a, b in combinations(problem.new_points, 2) if _two_colored(c, col(a), col(b))}


def verify_extension(cert: ExtensionCertificate) -> VerificationReport:
    """Check the factorization and the two-color condition on every induced triple."""
    prob, f = cert.problem, cert.factorization
    if f.v != prob.v:
        raise ExtensionError(f"factorization has {f.v} factors, expected {prob.v}")
    if (f.lo, f.hi) != (prob.v + 1, 2 * prob.v + 1):
        raise ExtensionError(f"factorization lives on {f.lo}..{f.hi}, expected {prob.v + 1}..{2 * prob.v + 1}")
    fac = validate_one_factorization(f)
    merged = prob.merged()
    violations = []
    patterns: dict[tuple[int, int], int] = {}
    for i, (a, b) in f.edges():
        prof = color_profile((i, a, b), merged)
        if prof != 2:
            violations.append({"point": i, "edge": (a, b), "profile": prof})
            continue
        cols = [merged.color_of[x] for x in (i, a, b)]
        doubled = next(c for c in cols if cols.count(c) == 2)
        single = next(c for c in cols if cols.count(c) == 1)
        patterns[(doubled, single)] = patterns.get((doubled, single), 0) + 1
    issues = dict(fac.issues)
    issues["profile_violations"] = violations
    return VerificationReport.from_issues(
        f"extension v={prob.v} k={prob.k}",
        issues,
        induced_triples=sum(len(x) for x in f.factors),
        edges=fac.stats["edges"],
        class_sizes=merged.sizes(),
        patterns=dict(sorted(patterns.items())),
    )


# --------------------------------------------------------------------------
# Search


class _OutOfBudget(Exception):
    pass


def _edge_type(ca: int, cb: int) -> tuple[int, int]:
    return (ca, cb) if ca <= cb else (cb, ca)


class _CoverSearch:
    """Exact cover: every new-point edge gets one old point, and every old point
    meets every new point exactly once.

    Options are ``(a, b, i)``: edge ``{a, b}`` (vertex indices, new point
    ``v + 1 + a``) joined to old point ``i``, present only when ``{i, a, b}`` is
    two-colored.  Branching follows Algorithm X on the item with the fewest
    live options (ties to the smallest item).  Two prunes run after each
    choice: the chosen point's remaining allowed graph must still have a
    perfect matching, and the edge-type counts must be reachable (below).
    """

    def __init__(self, problem: ExtensionProblem, budget: int):
        self.problem = problem
        self.budget = budget
        self.nodes = 0
        v = problem.v
        m = v + 1
        self.v, self.m, self.k = v, m, problem.k
        ncol = problem.new_colors
        col = problem.base_coloring.color_of
        self.ncol, self.col = ncol, col
        X: dict[tuple, set[tuple[int, int, int]]] = {}
        Y: dict[tuple[int, int, int], tuple[tuple, ...]] = {}
        adj = {i: [0] * m for i in range(1, v + 1)}
        for a, b in combinations(range(m), 2):
            X[("e", a, b)] = set()
        for u in range(m):
            for i in range(1, v + 1):
                X[("v", u, i)] = set()
        for a, b in combinations(range(m), 2):
            for i in range(1, v + 1):
                if _two_colored(col[i], ncol[a], ncol[b]):
                    r = (a, b, i)
                    Y[r] = (("e", a, b), ("v", a, i), ("v", b, i))
                    for j in Y[r]:
                        X[j].add(r)
                    adj[i][a] |= 1 << b
                    adj[i][b] |= 1 << a
        self.X, self.Y, self.adj = X, Y, adj
        self.uncovered = {i: (1 << m) - 1 for i in range(1, v + 1)}
        k = problem.k
        self.cmask = [0] * (k + 1)
        for j in range(m):
            self.cmask[ncol[j]] |= 1 << j
        self.types = [(d, e) for d in range(1, k + 1) for e in range(d, k + 1)]
        self.tindex = {t: n for n, t in enumerate(self.types)}
        self.remaining_by_type = [0] * len(self.types)
        for a, b in combinations(range(m), 2):
            self.remaining_by_type[self.tindex[_edge_type(ncol[a], ncol[b])]] += 1
        self._bounds_memo: dict[tuple[int, tuple[int, ...]], tuple[list[int], list[int]] | None] = {}

    # Algorithm X bookkeeping; adjacency bits mirror the live options
    def select(self, r: tuple[int, int, int]) -> list[set]:
        X, Y, adj = self.X, self.Y, self.adj
        cols = []
        for j in Y[r]:
            for o in X[j]:
                a, b, i = o
                adj[i][a] &= ~(1 << b)
                adj[i][b] &= ~(1 << a)
                for k in Y[o]:
                    if k != j:
                        X[k].remove(o)
            cols.append(X.pop(j))
        a, b, i = r
        self.uncovered[i] &= ~((1 << a) | (1 << b))
        self.remaining_by_type[self.tindex[_edge_type(self.ncol[a], self.ncol[b])]] -= 1
        return cols

    def deselect(self, r: tuple[int, int, int], cols: list[set]) -> None:
        X, Y, adj = self.X, self.Y, self.adj
        a, b, i = r
        self.uncovered[i] |= (1 << a) | (1 << b)
        self.remaining_by_type[self.tindex[_edge_type(self.ncol[a], self.ncol[b])]] += 1
        for j in reversed(Y[r]):
            X[j] = cols.pop()
            for o in X[j]:
                oa, ob, oi = o
                adj[oi][oa] |= 1 << ob
                adj[oi][ob] |= 1 << oa
                for k in Y[o]:
                    if k != j:
                        X[k].add(o)

    def matchable(self, i: int) -> bool:
        """Perfect matching on the vertices point ``i`` still has to meet."""
        free = self.uncovered[i]
        if not free:
            return True
        verts = list(bits(free))
        pos = {u: n for n, u in enumerate(verts)}
        g = []
        for u in verts:
            mask = 0
            for w in bits(self.adj[i][u]):
                mask |= 1 << pos[w]
            g.append(mask)
        return has_perfect_matching(g)

    def _type_bounds(self, c: int, u: tuple[int, ...]) -> tuple[list[int], list[int]] | None:
        """Min and max number of edges of each type a class-``c`` point can still take.

        ``u[d]`` counts the class-``d`` vertices the point has not met yet.  Its
        remaining factor joins all class-``c`` vertices to ``x_d`` vertices of
        each other class ``d`` and pairs the other ``u[d] - x_d`` inside class
        ``d``, so ``x_d`` has the parity of ``u[d]`` and the ``x_d`` sum to ``u[c]``.
        """
        key = (c, u)
        if key in self._bounds_memo:
            return self._bounds_memo[key]
        nt = len(self.types)
        lo = [1 << 30] * nt
        hi = [-1] * nt
        others = [d for d in range(1, self.k + 1) if d != c]
        xs = [0] * len(others)

        def rec(n: int, left: int) -> None:
            if n == len(others):
                if left:
                    return
                comp = [0] * nt
                for d, x in zip(others, xs):
                    comp[self.tindex[_edge_type(c, d)]] += x
                    comp[self.tindex[(d, d)]] += (u[d] - x) // 2
                for t in range(nt):
                    if comp[t] < lo[t]:
                        lo[t] = comp[t]
                    if comp[t] > hi[t]:
                        hi[t] = comp[t]
                return
            d = others[n]
            for x in range(u[d] % 2, min(u[d], left) + 1, 2):
                xs[n] = x
                rec(n + 1, left - x)

        rec(0, u[c])
        out = (lo, hi) if hi[0] >= 0 else None
        self._bounds_memo[key] = out
        return out

    def counts_ok(self) -> bool:
        """Each edge type's remaining count lies between what the points can minimally and maximally absorb."""
        nt = len(self.types)
        lo_sum = [0] * nt
        hi_sum = [0] * nt
        for i in range(1, self.v + 1):
            free = self.uncovered[i]
            if not free:
                continue
            u = (0,) + tuple((free & self.cmask[d]).bit_count() for d in range(1, self.k + 1))
            bd = self._type_bounds(self.col[i], u)
            if bd is None:
                return False
            lo, hi = bd
            for t in range(nt):
                lo_sum[t] += lo[t]
                hi_sum[t] += hi[t]
        rem = self.remaining_by_type
        return all(lo_sum[t] <= rem[t] <= hi_sum[t] for t in range(nt))

    def root_ok(self) -> bool:
        return self.counts_ok() and all(self.matchable(i) for i in range(1, self.v + 1))

    def choose_item(self) -> tuple:
        X = self.X
        return min(X, key=lambda c: (len(X[c]), c))

    def branch_options(self, rng: random.Random | None) -> list[tuple[int, int, int]]:
        opts = sorted(self.X[self.choose_item()])
        if rng is not None:
            rng.shuffle(opts)
        return opts

    def try_option(self, r: tuple[int, int, int]) -> list[set] | None:
        """Select ``r``; return the undo record, or None (already undone) if pruned."""
        self.nodes += 1
        if self.nodes > self.budget:
            raise _OutOfBudget
        cols = self.select(r)
        if self.counts_ok() and self.matchable(r[2]):
            return cols
        self.deselect(r, cols)
        return None

    def run(self, chosen: list[tuple[int, int, int]], rng: random.Random | None) -> bool:
        if not self.X:
            return True
        for r in self.branch_options(rng):
            cols = self.try_option(r)
            if cols is None:
                continue
            chosen.append(r)
            if self.run(chosen, rng):
                return True
            chosen.pop()
            self.deselect(r, cols)
        return False

    def certificate(self, chosen: Iterable[tuple[int, int, int]]) -> ExtensionCertificate:
        base = self.v + 1
        factors: dict[int, list[tuple[int, int]]] = {i: [] for i in range(1, self.v + 1)}
        for a, b, i in chosen:
            factors[i].append((a + base, b + base))
        f = OneFactorization(base, 2 * self.v + 1, (factors[i] for i in range(1, self.v + 1)))
        return ExtensionCertificate(self.problem, f)


class _FactorSearch:
    """Backtracking over old points; each step picks a perfect matching of the
    remaining edges that is allowed for the point's class.

    Old points are taken class by class, the class with the fewest allowed
    edges first (ties to the lowest label).  New point ``v + 1 + j`` is vertex
    ``j``.  Old points of one class are interchangeable, so consecutive points
    of a class take factors whose partner of vertex 0 increases.
    """

    def __init__(self, problem: ExtensionProblem, budget: int):
        self.problem = problem
        self.budget = budget
        self.nodes = 0
        v = problem.v
        m = v + 1
        self.m = m
        ncol = problem.new_colors
        # allowed[c][j]: neighbors of vertex j usable by a class-c old point
        self.allowed: dict[int, list[int]] = {}
        for c in range(1, problem.k + 1):
            adj = [0] * m
            for a, b in combinations(range(m), 2):
                if _two_colored(c, ncol[a], ncol[b]):
                    adj[a] |= 1 << b
                    adj[b] |= 1 << a
            self.allowed[c] = adj
        col = problem.base_coloring.color_of
        self.col = col
        members = {c: [i for i in range(1, v + 1) if col[i] == c] for c in self.allowed}
        edge_count = {c: sum(a.bit_count() for a in self.allowed[c]) // 2 for c in members}
        self.color_order = sorted(members, key=lambda c: (edge_count[c], members[c][0]))
        self.order = [i for c in self.color_order for i in members[c]]
        full = (1 << m) - 1
        self.rem = [full & ~(1 << j) for j in range(m)]
        self.left = {c: len(members[c]) for c in members}

    def feasible(self) -> bool:
        """Every live class still has a perfect matching, and at every vertex the
        remaining edges can be shared out among the remaining points (Hall)."""
        rem, left = self.rem, self.left
        live = [c for c in self.color_order if left[c]]
        if not live:
            return all(r == 0 for r in rem)
        subsets = []
        for size in range(1, len(live) + 1):
            for combo in combinations(live, size):
                subsets.append((combo, sum(left[c] for c in combo)))
        for j in range(self.m):
            rj = rem[j]
            for combo, need in subsets:
                mask = 0
                for c in combo:
                    mask |= self.allowed[c][j]
                if (rj & mask).bit_count() < need:
                    return False
        for c in live:
            if not has_perfect_matching([rem[j] & self.allowed[c][j] for j in range(self.m)]):
                return False
        return True

    def run(self, pos: int, floor: int, chosen: list[list[tuple[int, int]]], rng: random.Random | None) -> bool:
        if pos == len(self.order):
            return True
        rem, left = self.rem, self.left
        c = self.col[self.order[pos]]
        same_next = pos + 1 < len(self.order) and self.col[self.order[pos + 1]] == c
        adj = [rem[j] & self.allowed[c][j] for j in range(self.m)]
        if floor >= 0:
            low = (1 << (floor + 1)) - 1
            for w in bits(adj[0] & low):
                adj[w] &= ~1
            adj[0] &= ~low
        for match in iter_perfect_matchings(adj, rng):
            self.nodes += 1
            if self.nodes > self.budget:
                raise _OutOfBudget
            for a, b in match:
                rem[a] &= ~(1 << b)
                rem[b] &= ~(1 << a)
            left[c] -= 1
            if self.feasible():
                chosen.append(match)
                partner0 = next(b for a, b in match if a == 0)
                if self.run(pos + 1, partner0 if same_next else -1, chosen, rng):
                    return True
                chosen.pop()
            left[c] += 1
            for a, b in match:
                rem[a] |= 1 << b
                rem[b] |= 1 << a
        return False

    def certificate(self, chosen: Sequence[Sequence[tuple[int, int]]]) -> ExtensionCertificate:
        base = self.problem.v + 1
        factors = {i: [(a + base, b + base) for a, b in match] for i, match in zip(self.order, chosen)}
        v = self.problem.v
        f = OneFactorization(base, 2 * v + 1, (factors[i] for i in range(1, v + 1)))
        return ExtensionCertificate(self.problem, f)


def _rng(seed: int, branch: int) -> random.Random | None:
    return None if seed == 0 else random.Random(seed * 1_000_003 + branch)


def _solve_factor(problem: ExtensionProblem, budget: int, seed: int) -> ExtensionResult:
    s = _FactorSearch(problem, budget)
    if not s.feasible():
        return ExtensionResult(INFEASIBLE, None, 0)
    chosen: list[list[tuple[int, int]]] = []
    try:
        ok = s.run(0, -1, chosen, _rng(seed, 0))
    except _OutOfBudget:
        return ExtensionResult(UNKNOWN, None, s.nodes)
    if ok:
        return ExtensionResult(FOUND, s.certificate(chosen), s.nodes)
    return ExtensionResult(INFEASIBLE, None, s.nodes)


def _cover_branches(args: tuple[ExtensionProblem, int, int, int, int]) -> tuple[int, ExtensionResult]:
    """Run the exact-cover search on the root branches ``worker, worker + stride, ...``.

    Branch ``b`` is the ``b``-th option of the first branching item; below it the
    search uses the generator seeded by ``(seed, b + 1)``.  Returns the lowest
    successful branch index (or -1) with its result.
    """
    problem, budget, seed, worker, stride = args
    s = _CoverSearch(problem, budget)
    if not s.root_ok():
        return -1, ExtensionResult(INFEASIBLE, None, 0)
    if not s.X:
        return 0, ExtensionResult(FOUND, s.certificate([]), 0)
    unknown = False
    for b, r in enumerate(s.branch_options(_rng(seed, 0))):
        if b % stride != worker:
            continue
        s.budget = s.nodes + budget
        try:
            cols = s.try_option(r)
            if cols is None:
                continue
            chosen = [r]
            if s.run(chosen, _rng(seed, b + 1)):
                return b, ExtensionResult(FOUND, s.certificate(chosen), s.nodes)
            s.deselect(r, cols)
        except _OutOfBudget:
            unknown = True
            # the tree is left half-built; start the next branch from scratch
            nodes = s.nodes
            s = _CoverSearch(problem, budget)
            s.nodes = nodes
    return -1, ExtensionResult(UNKNOWN if unknown else INFEASIBLE, None, s.nodes)


def _solve_cover(problem: ExtensionProblem, budget: int, seed: int) -> ExtensionResult:
    s = _CoverSearch(problem, budget)
    if not s.root_ok():
        return ExtensionResult(INFEASIBLE, None, 0)
    chosen: list[tuple[int, int, int]] = []
    rng = _rng(seed, 0)
    try:
        ok = s.run(chosen, rng)
    except _OutOfBudget:
        return ExtensionResult(UNKNOWN, None, s.nodes)
    if ok:
        return ExtensionResult(FOUND, s.certificate(chosen), s.nodes)
    return ExtensionResult(INFEASIBLE, None, s.nodes)


def search_extension(
    problem: ExtensionProblem,
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
    *,
    jobs: int = 1,
    strategy: str = "cover",
    restarts: int = 1,
) -> ExtensionResult:
    """Find a certificate, prove there is none, or report ``UNKNOWN`` when the budget runs out.

    ``budget`` counts search nodes (one per tentative choice).  ``INFEASIBLE``
    is only returned after an exhaustive search.  ``seed = 0`` is fully
    deterministic; any other seed shuffles the branching order.

    ``strategy="cover"`` (default) assigns edges to old points as an exact
    cover; ``strategy="factor"`` builds whole factors point by point.  Both
    prune with perfect-matching tests on the remaining allowed edges.

    ``restarts > 1`` with a nonzero seed splits the budget over that many
    attempts with seeds ``seed, seed + 1, ...``.  ``jobs > 1`` (cover only)
    spreads the root branches over processes, each branch with the full
    budget; the lowest successful branch wins, so the answer does not depend
    on scheduling.
    """
    if strategy not in ("cover", "factor"):
        raise ExtensionError(f"unknown strategy {strategy!r}")
    if restarts > 1 and seed != 0:
        per = max(1, budget // restarts)
        nodes = 0
        for attempt in range(restarts):
            res = search_extension(problem, per, seed + attempt, jobs=jobs, strategy=strategy)
            nodes += res.nodes
            if res.status != UNKNOWN:
                return ExtensionResult(res.status, res.certificate, nodes)
        return ExtensionResult(UNKNOWN, None, nodes)
    if strategy == "factor":
        return _solve_factor(problem, budget, seed)
    if jobs <= 1:
        return _solve_cover(problem, budget, seed)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(_cover_branches, [(problem, budget, seed, w, jobs) for w in range(jobs)]))
    nodes = sum(r.nodes for _, r in results)
    found = [(b, r) for b, r in results if r.found]
    if found:
        _, r = min(found, key=lambda t: t[0])
        return ExtensionResult(FOUND, r.certificate, nodes)
    if any(r.status == UNKNOWN for _, r in results):
        return ExtensionResult(UNKNOWN, None, nodes)
    return ExtensionResult(INFEASIBLE, None, nodes)


# --------------------------------------------------------------------------
# Base reconstruction


@dataclass
class ReconstructResult:
    status: str
    system: TripleSystem | None
    nodes: int


def reconstruct_base(v: int, classes: ColorPartition, budget: int = DEFAULT_BUDGET) -> ReconstructResult:
    """Find some STS(v) that ``classes`` bicolors.

    Exact cover of the pairs of ``1..v`` by two-colored triples.  The uncovered
    pair with the fewest remaining candidate triples is branched on first
    (ties to the smallest pair); the first solution found is returned.
    """
    if not is_admissible(v):
        raise ExtensionError(f"no STS of order {v} exists (need v = 1 or 3 mod 6)")
    if classes.order != v:
        raise ExtensionError(f"partition has order {classes.order}, expected {v}")
    col = classes.color_of
    cmask = {c: 0 for c in range(1, classes.k + 1)}
    for p in range(1, v + 1):
        cmask[col[p]] |= 1 << p
    allp = sum(1 << p for p in range(1, v + 1))
    # third points z making {x, y, z} two-colored
    third = {}
    for x, y in combinations(range(1, v + 1), 2):
        if col[x] == col[y]:
            third[(x, y)] = allp & ~cmask[col[x]]
        else:
            third[(x, y)] = cmask[col[x]] | cmask[col[y]]
    open_ = [0] * (v + 1)
    for x in range(1, v + 1):
        open_[x] = allp & ~(1 << x)
    blocks: list[tuple[int, int, int]] = []
    nodes = 0

    def rec() -> bool:
        nonlocal nodes
        best = None
        best_opts = 0
        best_cnt = v + 1
        for x in range(1, v + 1):
            ox = open_[x] >> (x + 1) << (x + 1)
            for y in bits(ox):
                opts = open_[x] & open_[y] & third[(x, y)]
                cnt = opts.bit_count()
                if cnt < best_cnt:
                    best, best_opts, best_cnt = (x, y), opts, cnt
                    if cnt == 0:
                        return False
        if best is None:
            return True
        x, y = best
        for z in bits(best_opts):
            nodes += 1
            if nodes > budget:
                raise _OutOfBudget
            for a, b in ((x, y), (x, z), (y, z)):
                open_[a] &= ~(1 << b)
                open_[b] &= ~(1 << a)
            blocks.append((x, y, z))
            if rec():
                return True
            blocks.pop()
            for a, b in ((x, y), (x, z), (y, z)):
                open_[a] |= 1 << b
                open_[b] |= 1 << a
        return False

    try:
        ok = rec()
    except _OutOfBudget:
        return ReconstructResult(UNKNOWN, None, nodes)
    if ok:
        return ReconstructResult(FOUND, TripleSystem(v, blocks), nodes)
    return ReconstructResult(INFEASIBLE, None, nodes)


def certificate_from(merged: ColorPartition, f: OneFactorization) -> ExtensionCertificate:
    """Certificate for a factorization on ``v+1..2v+1`` under a merged partition."""
    return ExtensionCertificate(ExtensionProblem.from_merged(merged, f.v), f)


def induced_triples(f: OneFactorization) -> Iterable[tuple[int, int, int]]:
    for i, (a, b) in f.edges():
        yield (i, a, b)
