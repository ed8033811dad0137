"""Color partitions, the bicoloring test, and exact chromatic spectra."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .design import Triple, TripleSystem, VerificationReport

DEFAULT_BUDGET = 10**8


class ColoringError(ValueError):
    pass


@dataclass(frozen=True)
class ColorPartition:
    """Nonempty, pairwise disjoint classes covering ``1..order``.

    Class indices are 1-based in every public method, so ``classes[0]`` is
    class 1.
    """

    order: int
    classes: tuple[tuple[int, ...], ...]
    color_of: tuple[int, ...] = field(repr=False, compare=False)

    def __init__(self, order: int, classes: Iterable[Iterable[int]]):
        canon = [tuple(sorted(c)) for c in classes]
        if not canon:
            raise ColoringError("a partition needs at least one class")
        color = [0] * (order + 1)
        for ci, cls in enumerate(canon, start=1):
            if not cls:
                raise ColoringError(f"class {ci} is empty")
            for j, p in enumerate(cls):
                if not 1 <= p <= order:
                    raise ColoringError(f"point {p} in class {ci} is outside 1..{order}")
                if j and cls[j - 1] == p:
                    raise ColoringError(f"point {p} appears twice in class {ci}")
                if color[p]:
                    raise ColoringError(f"point {p} is in class {color[p]} and class {ci}")
                color[p] = ci
        gaps = [p for p in range(1, order + 1) if not color[p]]
        if gaps:
            raise ColoringError(f"points {gaps} are in no class")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "classes", tuple(canon))
        object.__setattr__(self, "color_of", tuple(color))

    @classmethod
    def from_colors(cls, colors: Mapping[int, int] | Sequence[int]) -> "ColorPartition":
        """Build from a point -> class map; a sequence is read as colors of points 1, 2, ..."""
        items = colors.items() if isinstance(colors, Mapping) else enumerate(colors, start=1)
        groups: dict[int, list[int]] = {}
        for p, c in items:
            groups.setdefault(c, []).append(p)
        k = max(groups)
        if sorted(groups) != list(range(1, k + 1)):
            raise ColoringError(f"class indices must be exactly 1..{k}, got {sorted(groups)}")
        return cls(sum(len(g) for g in groups.values()), (groups[i] for i in range(1, k + 1)))

    @property
    def k(self) -> int:
        return len(self.classes)

    def color(self, point: int) -> int:
        if not 1 <= point <= self.order:
            raise ColoringError(f"point {point} is outside 1..{self.order}")
        return self.color_of[point]

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    def restrict(self, points: Iterable[int]) -> "ColorPartition":
        """Partition induced on ``points`` (which must be ``1..m``), keeping class order."""
        pts = sorted(points)
        if pts != list(range(1, len(pts) + 1)):
            raise ColoringError("restriction must be to an initial segment 1..m")
        m = len(pts)
        kept = [[p for p in c if p <= m] for c in self.classes]
        return ColorPartition(m, [c for c in kept if c])

    def relabel(self, mapping: Mapping[int, int] | Sequence[int]) -> "ColorPartition":
        return ColorPartition(self.order, ([mapping[p] for p in c] for c in self.classes))


def color_profile(t: Sequence[int], p: ColorPartition) -> int:
    """Number of distinct classes met by the triple."""
    return len({p.color(x) for x in t})


def check_bicoloring(ts: TripleSystem, p: ColorPartition) -> VerificationReport:
    """Pass iff every block sees exactly two classes."""
    if ts.order != p.order:
        raise ColoringError(f"system has order {ts.order}, partition has order {p.order}")
    mono: list[Triple] = []
    poly: list[Triple] = []
    for t in ts.blocks:
        prof = color_profile(t, p)
        if prof == 1:
            mono.append(t)
        elif prof == 3:
            poly.append(t)
    return VerificationReport.from_issues(
        f"{p.k}-bicoloring of order {ts.order}",
        {"monochromatic": mono, "polychromatic": poly},
        k=p.k,
        class_sizes=p.sizes(),
        blocks=len(ts.blocks),
    )


# --------------------------------------------------------------------------
# Spectrum


@dataclass
class SpectrumResult:
    """Feasible class counts found by :func:`chromatic_spectrum`.

    ``undecided`` lists the ``k`` whose search ran out of budget; the result is
    exact only when it is empty.
    """

    order: int
    k_max: int
    feasible_counts: set[int]
    witnesses: dict[int, ColorPartition]
    undecided: list[int]
    nodes: dict[int, int]

    @property
    def exhaustive(self) -> bool:
        return not self.undecided

    @property
    def lower(self) -> int | None:
        return min(self.feasible_counts) if self.feasible_counts else None

    @property
    def upper(self) -> int | None:
        return max(self.feasible_counts) if self.feasible_counts else None


class _OutOfBudget(Exception):
    pass


def _search_k(order: int, blocks: Sequence[Triple], k: int, budget: int) -> tuple[str, list[int] | None, int]:
    """Depth-first search for a bicoloring with exactly ``k`` nonempty classes.

    Points are colored in ascending order; a point may open color ``c + 1`` only
    when colors ``1..c`` are already in use.  Domains are bitmasks over the k
    colors and are narrowed as soon as two points of a block are colored.
    """
    n = order
    partners: list[list[tuple[int, int]]] = [[] for _ in range(n + 1)]
    for a, b, c in blocks:
        partners[a].append((b, c))
        partners[b].append((a, c))
        partners[c].append((a, b))
    full = (1 << k) - 1
    domain = [full] * (n + 1)
    color = [-1] * (n + 1)
    nodes = 0

    def rec(p: int, used: int) -> bool:
        nonlocal nodes
        if p > n:
            return used == k
        top = min(used + 1, k)
        for c in range(top):
            if not domain[p] >> c & 1:
                continue
            new_used = used + (c == used)
            if new_used + (n - p) < k:
                continue
            nodes += 1
            if nodes > budget:
                raise _OutOfBudget
            color[p] = c
            trail: list[tuple[int, int]] = []
            ok = True
            for q, r in partners[p]:
                cq, cr = color[q], color[r]
                if cq >= 0 and cr >= 0:
                    continue
                if cq < 0 and cr < 0:
                    continue
                other, free = (cq, r) if cq >= 0 else (cr, q)
                allowed = full & ~(1 << c) if other == c else (1 << c) | (1 << other)
                nd = domain[free] & allowed
                if nd != domain[free]:
                    trail.append((free, domain[free]))
                    domain[free] = nd
                    if not nd:
                        ok = False
                        break
            if ok and rec(p + 1, new_used):
                return True
            for q, old in reversed(trail):
                domain[q] = old
            color[p] = -1
        return False

    try:
        found = rec(1, 0)
    except _OutOfBudget:
        return "unknown", None, nodes
    if found:
        return "feasible", [c + 1 for c in color[1:]], nodes
    return "infeasible", None, nodes


def _search_task(args: tuple[int, tuple[Triple, ...], int, int]) -> tuple[str, list[int] | None, int]:
    return _search_k(*args)


def chromatic_spectrum(
    ts: TripleSystem,
    k_max: int | None = None,
    budget: int = DEFAULT_BUDGET,
    jobs: int = 1,
) -> SpectrumResult:
    """Decide, for every ``k`` in ``1..k_max``, whether a ``k``-bicoloring exists.

    ``budget`` caps the search-tree nodes spent on each ``k``.  With ``jobs > 1``
    the values of ``k`` are searched in separate processes; each search is the
    same deterministic procedure, so the answer and witnesses do not change.
    """
    if k_max is None:
        k_max = ts.order
    tasks = [(ts.order, ts.blocks, k, budget) for k in range(1, k_max + 1)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_search_task, tasks))
    else:
        outcomes = [_search_task(t) for t in tasks]
    res = SpectrumResult(ts.order, k_max, set(), {}, [], {})
    for k, (status, colors, nodes) in zip(range(1, k_max + 1), outcomes):
        res.nodes[k] = nodes
        if status == "feasible":
            assert colors is not None
            res.feasible_counts.add(k)
            res.witnesses[k] = ColorPartition.from_colors(colors)
        elif status == "unknown":
            res.undecided.append(k)
    return res

