"""Triple systems and the Steiner pair-coverage check."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Iterable

Triple = tuple[int, int, int]
Pair = tuple[int, int]


class MalformedInputError(ValueError):
    """Structurally invalid input (duplicate block, point out of range, ...).

    ``index`` names the offending block or factor when there is one.
    """

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


@dataclass
class VerificationReport:
    """Outcome of a check plus the evidence behind a failure.

    ``issues`` maps an issue kind (``"uncovered_pairs"``, ``"monochromatic"``, ...)
    to the offending items; only non-empty kinds are kept.  ``stats`` carries
    counts that are useful whether or not the check passed.
    """

    passed: bool
    subject: str
    issues: dict[str, list[Any]] = field(default_factory=dict)
    stats: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed

    @classmethod
    def from_issues(cls, subject: str, issues: dict[str, list[Any]], **stats: Any) -> "VerificationReport":
        kept = {k: v for k, v in issues.items() if v}
        return cls(passed=not kept, subject=subject, issues=kept, stats=dict(stats))

    def summary(self) -> str:
        if self.passed:
            return f"{self.subject}: pass"
        parts = [f"{k}={len(v)}" for k, v in self.issues.items()]
        return f"{self.subject}: FAIL ({', '.join(parts)})"


def make_triple(a: int, b: int, c: int) -> Triple:
    t = tuple(sorted((a, b, c)))
    if t[0] == t[1] or t[1] == t[2]:
        raise MalformedInputError(f"triple {a},{b},{c} has repeated points")
    return t  # type: ignore[return-value]


def make_pair(a: int, b: int) -> Pair:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class TripleSystem:
    """A point set ``1..order`` with a list of distinct triples.

    Blocks are canonicalized on construction (ascending within a block,
    lexicographic across blocks), so two systems with the same block set
    compare equal regardless of how they were written down.
    """

    order: int
    blocks: tuple[Triple, ...]

    def __init__(self, order: int, blocks: Iterable[Iterable[int]]):
        if order < 3:
            raise MalformedInputError(f"order must be at least 3, got {order}")
        canon: list[Triple] = []
        seen: dict[Triple, int] = {}
        for idx, raw in enumerate(blocks):
            pts = tuple(raw)
            if len(pts) != 3:
                raise MalformedInputError(f"block {idx} has {len(pts)} points", idx)
            try:
                t = make_triple(*pts)
            except MalformedInputError as exc:
                raise MalformedInputError(f"block {idx}: {exc}", idx) from None
            if t[0] < 1 or t[2] > order:
                raise MalformedInputError(f"block {idx} {t} has a point outside 1..{order}", idx)
            if t in seen:
                raise MalformedInputError(f"block {idx} {t} duplicates block {seen[t]}", idx)
            seen[t] = idx
            canon.append(t)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "blocks", tuple(sorted(canon)))

    def __len__(self) -> int:
        return len(self.blocks)

    def relabel(self, mapping: dict[int, int] | list[int]) -> "TripleSystem":
        """Apply a point bijection; ``mapping[p]`` is the new label of ``p``."""
        return TripleSystem(self.order, ((mapping[a], mapping[b], mapping[c]) for a, b, c in self.blocks))

    def restrict(self, points: Iterable[int]) -> tuple[Triple, ...]:
        keep = set(points)
        return tuple(t for t in self.blocks if keep.issuperset(t))


def sts_block_count(order: int) -> int:
    return order * (order - 1) // 6


def is_admissible(order: int) -> bool:
    return order >= 3 and order % 6 in (1, 3)


def build_pair_index(ts: TripleSystem) -> dict[Pair, list[int]]:
    """Map every pair that occurs in some block to the indices of those blocks."""
    index: dict[Pair, list[int]] = {}
    for i, (a, b, c) in enumerate(ts.blocks):
        for p in ((a, b), (a, c), (b, c)):
            index.setdefault(p, []).append(i)
    return index


def validate_sts(ts: TripleSystem) -> VerificationReport:
    """Check that every pair of distinct points lies in exactly one block."""
    index = build_pair_index(ts)
    uncovered = [p for p in combinations(range(1, ts.order + 1), 2) if p not in index]
    multiple = sorted(p for p, blocks in index.items() if len(blocks) > 1)
    return VerificationReport.from_issues(
        f"STS({ts.order})",
        {"uncovered_pairs": uncovered, "multiply_covered_pairs": multiple},
        order=ts.order,
        blocks=len(ts.blocks),
        expected_blocks=sts_block_count(ts.order) if is_admissible(ts.order) else None,
    )
