"""Text formats for systems (``.sts``), factorizations (``.fac``) and partitions (``.cls``).

All three are line oriented with LF endings, single spaces, and ``#``
comment lines.  The writers produce the canonical form, so parse followed by
serialize reproduces a canonical file byte for byte.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Iterator

from .coloring import ColoringError, ColorPartition
from .constructions import OneFactorization
from .design import MalformedInputError, TripleSystem


class FormatError(ValueError):
    """Unparseable input; ``line`` is 1-based, or None when the problem is file-wide."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


def _content_lines(text: str) -> Iterator[tuple[int, str]]:
    for no, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        yield no, line


def _int(token: str, line: int) -> int:
    if not re.fullmatch(r"-?\d+", token):
        raise FormatError(f"expected an integer, got {token!r}", line)
    return int(token)


# --------------------------------------------------------------------------
# .sts

_STS_HEADER = re.compile(r"STS n=(\d+) b=(\d+)")


def parse_sts(text: str) -> TripleSystem:
    lines = list(_content_lines(text))
    if not lines:
        raise FormatError("missing STS header")
    no, head = lines[0]
    m = _STS_HEADER.fullmatch(head.strip())
    if not m:
        raise FormatError(f"bad header {head!r}", no)
    order, count = int(m.group(1)), int(m.group(2))
    blocks = []
    for no, line in lines[1:]:
        toks = line.split()
        if len(toks) != 3:
            raise FormatError(f"a block needs 3 points, got {len(toks)}", no)
        blocks.append(tuple(_int(t, no) for t in toks))
    if len(blocks) != count:
        raise FormatError(f"header announces {count} blocks, found {len(blocks)}")
    try:
        return TripleSystem(order, blocks)
    except MalformedInputError as exc:
        line = lines[1 + exc.index][0] if exc.index is not None else None
        raise FormatError(str(exc), line) from None


def format_sts(ts: TripleSystem) -> str:
    out = [f"STS n={ts.order} b={len(ts.blocks)}"]
    out += [f"{a} {b} {c}" for a, b, c in ts.blocks]
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------------
# .fac

_FAC_HEADER = re.compile(r"FACTORIZATION points=(\d+)\.\.(\d+) factors=(\d+)")
_FAC_LINE = re.compile(r"factor (\d+):(.*)")


def parse_factorization(text: str) -> OneFactorization:
    """Read a ``.fac`` file; structure is checked, matching properties are not."""
    lines = list(_content_lines(text))
    if not lines:
        raise FormatError("missing FACTORIZATION header")
    no, head = lines[0]
    m = _FAC_HEADER.fullmatch(head.strip())
    if not m:
        raise FormatError(f"bad header {head!r}", no)
    lo, hi, count = (int(g) for g in m.groups())
    factors = []
    for no, line in lines[1:]:
        fm = _FAC_LINE.fullmatch(line.strip())
        if not fm:
            raise FormatError(f"expected 'factor <i>: a-b ...', got {line!r}", no)
        idx = int(fm.group(1))
        if idx != len(factors) + 1:
            raise FormatError(f"expected factor {len(factors) + 1}, got factor {idx}", no)
        edges = []
        for tok in fm.group(2).split():
            parts = tok.split("-")
            if len(parts) != 2:
                raise FormatError(f"bad edge {tok!r} in factor {idx}", no)
            edges.append((_int(parts[0], no), _int(parts[1], no)))
        factors.append(edges)
    if len(factors) != count:
        raise FormatError(f"header announces {count} factors, file ends after factor {len(factors)}")
    try:
        return OneFactorization(lo, hi, factors)
    except MalformedInputError as exc:
        line = lines[exc.index][0] if exc.index is not None else None
        raise FormatError(str(exc), line) from None


def format_factorization(f: OneFactorization) -> str:
    out = [f"FACTORIZATION points={f.lo}..{f.hi} factors={f.v}"]
    for i, factor in enumerate(f.factors, start=1):
        out.append(f"factor {i}: " + " ".join(f"{a}-{b}" for a, b in factor))
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------------
# .cls

_CLS_HEADER = re.compile(r"CLASSES n=(\d+) k=(\d+)")
_CLS_LINE = re.compile(r"(\d+):(.*)")


def parse_classes(text: str) -> ColorPartition:
    lines = list(_content_lines(text))
    if not lines:
        raise FormatError("missing CLASSES header")
    no, head = lines[0]
    m = _CLS_HEADER.fullmatch(head.strip())
    if not m:
        raise FormatError(f"bad header {head!r}", no)
    order, k = int(m.group(1)), int(m.group(2))
    owner: dict[int, tuple[int, int]] = {}
    classes = []
    for no, line in lines[1:]:
        cm = _CLS_LINE.fullmatch(line.strip())
        if not cm:
            raise FormatError(f"expected '<i>: p1 p2 ...', got {line!r}", no)
        idx = int(cm.group(1))
        if idx != len(classes) + 1:
            raise FormatError(f"expected class {len(classes) + 1}, got class {idx}", no)
        pts = [_int(t, no) for t in cm.group(2).split()]
        if not pts:
            raise FormatError(f"class {idx} is empty", no)
        for p in pts:
            if not 1 <= p <= order:
                raise FormatError(f"point {p} is outside 1..{order}", no)
            if p in owner:
                prev_cls, prev_line = owner[p]
                where = "twice in class" if prev_cls == idx else f"in class {prev_cls} (line {prev_line}) and class"
                raise FormatError(f"point {p} appears {where} {idx}", no)
            owner[p] = (idx, no)
        classes.append(pts)
    if len(classes) != k:
        raise FormatError(f"header announces {k} classes, found {len(classes)}")
    gaps = [p for p in range(1, order + 1) if p not in owner]
    if gaps:
        raise FormatError(f"points {gaps} are in no class")
    try:
        return ColorPartition(order, classes)
    except ColoringError as exc:
        raise FormatError(str(exc)) from None


def format_classes(p: ColorPartition) -> str:
    out = [f"CLASSES n={p.order} k={p.k}"]
    out += [f"{i}: " + " ".join(map(str, c)) for i, c in enumerate(p.classes, start=1)]
    return "\n".join(out) + "\n"


def read_text(path: str | Path) -> str:
    return Path(path).read_text(encoding="utf-8")


def write_text(path: str | Path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
